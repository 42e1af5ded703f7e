#include "freight/checkpoint.hpp"

#include <fmt/format.h>
#include <fstream>
#include <stdexcept>

namespace freight {

using nlohmann::json;

namespace {

json adam_to_json(const AdamOptimizer& opt) {
  const AdamConfig& c = opt.config();
  return {{"learning_rate", c.learning_rate}, {"beta1", c.beta1},
          {"beta2", c.beta2},                 {"epsilon", c.epsilon},
          {"steps", opt.steps()},             {"m", opt.first_moment()},
          {"v", opt.second_moment()}};
}

void adam_from_json(const json& j, AdamOptimizer& opt) {
  AdamConfig& c = opt.config();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.beta1 = j.at("beta1").get<double>();
  c.beta2 = j.at("beta2").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  opt.restore(j.at("steps").get<std::int64_t>(), j.at("m").get<std::vector<double>>(),
              j.at("v").get<std::vector<double>>());
}

std::vector<std::size_t> hidden_of(const DenseNetwork& net) {
  const auto& s = net.layer_sizes();
  return {s.begin() + 1, s.end() - 1};
}

void copy_params(const DenseNetwork& from, DenseNetwork& to) {
  if (from.layer_sizes() != to.layer_sizes()) {
    throw std::invalid_argument("checkpoint: layer sizes do not match the model role");
  }
  std::copy(from.params().begin(), from.params().end(), to.params().begin());
}

}  // namespace

json network_to_json(const DenseNetwork& net) {
  json layers = json::array();
  const auto& sizes = net.layer_sizes();
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    std::vector<double> w, b;
    for (std::size_t o = 0; o < sizes[l + 1]; ++o) {
      for (std::size_t i = 0; i < sizes[l]; ++i) w.push_back(net.weight(l, o, i));
      b.push_back(net.bias(l, o));
    }
    layers.push_back({{"weights", w}, {"bias", b}});
  }
  return {{"layer_sizes", sizes}, {"layers", layers}};
}

DenseNetwork network_from_json(const json& j) {
  DenseNetwork net(j.at("layer_sizes").get<std::vector<std::size_t>>());
  const json& layers = j.at("layers");
  if (layers.size() != net.num_layers()) {
    throw std::invalid_argument("checkpoint: layer count does not match layer_sizes");
  }
  const auto& sizes = net.layer_sizes();
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const auto w = layers[l].at("weights").get<std::vector<double>>();
    const auto b = layers[l].at("bias").get<std::vector<double>>();
    if (w.size() != sizes[l] * sizes[l + 1] || b.size() != sizes[l + 1]) {
      throw std::invalid_argument(fmt::format("checkpoint: layer {} has wrong array sizes", l));
    }
    for (std::size_t o = 0; o < sizes[l + 1]; ++o) {
      for (std::size_t i = 0; i < sizes[l]; ++i) net.weight(l, o, i) = w[o * sizes[l] + i];
      net.bias(l, o) = b[o];
    }
  }
  return net;
}

json learner_to_json(const Learner& learner) {
  json actor = network_to_json(learner.actor.network());
  actor["sigma_floor"] = learner.actor.sigma_floor();
  actor["adam"] = adam_to_json(learner.actor.optimizer());
  json critic = nullptr;
  if (learner.critic) {
    critic = network_to_json(learner.critic->network());
    critic["adam"] = adam_to_json(learner.critic->optimizer());
  }
  return {{"algorithm", std::string(to_string(learner.algorithm))},
          {"action_scale", learner.action_scale},
          {"average_gradients", learner.average_gradients},
          {"actor", actor},
          {"critic", critic}};
}

Learner learner_from_json(const json& j) {
  const json& ja = j.at("actor");
  const DenseNetwork actor_net = network_from_json(ja);
  PolicyModel actor(hidden_of(actor_net), AdamConfig{},
                    ja.value("sigma_floor", kDefaultSigmaFloor));
  copy_params(actor_net, actor.network());
  adam_from_json(ja.at("adam"), actor.optimizer());

  Learner learner{std::move(actor), std::nullopt,
                  parse_algorithm(j.at("algorithm").get<std::string>()),
                  j.at("action_scale").get<double>(), j.value("average_gradients", false)};
  const json& jc = j.at("critic");
  if (!jc.is_null()) {
    const DenseNetwork critic_net = network_from_json(jc);
    CriticModel critic(hidden_of(critic_net), AdamConfig{});
    copy_params(critic_net, critic.network());
    adam_from_json(jc.at("adam"), critic.optimizer());
    learner.critic = std::move(critic);
  }
  return learner;
}

json checkpoint_to_json(const MarketCheckpoint& c) {
  return {{"format", "freight-checkpoint"},
          {"version", kCheckpointVersion},
          {"episodes_completed", c.episodes_completed},
          {"shipper", c.shipper ? learner_to_json(*c.shipper) : json(nullptr)},
          {"carrier", c.carrier ? learner_to_json(*c.carrier) : json(nullptr)}};
}

MarketCheckpoint checkpoint_from_json(const json& j) {
  if (j.value("format", "") != "freight-checkpoint") {
    throw std::invalid_argument("not a freight checkpoint");
  }
  const int version = j.at("version").get<int>();
  if (version != kCheckpointVersion) {
    throw std::invalid_argument(fmt::format("unsupported checkpoint version {}", version));
  }
  MarketCheckpoint c;
  c.episodes_completed = j.value("episodes_completed", std::int64_t{0});
  if (!j.at("shipper").is_null()) c.shipper = learner_from_json(j.at("shipper"));
  if (!j.at("carrier").is_null()) c.carrier = learner_from_json(j.at("carrier"));
  return c;
}

void save_checkpoint(const std::filesystem::path& path, const MarketCheckpoint& checkpoint) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write checkpoint '{}'", path.string()));
  out << checkpoint_to_json(checkpoint).dump(1) << '\n';
  if (!out) throw std::runtime_error(fmt::format("error writing checkpoint '{}'", path.string()));
}

MarketCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open checkpoint '{}'", path.string()));
  try {
    return checkpoint_from_json(json::parse(in));
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("checkpoint '{}': {}", path.string(), e.what()));
  }
}

}  // namespace freight
