#include "freight/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace freight {

using nlohmann::json;

double ScriptedPrice::price(const JobEconomics& econ) const {
  switch (anchor) {
    case Anchor::kAbsolute: return offset;
    case Anchor::kMaxPay: return econ.max_pay + offset;
    case Anchor::kTrnCost: return econ.trn_cost + offset;
  }
  return offset;
}

namespace {

void validate_agent(const AgentConfig& a, std::string_view role) {
  auto fail = [&](std::string_view what) {
    throw std::invalid_argument(fmt::format("{}: {}", role, what));
  };
  if (a.frozen) return;
  if (!(a.profile.learning_rate > 0.0)) fail("learning_rate must be positive");
  if (!(a.profile.sigma_init > 0.0)) fail("sigma_init must be positive");
  if (!(a.profile.penalty_slope >= 0.0)) fail("penalty_slope must be non-negative");
  if (!(a.sigma_floor > 0.0)) fail("sigma_floor must be positive");
  if (a.profile.sigma_init < a.sigma_floor) fail("sigma_init is below sigma_floor");
  for (std::size_t n : a.hidden_layers) {
    if (n == 0) fail("hidden layer sizes must be positive");
  }
  for (std::size_t n : a.critic_hidden_layers) {
    if (n == 0) fail("critic hidden layer sizes must be positive");
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  market.validate();
  if (market.episodes < 1 || market.horizon_days < 1) {
    throw std::invalid_argument("episodes and days per episode must be at least 1");
  }
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  validate_agent(shipper, "shipper");
  validate_agent(carrier, "carrier");
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "runs";
}

ExperimentConfig base_experiment(const CaseConfig& market, RiskAppetite carrier,
                                 RiskAppetite shipper) {
  ExperimentConfig c;
  c.market = market;
  c.carrier.profile = risk_profile(Role::kCarrier, carrier, market);
  c.shipper.profile = risk_profile(Role::kShipper, shipper, market);
  c.name = fmt::format("{}-{}-vs-{}", market.name, short_name(carrier), short_name(shipper));
  return c;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

using Builder = std::function<ExperimentConfig()>;

struct Registry {
  std::vector<std::string> names;
  std::map<std::string, Builder> builders;

  void add(std::string name, Builder b) {
    names.push_back(name);
    builders.emplace(std::move(name), std::move(b));
  }
};

constexpr RiskAppetite kAppetites[] = {RiskAppetite::kSeeking, RiskAppetite::kNeutral,
                                       RiskAppetite::kAverse};

ExperimentConfig case1_tuned() {
  return base_experiment(case_preset("case1"), RiskAppetite::kNeutral, RiskAppetite::kNeutral);
}

ExperimentConfig named(ExperimentConfig c, std::string name) {
  c.name = std::move(name);
  return c;
}

std::vector<std::size_t> layers(int depth, std::size_t width) {
  return std::vector<std::size_t>(static_cast<std::size_t>(depth), width);
}

void add_case1_presets(Registry& r) {
  r.add("case1-tuned", [] { return named(case1_tuned(), "case1-tuned"); });

  r.add("verify-fixed-ask", [] {
    auto c = named(case1_tuned(), "verify-fixed-ask");
    c.carrier.frozen = ScriptedPrice{ScriptedPrice::Anchor::kAbsolute, 1.0};
    c.market.episodes = 500;
    return c;
  });
  r.add("verify-fixed-bid", [] {
    auto c = named(case1_tuned(), "verify-fixed-bid");
    c.shipper.frozen = ScriptedPrice{ScriptedPrice::Anchor::kAbsolute, 2.0};
    c.market.episodes = 500;
    return c;
  });
  r.add("verify-rates-1.5-3", [] {
    auto c = named(case1_tuned(), "verify-rates-1.5-3");
    c.market.transport_rate = 1.5;
    c.market.willingness_rate = 3.0;
    c.carrier.profile.bias_init = 1.5;
    c.shipper.profile.bias_init = 3.0;
    return c;
  });
  r.add("verify-ask-above-pay", [] {
    auto c = named(case1_tuned(), "verify-ask-above-pay");
    c.carrier.frozen = ScriptedPrice{ScriptedPrice::Anchor::kMaxPay, 0.1};
    c.market.episodes = 100;
    return c;
  });

  constexpr std::pair<int, int> kBatches[] = {
      {100000, 10}, {10000, 100}, {1000, 1000}, {100, 10000}, {10, 100000}};
  for (std::size_t i = 0; i < std::size(kBatches); ++i) {
    const auto name = fmt::format("case1-budget-{}x{}", kBatches[i].first, kBatches[i].second);
    const auto [episodes, days] = kBatches[i];
    r.add(name, [name, episodes = episodes, days = days] {
      auto c = named(case1_tuned(), name);
      c.market.episodes = episodes;
      c.market.horizon_days = days;
      return c;
    });
  }

  for (const char* lr : {"0.1", "0.01", "0.001", "0.0001", "0.00001"}) {
    const auto name = fmt::format("case1-lr-{}", lr);
    const double v = std::stod(lr);
    r.add(name, [name, v] {
      auto c = named(case1_tuned(), name);
      c.shipper.profile.learning_rate = v;
      c.carrier.profile.learning_rate = v;
      return c;
    });
  }
  for (const char* s : {"0.01", "0.1", "0.5", "1", "1.5", "2"}) {
    const auto name = fmt::format("case1-sigma-{}", s);
    const double v = std::stod(s);
    r.add(name, [name, v] {
      auto c = named(case1_tuned(), name);
      c.shipper.profile.sigma_init = v;
      c.carrier.profile.sigma_init = v;
      return c;
    });
  }

  r.add("case1-arch-linear", [] {
    auto c = named(case1_tuned(), "case1-arch-linear");
    c.shipper.hidden_layers.clear();
    c.carrier.hidden_layers.clear();
    return c;
  });
  for (int depth = 1; depth <= 3; ++depth) {
    for (std::size_t width = 5; width <= 30; width += 5) {
      const auto name = fmt::format("case1-arch-{}l{}n", depth, width);
      r.add(name, [name, depth, width] {
        auto c = named(case1_tuned(), name);
        c.shipper.hidden_layers = layers(depth, width);
        c.carrier.hidden_layers = layers(depth, width);
        return c;
      });
    }
  }

  for (const char* algo : {"pg", "pg-baseline", "q-ac", "td1", "advantage"}) {
    const auto name = fmt::format("case1-algo-{}", algo);
    const Algorithm a = parse_algorithm(algo);
    r.add(name, [name, a] {
      auto c = named(case1_tuned(), name);
      c.shipper.algorithm = a;
      c.carrier.algorithm = a;
      return c;
    });
  }
  r.add("case1-critic-linear", [] {
    auto c = named(case1_tuned(), "case1-critic-linear");
    for (AgentConfig* a : {&c.shipper, &c.carrier}) {
      a->algorithm = Algorithm::kQValue;
      a->critic_hidden_layers.clear();
    }
    return c;
  });
  for (int depth = 1; depth <= 3; ++depth) {
    const auto name = fmt::format("case1-critic-{}l20n", depth);
    r.add(name, [name, depth] {
      auto c = named(case1_tuned(), name);
      for (AgentConfig* a : {&c.shipper, &c.carrier}) {
        a->algorithm = Algorithm::kQValue;
        a->critic_hidden_layers = layers(depth, 20);
      }
      return c;
    });
  }

  // Shipper-only deviations against the tuned carrier.
  for (const char* lr : {"0.0001", "0.0005", "0.001", "0.002", "0.005", "0.01"}) {
    const auto name = fmt::format("case1-shipper-lr-{}", lr);
    const double v = std::stod(lr);
    r.add(name, [name, v] {
      auto c = named(case1_tuned(), name);
      c.shipper.profile.learning_rate = v;
      return c;
    });
  }
  for (const char* slope : {"0", "0.5", "1", "2", "5"}) {
    const auto name = fmt::format("case1-shipper-penalty-{}", slope);
    const double v = std::stod(slope);
    r.add(name, [name, v] {
      auto c = named(case1_tuned(), name);
      c.shipper.profile.penalty_slope = v;
      return c;
    });
  }
  r.add("case1-shipper-linear", [] {
    auto c = named(case1_tuned(), "case1-shipper-linear");
    c.shipper.hidden_layers.clear();
    return c;
  });
  r.add("case1-shipper-q-ac", [] {
    auto c = named(case1_tuned(), "case1-shipper-q-ac");
    c.shipper.algorithm = Algorithm::kQValue;
    return c;
  });
  for (const char* bias : {"0", "0.5", "1", "1.5", "2"}) {
    const auto name = fmt::format("case1-shipper-bias-{}", bias);
    const double v = std::stod(bias);
    r.add(name, [name, v] {
      auto c = named(case1_tuned(), name);
      c.shipper.profile.bias_init = v;
      return c;
    });
  }
  for (const char* s : {"0.01", "0.1", "0.5", "1", "1.5", "2"}) {
    const auto name = fmt::format("case1-shipper-sigma-{}", s);
    const double v = std::stod(s);
    r.add(name, [name, v] {
      auto c = named(case1_tuned(), name);
      c.carrier.profile.sigma_init = 1.0;
      c.shipper.profile.sigma_init = v;
      return c;
    });
  }

  for (RiskAppetite carrier : kAppetites) {
    for (RiskAppetite shipper : kAppetites) {
      const auto name =
          lower(fmt::format("case1-risk-{}-vs-{}", short_name(carrier), short_name(shipper)));
      r.add(name, [name, carrier, shipper] {
        return named(base_experiment(case_preset("case1"), carrier, shipper), name);
      });
    }
  }
}

// Case II runs keep the risk-averse learning rate and penalty and vary only
// the opening prices unless stated otherwise.
ExperimentConfig case2_averse(std::string_view market, RiskAppetite carrier_bias,
                              RiskAppetite shipper_bias) {
  const CaseConfig m = case_preset(market);
  auto c = base_experiment(m, RiskAppetite::kAverse, RiskAppetite::kAverse);
  const BiasPresets b = bias_presets(m);
  c.carrier.profile.bias_init = b.carrier_bias(carrier_bias);
  c.shipper.profile.bias_init = b.shipper_bias(shipper_bias);
  return c;
}

void add_case2_presets(Registry& r) {
  for (const char* market : {"case2-cap40", "case2-cap300"}) {
    const std::string m = market;
    for (RiskAppetite a : kAppetites) {
      const auto name = lower(fmt::format("{}-{}", m, short_name(a)));
      r.add(name, [name, m, a] { return named(base_experiment(case_preset(m), a, a), name); });
    }
    r.add(m + "-ra-lr1e-5", [m] {
      auto c = named(case2_averse(m, RiskAppetite::kAverse, RiskAppetite::kAverse), m + "-ra-lr1e-5");
      c.shipper.profile.learning_rate = c.carrier.profile.learning_rate = 1e-5;
      return c;
    });
    r.add(m + "-ra-sigma10", [m] {
      auto c = named(case2_averse(m, RiskAppetite::kAverse, RiskAppetite::kAverse), m + "-ra-sigma10");
      c.shipper.profile.sigma_init = c.carrier.profile.sigma_init = 10.0;
      return c;
    });
    for (int slope : {0, 1}) {
      const auto name = fmt::format("{}-ra-slope{}", m, slope);
      r.add(name, [name, m, slope] {
        auto c = named(case2_averse(m, RiskAppetite::kAverse, RiskAppetite::kAverse), name);
        c.shipper.profile.penalty_slope = c.carrier.profile.penalty_slope = slope;
        return c;
      });
    }
    r.add(m + "-ra-rnbias", [m] {
      return named(case2_averse(m, RiskAppetite::kNeutral, RiskAppetite::kNeutral), m + "-ra-rnbias");
    });
    r.add(m + "-ra-rsbias", [m] {
      return named(case2_averse(m, RiskAppetite::kSeeking, RiskAppetite::kSeeking), m + "-ra-rsbias");
    });
    for (RiskAppetite carrier : kAppetites) {
      for (RiskAppetite shipper : kAppetites) {
        const auto name =
            lower(fmt::format("{}-bias-{}-vs-{}", m, short_name(carrier), short_name(shipper)));
        r.add(name, [name, m, carrier, shipper] {
          return named(case2_averse(m, carrier, shipper), name);
        });
      }
    }
  }
}

const Registry& registry() {
  static const Registry r = [] {
    Registry reg;
    add_case1_presets(reg);
    add_case2_presets(reg);
    return reg;
  }();
  return r;
}

}  // namespace

ExperimentConfig preset(std::string_view name) {
  const Registry& r = registry();
  const auto it = r.builders.find(lower(name));
  if (it == r.builders.end()) {
    std::string list;
    for (const auto& n : r.names) list += "\n  " + n;
    throw std::invalid_argument(fmt::format("unknown preset '{}'; available presets:{}", name, list));
  }
  return it->second();
}

std::vector<std::string> preset_names() { return registry().names; }

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string_view anchor_name(ScriptedPrice::Anchor a) {
  switch (a) {
    case ScriptedPrice::Anchor::kAbsolute: return "absolute";
    case ScriptedPrice::Anchor::kMaxPay: return "max_pay";
    case ScriptedPrice::Anchor::kTrnCost: return "trn_cost";
  }
  return "absolute";
}

ScriptedPrice::Anchor parse_anchor(std::string_view s) {
  if (s == "absolute") return ScriptedPrice::Anchor::kAbsolute;
  if (s == "max_pay") return ScriptedPrice::Anchor::kMaxPay;
  if (s == "trn_cost") return ScriptedPrice::Anchor::kTrnCost;
  throw std::invalid_argument(
      fmt::format("unknown price anchor '{}' (absolute, max_pay, trn_cost)", s));
}

json range_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

IntRange range_from(const json& j, std::string_view key) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(fmt::format("'{}' must be a [lo, hi] pair", key));
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

json agent_json(const AgentConfig& a) {
  json j;
  j["risk_profile"] = a.profile.name;
  j["bias_init"] = a.profile.bias_init;
  j["penalty_slope"] = a.profile.penalty_slope;
  j["learning_rate"] = a.profile.learning_rate;
  j["sigma_init"] = a.profile.sigma_init;
  j["sigma_floor"] = a.sigma_floor;
  j["hidden_layers"] = a.hidden_layers;
  j["algorithm"] = std::string(to_string(a.algorithm));
  j["critic_hidden_layers"] = a.critic_hidden_layers;
  if (a.frozen) {
    j["frozen"] = {{"anchor", std::string(anchor_name(a.frozen->anchor))},
                   {"offset", a.frozen->offset}};
  } else {
    j["frozen"] = nullptr;
  }
  return j;
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument(fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

void apply_agent(const json& j, AgentConfig& a, Role role, const CaseConfig& market,
                 bool market_changed) {
  const std::string_view where = to_string(role);
  if (!j.is_object()) throw std::invalid_argument(fmt::format("'{}' must be an object", where));
  check_keys(j,
             {"risk_profile", "bias_init", "penalty_slope", "learning_rate", "sigma_init",
              "sigma_floor", "hidden_layers", "algorithm", "critic_hidden_layers", "frozen"},
             where);
  if (j.contains("risk_profile")) {
    a.profile = risk_profile(role, parse_risk_appetite(j["risk_profile"].get<std::string>()), market);
  } else if (market_changed) {
    try {
      a.profile = risk_profile(role, parse_risk_appetite(a.profile.name), market);
    } catch (const std::invalid_argument&) {
      // custom profile: keep explicit values
    }
  }
  if (j.contains("bias_init")) a.profile.bias_init = j["bias_init"].get<double>();
  if (j.contains("penalty_slope")) a.profile.penalty_slope = j["penalty_slope"].get<double>();
  if (j.contains("learning_rate")) a.profile.learning_rate = j["learning_rate"].get<double>();
  if (j.contains("sigma_init")) a.profile.sigma_init = j["sigma_init"].get<double>();
  if (j.contains("sigma_floor")) a.sigma_floor = j["sigma_floor"].get<double>();
  if (j.contains("hidden_layers")) {
    a.hidden_layers = j["hidden_layers"].get<std::vector<std::size_t>>();
  }
  if (j.contains("algorithm")) a.algorithm = parse_algorithm(j["algorithm"].get<std::string>());
  if (j.contains("critic_hidden_layers")) {
    a.critic_hidden_layers = j["critic_hidden_layers"].get<std::vector<std::size_t>>();
  }
  if (j.contains("frozen")) {
    const json& f = j["frozen"];
    if (f.is_null()) {
      a.frozen.reset();
    } else {
      check_keys(f, {"anchor", "offset"}, "frozen");
      ScriptedPrice p;
      p.anchor = parse_anchor(f.value("anchor", std::string("absolute")));
      p.offset = f.at("offset").get<double>();
      a.frozen = p;
    }
  }
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["case"] = c.market.name;
  j["arrivals_per_day"] = range_json(c.market.arrivals_per_day);
  j["due_range"] = range_json(c.market.due_range);
  j["distance_range"] = range_json(c.market.distance_range);
  j["volume_range"] = range_json(c.market.volume_range);
  j["willingness_rate"] = c.market.willingness_rate;
  j["transport_rate"] = c.market.transport_rate;
  j["capacity"] = c.market.capacity;
  j["max_open_jobs"] = c.market.max_open_jobs;
  j["episodes"] = c.market.episodes;
  j["days"] = c.market.horizon_days;
  j["replications"] = c.replications;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["average_gradients"] = c.average_gradients;
  j["shipper"] = agent_json(c.shipper);
  j["carrier"] = agent_json(c.carrier);
  return j;
}

ExperimentConfig experiment_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  check_keys(j,
             {"preset", "name", "case", "arrivals_per_day", "due_range", "distance_range",
              "volume_range", "willingness_rate", "transport_rate", "capacity", "max_open_jobs",
              "episodes", "days", "replications", "seed", "output_dir", "average_gradients",
              "shipper", "carrier"},
             "experiment config");
  try {
    ExperimentConfig c = preset(j.value("preset", std::string("case1-tuned")));
    bool market_changed = false;
    if (j.contains("case")) {
      const std::string name = j["case"].get<std::string>();
      if (name != c.market.name) {
        const CaseConfig m = case_preset(name);
        c.market = m;
        market_changed = true;
      }
    }
    CaseConfig& m = c.market;
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    if (j.contains("arrivals_per_day")) m.arrivals_per_day = range_from(j["arrivals_per_day"], "arrivals_per_day");
    if (j.contains("due_range")) m.due_range = range_from(j["due_range"], "due_range");
    if (j.contains("distance_range")) m.distance_range = range_from(j["distance_range"], "distance_range");
    if (j.contains("volume_range")) m.volume_range = range_from(j["volume_range"], "volume_range");
    if (j.contains("willingness_rate")) m.willingness_rate = j["willingness_rate"].get<double>();
    if (j.contains("transport_rate")) m.transport_rate = j["transport_rate"].get<double>();
    if (j.contains("capacity")) m.capacity = j["capacity"].get<int>();
    if (j.contains("max_open_jobs")) m.max_open_jobs = j["max_open_jobs"].get<int>();
    if (j.contains("episodes")) m.episodes = j["episodes"].get<int>();
    if (j.contains("days")) m.horizon_days = j["days"].get<int>();
    if (j.contains("replications")) c.replications = j["replications"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("average_gradients")) c.average_gradients = j["average_gradients"].get<bool>();
    apply_agent(j.value("shipper", json::object()), c.shipper, Role::kShipper, m, market_changed);
    apply_agent(j.value("carrier", json::object()), c.carrier, Role::kCarrier, m, market_changed);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("experiment config: {}", e.what()));
  }
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open config '{}'", path.string()));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
  }
  try {
    return experiment_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_experiment(const std::filesystem::path& path, const ExperimentConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write config '{}'", path.string()));
  out << to_json(config).dump(2) << '\n';
}

ExperimentConfig resolve_experiment(std::string_view preset_or_path) {
  const std::filesystem::path p(preset_or_path);
  if (p.extension() == ".json" || std::filesystem::is_regular_file(p)) return load_experiment(p);
  return preset(preset_or_path);
}

}  // namespace freight
