#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "freight/checkpoint.hpp"
#include "freight/config.hpp"
#include "freight/game.hpp"
#include "freight/report.hpp"
#include "freight/simulation.hpp"

namespace {

constexpr int kExitUnstable = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<int> episodes;
  std::optional<int> days;
  std::optional<std::string> out;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--seed", seed, "Base seed; replication i uses seed + i");
    cmd.add_option("--replications", replications, "Number of replications")->check(CLI::PositiveNumber);
    cmd.add_option("--episodes", episodes, "Episodes per replication")->check(CLI::PositiveNumber);
    cmd.add_option("--days", days, "Days per episode")->check(CLI::PositiveNumber);
  }

  void apply(freight::ExperimentConfig& c) const {
    if (seed) c.seed = *seed;
    if (replications) c.replications = *replications;
    if (episodes) c.market.episodes = *episodes;
    if (days) c.market.horizon_days = *days;
    if (out) c.output_dir = *out;
  }
};

std::string fmt_value(double v) { return std::isnan(v) ? "N/A" : fmt::format("{:.3f}", v); }

void print_pooled(const freight::RunResult& r) {
  fmt::print("{:<16} {:>16} {:>16}\n", "metric", "average", "end-of-horizon");
  for (std::size_t i = 0; i < freight::kMetricFields.size(); ++i) {
    const auto& p = r.pooled[i];
    auto cell = [](const freight::PooledStat& s) {
      return fmt::format("{} ({})", fmt_value(s.mean), fmt_value(s.stdev));
    };
    fmt::print("{:<16} {:>16} {:>16}\n", freight::kMetricFields[i].name, cell(p.average),
               cell(p.end_of_horizon));
  }
  fmt::print("replications: {} ({} unstable)\n", r.replications.size(), r.unstable_count());
}

freight::RunOptions progress_options(bool quiet) {
  freight::RunOptions o;
  if (quiet) return o;
  o.on_progress = [](const freight::Progress& p) {
    const int step = std::max(1, p.episodes / 10);
    if (p.episode % step == 0 || p.episode == p.episodes) {
      fmt::print(stderr, "replication {}: episode {}/{}\n", p.replication, p.episode, p.episodes);
    }
  };
  return o;
}

void describe_learner(std::string_view role, const std::optional<freight::Learner>& l) {
  if (!l) {
    fmt::print("{}: frozen (no model)\n", role);
    return;
  }
  const auto& net = l->actor.network();
  std::string sizes;
  for (std::size_t n : net.layer_sizes()) sizes += fmt::format("{}{}", sizes.empty() ? "" : "-", n);
  fmt::print("{}: algorithm {}, actor {} ({} parameters), lr {}, adam steps {}{}\n", role,
             freight::to_string(l->algorithm), sizes, net.num_params(),
             l->actor.optimizer().config().learning_rate, l->actor.optimizer().steps(),
             l->critic ? ", with critic" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Freight market simulator with learning shipper and carrier agents"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a preset or JSON config and write CSV/JSON results");
  std::string target;
  Overrides run_over;
  bool strict = false;
  bool quiet = false;
  std::string resume_path;
  std::string save_path;
  run->add_option("target", target, "Preset name or path to a JSON config")->required();
  run_over.add_to(*run);
  run->add_option("--out", run_over.out,
                  fmt::format("Output directory (default: ${} or ./runs)", freight::kOutputDirEnv));
  run->add_flag("--strict", strict, "Exit with a nonzero code if any replication is unstable");
  run->add_flag("-q,--quiet", quiet, "No progress on stderr");
  run->add_option("--resume", resume_path, "Start every replication from this checkpoint");
  run->add_option("--save-checkpoint", save_path, "Save the last replication's final models");

  // presets
  auto* presets = app.add_subcommand("presets", "List named experiments");
  std::string show;
  presets->add_option("--show", show, "Print the JSON config of one preset");

  // nash
  auto* nash = app.add_subcommand("nash", "Best responses and pure Nash equilibria of a payoff matrix");
  std::string matrix_path;
  nash->add_option("matrix", matrix_path, "Payoff matrix CSV")->required()->check(CLI::ExistingFile);

  // checkpoint
  auto* ckpt = app.add_subcommand("checkpoint", "Save or inspect model checkpoints");
  ckpt->require_subcommand(1);
  auto* save = ckpt->add_subcommand("save", "Train one replication and save its final models");
  std::string save_target, save_file;
  Overrides save_over;
  save->add_option("target", save_target, "Preset name or path to a JSON config")->required();
  save->add_option("--out,-o", save_file, "Checkpoint file")->required();
  save_over.add_to(*save);
  bool save_quiet = false;
  save->add_flag("-q,--quiet", save_quiet, "No progress on stderr");
  auto* load = ckpt->add_subcommand("load", "Validate a checkpoint and describe its models");
  std::string load_file;
  load->add_option("file", load_file, "Checkpoint file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      freight::ExperimentConfig config = freight::resolve_experiment(target);
      run_over.apply(config);
      config.validate();
      freight::RunOptions options = progress_options(quiet);
      if (!resume_path.empty()) options.resume = freight::load_checkpoint(resume_path);
      const freight::RunResult result = freight::run_experiment(config, options);
      const auto files = freight::write_run(result, freight::resolve_output_dir(config));
      if (!save_path.empty()) freight::save_checkpoint(save_path, result.replications.back().final_models);
      print_pooled(result);
      for (const auto& r : result.replications) {
        if (!r.stable) fmt::print(stderr, "replication {} unstable: {}\n", r.index, r.failure);
      }
      fmt::print(stderr, "wrote {}\n", files.directory.string());
      if (strict && result.unstable_count() > 0) return kExitUnstable;
      return 0;
    }
    if (*presets) {
      if (!show.empty()) {
        std::cout << freight::to_json(freight::preset(show)).dump(2) << '\n';
      } else {
        for (const auto& name : freight::preset_names()) std::cout << name << '\n';
      }
      return 0;
    }
    if (*nash) {
      const auto matrix = freight::read_payoff_csv(matrix_path);
      std::cout << freight::format_nash_report(matrix, freight::best_responses(matrix));
      return 0;
    }
    if (*save) {
      freight::ExperimentConfig config = freight::resolve_experiment(save_target);
      save_over.apply(config);
      config.replications = 1;
      config.validate();
      const auto r = freight::run_replication(config, 0, progress_options(save_quiet));
      if (!r.stable) {
        fmt::print(stderr, "replication unstable: {}\n", r.failure);
        return kExitUnstable;
      }
      freight::save_checkpoint(save_file, r.final_models);
      fmt::print(stderr, "wrote {}\n", save_file);
      return 0;
    }
    if (*load) {
      const auto c = freight::load_checkpoint(load_file);
      fmt::print("episodes completed: {}\n", c.episodes_completed);
      describe_learner("shipper", c.shipper);
      describe_learner("carrier", c.carrier);
      return 0;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
