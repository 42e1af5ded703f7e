#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "freight/market.hpp"
#include "freight/policy.hpp"
#include "freight/risk.hpp"

namespace freight {

/// Fixed price of a frozen (non-learning) agent: anchor + offset.
struct ScriptedPrice {
  enum class Anchor { kAbsolute, kMaxPay, kTrnCost };
  Anchor anchor = Anchor::kAbsolute;
  double offset = 0.0;

  double price(const JobEconomics& econ) const;
  friend bool operator==(const ScriptedPrice&, const ScriptedPrice&) = default;
};

struct AgentConfig {
  RiskProfile profile;
  std::vector<std::size_t> hidden_layers{20};
  Algorithm algorithm = Algorithm::kPolicyGradient;
  std::vector<std::size_t> critic_hidden_layers{20};
  double sigma_floor = kDefaultSigmaFloor;
  std::optional<ScriptedPrice> frozen;

  bool learns() const { return !frozen.has_value(); }
};

struct ExperimentConfig {
  std::string name;
  CaseConfig market;
  AgentConfig shipper;
  AgentConfig carrier;
  int replications = 5;
  std::uint64_t seed = 1;
  std::string output_dir;  // empty: FREIGHT_OUT_DIR, then "runs"
  bool average_gradients = false;

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "FREIGHT_OUT_DIR";
std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

/// Both agents on the given profiles for the market preset.
ExperimentConfig base_experiment(const CaseConfig& market, RiskAppetite carrier,
                                 RiskAppetite shipper);

/// Named experiment. Throws std::invalid_argument listing the known names
/// when `name` is unknown.
ExperimentConfig preset(std::string_view name);
std::vector<std::string> preset_names();

nlohmann::json to_json(const ExperimentConfig& config);
/// Keys absent from `j` keep the values of the base preset named by
/// "preset" (default: case1-tuned), after "case" swaps the market.
ExperimentConfig experiment_from_json(const nlohmann::json& j);

ExperimentConfig load_experiment(const std::filesystem::path& path);
void save_experiment(const std::filesystem::path& path, const ExperimentConfig& config);

/// A preset name or a path to a JSON config file.
ExperimentConfig resolve_experiment(std::string_view preset_or_path);

}  // namespace freight
