#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "freight/config.hpp"

namespace freight {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

TEST(Config, EveryPresetValidates) {
  const auto names = preset_names();
  EXPECT_GT(names.size(), 50u);
  for (const auto& n : names) {
    const ExperimentConfig c = preset(n);
    EXPECT_EQ(c.name, n);
    EXPECT_NO_THROW(c.validate()) << n;
  }
}

TEST(Config, PresetLookupIgnoresCase) {
  EXPECT_EQ(preset("CASE1-TUNED").name, "case1-tuned");
}

TEST(Config, JsonRoundTripOfEveryPreset) {
  for (const auto& n : preset_names()) {
    const ExperimentConfig c = preset(n);
    const json j = to_json(c);
    const ExperimentConfig r = experiment_from_json(json::parse(j.dump()));
    EXPECT_EQ(to_json(r), j) << n;
  }
}

TEST(Config, OverridesOnTopOfPreset) {
  const ExperimentConfig c = experiment_from_json(json::parse(R"({
    "preset": "case1-tuned", "episodes": 7, "days": 9, "seed": 42,
    "shipper": {"learning_rate": 0.02, "hidden_layers": [8, 8]},
    "carrier": {"frozen": {"anchor": "max_pay", "offset": -0.5}}
  })"));
  EXPECT_EQ(c.market.episodes, 7);
  EXPECT_EQ(c.market.horizon_days, 9);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.shipper.profile.learning_rate, 0.02);
  EXPECT_EQ(c.shipper.hidden_layers, (std::vector<std::size_t>{8, 8}));
  ASSERT_TRUE(c.carrier.frozen.has_value());
  EXPECT_EQ(c.carrier.frozen->price({4.0, 2.0}), 3.5);
  EXPECT_FALSE(c.carrier.learns());
}

TEST(Config, CaseSwitchRecomputesNamedProfiles) {
  const ExperimentConfig c = experiment_from_json(json::parse(R"({"case": "case2-cap40"})"));
  EXPECT_EQ(c.market.capacity, 40);
  EXPECT_DOUBLE_EQ(c.carrier.profile.bias_init,
                   risk_profile(Role::kCarrier, parse_risk_appetite(c.carrier.profile.name),
                                c.market).bias_init);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(experiment_from_json(json::parse(R"({"episodez": 3})")), std::invalid_argument);
  EXPECT_THROW(experiment_from_json(json::parse(R"({"shipper": {"lr": 3}})")),
               std::invalid_argument);
  EXPECT_THROW(experiment_from_json(json::parse(R"({"capacity": 0})")), std::invalid_argument);
  EXPECT_THROW(experiment_from_json(json::parse(R"({"due_range": [1]})")), std::invalid_argument);
  EXPECT_THROW(experiment_from_json(json::parse(R"({"episodes": "many"})")),
               std::invalid_argument);
  EXPECT_THROW(experiment_from_json(json::parse(R"({"preset": "nope"})")), std::invalid_argument);
  EXPECT_THROW(experiment_from_json(json::parse("[1, 2]")), std::invalid_argument);
  EXPECT_THROW(
      experiment_from_json(json::parse(R"({"carrier": {"frozen": {"anchor": "moon", "offset": 1}}})")),
      std::invalid_argument);
}

TEST(Config, ValidationNamesTheAgent) {
  ExperimentConfig c = preset("case1-tuned");
  c.carrier.profile.sigma_init = 0.0;
  try {
    c.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("carrier"), std::string::npos);
  }
  c = preset("case1-tuned");
  c.replications = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, FileRoundTripAndResolve) {
  const fs::path p = fs::temp_directory_path() / "freight-config-test.json";
  ExperimentConfig c = preset("case1-risk-rs-vs-ra");
  c.name = "from-file";
  save_experiment(p, c);
  EXPECT_EQ(to_json(load_experiment(p)), to_json(c));
  EXPECT_EQ(resolve_experiment(p.string()).name, "from-file");
  EXPECT_EQ(resolve_experiment("case1-tuned").name, "case1-tuned");
  fs::remove(p);
  EXPECT_THROW(resolve_experiment(p.string()), std::runtime_error);

  std::ofstream(p) << "{ not json";
  EXPECT_THROW(load_experiment(p), std::invalid_argument);
  fs::remove(p);
}

TEST(Config, OutputDirectoryPrecedence) {
  ExperimentConfig c = preset("case1-tuned");
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(c), fs::path("runs"));
  ::setenv(kOutputDirEnv, "/tmp/from-env", 1);
  EXPECT_EQ(resolve_output_dir(c), fs::path("/tmp/from-env"));
  c.output_dir = "explicit";
  EXPECT_EQ(resolve_output_dir(c), fs::path("explicit"));
  ::unsetenv(kOutputDirEnv);
}

TEST(Config, ScriptedAnchors) {
  const JobEconomics e{10.0, 4.0};
  EXPECT_EQ((ScriptedPrice{ScriptedPrice::Anchor::kAbsolute, 1.5}).price(e), 1.5);
  EXPECT_EQ((ScriptedPrice{ScriptedPrice::Anchor::kMaxPay, 0.1}).price(e), 10.1);
  EXPECT_EQ((ScriptedPrice{ScriptedPrice::Anchor::kTrnCost, -1.0}).price(e), 3.0);
}

}  // namespace
}  // namespace freight
