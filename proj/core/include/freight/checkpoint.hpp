#pragma once

#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "freight/learning.hpp"

namespace freight {

inline constexpr int kCheckpointVersion = 1;

/// Layer sizes plus row-major weight and bias arrays per layer.
nlohmann::json network_to_json(const DenseNetwork& net);
DenseNetwork network_from_json(const nlohmann::json& j);

nlohmann::json learner_to_json(const Learner& learner);
Learner learner_from_json(const nlohmann::json& j);

/// Both agents' models after some number of completed episodes. A frozen
/// (scripted) agent has no model.
struct MarketCheckpoint {
  std::int64_t episodes_completed = 0;
  std::optional<Learner> shipper;
  std::optional<Learner> carrier;
};

nlohmann::json checkpoint_to_json(const MarketCheckpoint& checkpoint);
MarketCheckpoint checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const std::filesystem::path& path, const MarketCheckpoint& checkpoint);
MarketCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace freight
