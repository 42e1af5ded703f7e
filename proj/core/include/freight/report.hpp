#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "freight/simulation.hpp"

namespace freight {

inline constexpr std::string_view kEpisodeCsvSchema = "# freight-episodes v1";
inline constexpr std::string_view kSummarySchema = "freight-summary v1";

/// Schema line, header, then one row per episode. N/A values print as "NA".
void write_episode_csv(std::ostream& out, const ReplicationResult& replication,
                       std::size_t total_episodes);

nlohmann::json summary_json(const RunResult& result);

struct WrittenFiles {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> episode_csvs;
  std::filesystem::path summary;
  std::filesystem::path config;
};

/// Writes replication-<i>.csv, summary.json and config.json under
/// `root / config.name`. I/O errors carry the failing path.
WrittenFiles write_run(const RunResult& result, const std::filesystem::path& root);

}  // namespace freight
