#include "freight/report.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace freight {

using nlohmann::json;

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "NA";
  return fmt::format("{:.17g}", v);
}

json nullable(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

json stat_json(const PooledStat& s) {
  return {{"mean", nullable(s.mean)}, {"stdev", nullable(s.stdev)}, {"n", s.count}};
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  fill(out);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace

void write_episode_csv(std::ostream& out, const ReplicationResult& replication,
                       std::size_t total_episodes) {
  const std::size_t warmup = warmup_episodes(total_episodes);
  out << kEpisodeCsvSchema << '\n';
  out << "replication,episode,warmup";
  for (const MetricField& f : kMetricFields) out << ',' << f.name;
  out << ",shipped,failed,fairness_excluded\n";
  for (std::size_t e = 0; e < replication.episodes.size(); ++e) {
    const EpisodeMetrics& m = replication.episodes[e];
    out << replication.index << ',' << e << ',' << (e < warmup ? 1 : 0);
    for (const MetricField& f : kMetricFields) out << ',' << number(m.*f.member);
    out << ',' << m.shipped << ',' << m.failed << ',' << m.fairness_excluded << '\n';
  }
}

json summary_json(const RunResult& result) {
  const std::size_t episodes = static_cast<std::size_t>(result.config.market.episodes);
  json j;
  j["schema"] = kSummarySchema;
  j["name"] = result.config.name;
  j["episodes"] = episodes;
  j["days"] = result.config.market.horizon_days;
  j["warmup_episodes"] = warmup_episodes(episodes);
  j["end_window_episodes"] = end_window_episodes(episodes);
  j["unstable_replications"] = result.unstable_count();
  j["wall_seconds"] = result.wall_time.count();

  json reps = json::array();
  for (const ReplicationResult& r : result.replications) {
    json metrics;
    for (std::size_t i = 0; i < kMetricFields.size(); ++i) {
      metrics[std::string(kMetricFields[i].name)] = {
          {"average", nullable(r.report.values[i].average)},
          {"end_of_horizon", nullable(r.report.values[i].end_of_horizon)}};
    }
    reps.push_back({{"index", r.index},
                    {"seed", r.seed},
                    {"stable", r.stable},
                    {"failure", r.stable ? json(nullptr) : json(r.failure)},
                    {"episodes_run", r.episodes.size()},
                    {"csv", fmt::format("replication-{}.csv", r.index)},
                    {"metrics", std::move(metrics)}});
  }
  j["replications"] = std::move(reps);

  json pooled;
  for (std::size_t i = 0; i < kMetricFields.size(); ++i) {
    pooled[std::string(kMetricFields[i].name)] = {
        {"average", stat_json(result.pooled[i].average)},
        {"end_of_horizon", stat_json(result.pooled[i].end_of_horizon)}};
  }
  j["pooled"] = std::move(pooled);
  return j;
}

WrittenFiles write_run(const RunResult& result, const std::filesystem::path& root) {
  WrittenFiles files;
  files.directory = root / result.config.name;
  std::error_code ec;
  std::filesystem::create_directories(files.directory, ec);
  if (ec) {
    throw std::runtime_error(
        fmt::format("cannot create '{}': {}", files.directory.string(), ec.message()));
  }
  const auto episodes = static_cast<std::size_t>(result.config.market.episodes);
  for (const ReplicationResult& r : result.replications) {
    auto path = files.directory / fmt::format("replication-{}.csv", r.index);
    write_file(path, [&](std::ostream& out) { write_episode_csv(out, r, episodes); });
    files.episode_csvs.push_back(std::move(path));
  }
  files.summary = files.directory / "summary.json";
  write_file(files.summary, [&](std::ostream& out) { out << summary_json(result).dump(2) << '\n'; });
  files.config = files.directory / "config.json";
  write_file(files.config, [&](std::ostream& out) { out << to_json(result.config).dump(2) << '\n'; });
  return files;
}

}  // namespace freight
