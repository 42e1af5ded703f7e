#include "freight/broker.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <numeric>
#include <stdexcept>

namespace freight {

namespace {

// Items handed to the DP, listed in ascending job id order.
struct Item {
  std::size_t slot;  // position in the state
  JobId id;
  int volume;
  double value;
};

// Generic 0-1 knapsack with integer weights and real values. Returns the
// chosen slots. A later item only replaces the running optimum when it is
// strictly better, so ties keep the lower-id items.
std::vector<std::size_t> solve_knapsack(std::vector<Item> items, int capacity) {
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  const int total = std::accumulate(items.begin(), items.end(), 0,
                                    [](int acc, const Item& it) { return acc + it.volume; });
  std::vector<std::size_t> chosen;
  if (total <= capacity) {
    for (const Item& it : items) chosen.push_back(it.slot);
    return chosen;
  }

  const auto width = static_cast<std::size_t>(capacity) + 1;
  std::vector<double> best(width, 0.0);
  std::vector<std::uint8_t> take(items.size() * width, 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int w = items[i].volume;
    const double v = items[i].value;
    for (int c = capacity; c >= w; --c) {
      const double with = best[static_cast<std::size_t>(c - w)] + v;
      if (with > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = with;
        take[i * width + static_cast<std::size_t>(c)] = 1;
      }
    }
  }
  int c = capacity;
  for (std::size_t i = items.size(); i-- > 0;) {
    if (take[i * width + static_cast<std::size_t>(c)]) {
      chosen.push_back(items[i].slot);
      c -= items[i].volume;
    }
  }
  return chosen;
}

Allocation empty_allocation(const MarketState& state) {
  Allocation a;
  a.ids.reserve(state.jobs.size());
  for (const Job& j : state.jobs) a.ids.push_back(j.id);
  a.shipped.assign(state.jobs.size(), 0);
  return a;
}

}  // namespace

std::size_t Allocation::shipped_count() const {
  return static_cast<std::size_t>(std::count(shipped.begin(), shipped.end(), std::uint8_t{1}));
}

Allocation allocate(const MarketState& state, const QuoteSheet& quotes, int capacity) {
  if (capacity < 0) throw std::invalid_argument("allocate: negative capacity");
  if (quotes.size() != state.jobs.size() || quotes.bids.size() != quotes.size() ||
      quotes.asks.size() != quotes.size()) {
    throw std::invalid_argument(fmt::format("allocate: quote sheet covers {} of {} jobs",
                                            quotes.size(), state.jobs.size()));
  }
  std::vector<Item> items;
  for (std::size_t i = 0; i < state.jobs.size(); ++i) {
    if (quotes.ids[i] != state.jobs[i].id) {
      throw std::invalid_argument(fmt::format("allocate: no quote for job {}", state.jobs[i].id));
    }
    const double spread = quotes.spread(i);
    if (spread > 0.0 && state.jobs[i].volume <= capacity) {
      items.push_back({i, state.jobs[i].id, state.jobs[i].volume, spread});
    }
  }

  Allocation a = empty_allocation(state);
  for (std::size_t slot : solve_knapsack(std::move(items), capacity)) a.shipped[slot] = 1;
  for (std::size_t i = 0; i < a.shipped.size(); ++i) {
    if (!a.shipped[i]) continue;
    a.total_spread += quotes.spread(i);
    a.used_volume += state.jobs[i].volume;
  }
  return a;
}

double broker_reward(const Allocation& allocation, const QuoteSheet& quotes) {
  double total = 0.0;
  for (std::size_t i = 0; i < allocation.shipped.size(); ++i) {
    if (allocation.shipped[i]) total += quotes.spread(i);
  }
  return total;
}

Allocation max_volume_allocation(const MarketState& state, int capacity) {
  if (capacity < 0) throw std::invalid_argument("max_volume_allocation: negative capacity");
  std::vector<Item> items;
  for (std::size_t i = 0; i < state.jobs.size(); ++i) {
    const int v = state.jobs[i].volume;
    if (v <= capacity) items.push_back({i, state.jobs[i].id, v, static_cast<double>(v)});
  }
  Allocation a = empty_allocation(state);
  for (std::size_t slot : solve_knapsack(std::move(items), capacity)) {
    a.shipped[slot] = 1;
    a.used_volume += state.jobs[slot].volume;
  }
  return a;
}

}  // namespace freight
