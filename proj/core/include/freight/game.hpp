#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freight/market.hpp"

namespace freight {

inline constexpr double kPriceTolerance = 1e-9;

struct BidAskProfile {
  double bid = 0.0;
  double ask = 0.0;
  JobEconomics econ;
};

/// Region of a (bid, ask) pair relative to the job's cost and pay.
enum class ProfileSet {
  kSet1,        // bid below transport cost: carrier can never profit
  kSet2,        // ask above willingness to pay: shipper can never profit
  kSet3,        // crossed quotes inside the band (bid < ask): never shipped
  kFeasible,    // cost <= ask <= bid <= pay
  kIrrational,  // ask below own cost or bid above own pay; no set applies
};

std::string_view to_string(ProfileSet set);

/// First match in the order set1, set2, set3, feasible.
ProfileSet classify_profile(const BidAskProfile& p);

/// cost <= ask == bid <= pay, all within kPriceTolerance.
bool is_nash_point(const BidAskProfile& p);

/// Carrier payoff / shipper payoff; empty for an N/A cell.
using PayoffCell = std::optional<std::pair<double, double>>;

/// Rows are carrier strategies, columns shipper strategies.
struct PayoffMatrix {
  std::vector<std::string> carrier_labels;
  std::vector<std::string> shipper_labels;
  std::vector<std::vector<PayoffCell>> cells;

  /// Throws std::invalid_argument if ragged or labels repeat.
  void validate() const;
  std::size_t rows() const { return carrier_labels.size(); }
  std::size_t cols() const { return shipper_labels.size(); }
};

struct BestResponses {
  // carrier_best[col]: rows maximising the carrier payoff against that shipper
  // column; empty when the whole column is N/A.
  std::vector<std::vector<std::size_t>> carrier_best;
  // shipper_best[row]: columns maximising the shipper payoff against that row.
  std::vector<std::vector<std::size_t>> shipper_best;
  // (row, col) cells where both players are best-responding.
  std::vector<std::pair<std::size_t, std::size_t>> nash;

  bool is_carrier_best(std::size_t row, std::size_t col) const;
  bool is_shipper_best(std::size_t row, std::size_t col) const;
};

/// Pure best responses; N/A counts as minus infinity and ties are all kept.
BestResponses best_responses(const PayoffMatrix& matrix);

/// CSV: header "<corner>,<shipper labels...>", then one row per carrier
/// label with cells "carrier/shipper" or "NA".
PayoffMatrix parse_payoff_csv(std::istream& in);
PayoffMatrix read_payoff_csv(const std::filesystem::path& path);

/// Table with best responses marked '*' and Nash cells in [brackets].
std::string format_nash_report(const PayoffMatrix& matrix, const BestResponses& result);

}  // namespace freight
