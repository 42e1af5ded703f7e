#pragma once

#include <string>
#include <string_view>

#include "freight/market.hpp"

namespace freight {

enum class Role { kShipper, kCarrier };
enum class RiskAppetite { kSeeking, kNeutral, kAverse };

std::string_view to_string(Role role);
/// "RS", "RN", "RA".
std::string_view short_name(RiskAppetite appetite);
/// Accepts RS/RN/RA (any case) or risk-seeking/risk-neutral/risk-averse.
RiskAppetite parse_risk_appetite(std::string_view text);

/// Hyperparameter bundle encoding bargaining aggressiveness.
struct RiskProfile {
  std::string name;
  double bias_init = 0.0;      // opening mean price
  double penalty_slope = 1.0;  // weight of missed rewards
  double learning_rate = 1e-3;
  double sigma_init = 0.1;
};

/// Expected cost and pay of a job under independent uniform distance and
/// volume draws, and the opening prices they imply per risk appetite.
struct BiasPresets {
  double avg_cost = 0.0;
  double avg_pay = 0.0;

  double midpoint() const { return 0.5 * (avg_cost + avg_pay); }
  /// RS asks the average pay, RN the midpoint, RA the average cost.
  double carrier_bias(RiskAppetite appetite) const;
  /// RS bids the average cost, RN the midpoint, RA the average pay.
  double shipper_bias(RiskAppetite appetite) const;
};

BiasPresets bias_presets(const CaseConfig& config);

/// Learning rate and penalty slope per appetite:
/// RS (0.005, 2), RN (0.001, 1), RA (0.0001, 2). The opening bias is 1 for
/// the carrier and 2 for the shipper in the deterministic case; other cases
/// take it from bias_presets().
RiskProfile risk_profile(Role role, RiskAppetite appetite, const CaseConfig& config);

}  // namespace freight
