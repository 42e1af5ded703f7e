#include "freight/risk.hpp"

#include <algorithm>
#include <cctype>
#include <fmt/format.h>
#include <stdexcept>

namespace freight {

std::string_view to_string(Role role) { return role == Role::kShipper ? "shipper" : "carrier"; }

std::string_view short_name(RiskAppetite appetite) {
  switch (appetite) {
    case RiskAppetite::kSeeking: return "RS";
    case RiskAppetite::kNeutral: return "RN";
    case RiskAppetite::kAverse: return "RA";
  }
  return "?";
}

RiskAppetite parse_risk_appetite(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "rs" || t == "risk-seeking") return RiskAppetite::kSeeking;
  if (t == "rn" || t == "risk-neutral") return RiskAppetite::kNeutral;
  if (t == "ra" || t == "risk-averse") return RiskAppetite::kAverse;
  throw std::invalid_argument(fmt::format("unknown risk profile '{}' (expected RS, RN, RA)", text));
}

double BiasPresets::carrier_bias(RiskAppetite appetite) const {
  switch (appetite) {
    case RiskAppetite::kSeeking: return avg_pay;
    case RiskAppetite::kNeutral: return midpoint();
    case RiskAppetite::kAverse: return avg_cost;
  }
  return midpoint();
}

double BiasPresets::shipper_bias(RiskAppetite appetite) const {
  switch (appetite) {
    case RiskAppetite::kSeeking: return avg_cost;
    case RiskAppetite::kNeutral: return midpoint();
    case RiskAppetite::kAverse: return avg_pay;
  }
  return midpoint();
}

BiasPresets bias_presets(const CaseConfig& config) {
  // Mean of the distance x volume outer product under equal weights.
  const double mean_size = config.distance_range.mean() * config.volume_range.mean();
  return {mean_size * config.transport_rate, mean_size * config.willingness_rate};
}

RiskProfile risk_profile(Role role, RiskAppetite appetite, const CaseConfig& config) {
  RiskProfile p;
  p.name = std::string(short_name(appetite));
  switch (appetite) {
    case RiskAppetite::kSeeking:
      p.learning_rate = 0.005;
      p.penalty_slope = 2.0;
      break;
    case RiskAppetite::kNeutral:
      p.learning_rate = 0.001;
      p.penalty_slope = 1.0;
      break;
    case RiskAppetite::kAverse:
      p.learning_rate = 0.0001;
      p.penalty_slope = 2.0;
      break;
  }
  if (config.name == "case1") {
    p.bias_init = role == Role::kCarrier ? 1.0 : 2.0;
  } else {
    const BiasPresets b = bias_presets(config);
    p.bias_init = role == Role::kCarrier ? b.carrier_bias(appetite) : b.shipper_bias(appetite);
  }
  return p;
}

}  // namespace freight
