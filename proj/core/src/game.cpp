#include "freight/game.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace freight {

std::string_view to_string(ProfileSet set) {
  switch (set) {
    case ProfileSet::kSet1: return "set1";
    case ProfileSet::kSet2: return "set2";
    case ProfileSet::kSet3: return "set3";
    case ProfileSet::kFeasible: return "feasible";
    case ProfileSet::kIrrational: return "irrational";
  }
  return "?";
}

ProfileSet classify_profile(const BidAskProfile& p) {
  const double cost = p.econ.trn_cost;
  const double pay = p.econ.max_pay;
  if (p.bid < cost) return ProfileSet::kSet1;
  if (p.ask > pay) return ProfileSet::kSet2;
  if (p.bid < p.ask) return ProfileSet::kSet3;  // cost <= bid < ask <= pay
  if (cost <= p.ask && p.bid <= pay) return ProfileSet::kFeasible;
  return ProfileSet::kIrrational;
}

bool is_nash_point(const BidAskProfile& p) {
  return std::abs(p.ask - p.bid) <= kPriceTolerance &&
         p.econ.trn_cost - kPriceTolerance <= p.ask && p.bid <= p.econ.max_pay + kPriceTolerance;
}

void PayoffMatrix::validate() const {
  if (cells.size() != carrier_labels.size()) {
    throw std::invalid_argument("payoff matrix: row count does not match carrier labels");
  }
  for (const auto& row : cells) {
    if (row.size() != shipper_labels.size()) {
      throw std::invalid_argument("payoff matrix: ragged row");
    }
  }
  auto unique = [](const std::vector<std::string>& v) {
    return std::set<std::string>(v.begin(), v.end()).size() == v.size();
  };
  if (!unique(carrier_labels) || !unique(shipper_labels)) {
    throw std::invalid_argument("payoff matrix: duplicate strategy labels");
  }
}

bool BestResponses::is_carrier_best(std::size_t row, std::size_t col) const {
  const auto& v = carrier_best[col];
  return std::find(v.begin(), v.end(), row) != v.end();
}

bool BestResponses::is_shipper_best(std::size_t row, std::size_t col) const {
  const auto& v = shipper_best[row];
  return std::find(v.begin(), v.end(), col) != v.end();
}

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

double carrier_payoff(const PayoffCell& c) { return c ? c->first : kMinusInf; }
double shipper_payoff(const PayoffCell& c) { return c ? c->second : kMinusInf; }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw std::invalid_argument(fmt::format("payoff csv line {}: bad number '{}'", line_no, s));
  }
  return v;
}

PayoffCell parse_cell(const std::string& text, std::size_t line_no) {
  std::string upper = text;
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  if (upper == "NA" || upper == "N/A") return std::nullopt;
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw std::invalid_argument(
        fmt::format("payoff csv line {}: cell '{}' is not 'carrier/shipper'", line_no, text));
  }
  return std::make_pair(parse_number(trim(text.substr(0, slash)), line_no),
                        parse_number(trim(text.substr(slash + 1)), line_no));
}

}  // namespace

BestResponses best_responses(const PayoffMatrix& m) {
  m.validate();
  BestResponses r;
  r.carrier_best.resize(m.cols());
  r.shipper_best.resize(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double best = kMinusInf;
    for (std::size_t row = 0; row < m.rows(); ++row) best = std::max(best, carrier_payoff(m.cells[row][c]));
    if (best == kMinusInf) continue;
    for (std::size_t row = 0; row < m.rows(); ++row) {
      if (carrier_payoff(m.cells[row][c]) == best) r.carrier_best[c].push_back(row);
    }
  }
  for (std::size_t row = 0; row < m.rows(); ++row) {
    double best = kMinusInf;
    for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, shipper_payoff(m.cells[row][c]));
    if (best == kMinusInf) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (shipper_payoff(m.cells[row][c]) == best) r.shipper_best[row].push_back(c);
    }
  }
  for (std::size_t row = 0; row < m.rows(); ++row) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (r.is_carrier_best(row, c) && r.is_shipper_best(row, c)) r.nash.emplace_back(row, c);
    }
  }
  return r;
}

PayoffMatrix parse_payoff_csv(std::istream& in) {
  PayoffMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_csv(t);
    if (!header) {
      if (fields.size() < 2) {
        throw std::invalid_argument("payoff csv: header needs at least one shipper label");
      }
      m.shipper_labels.assign(fields.begin() + 1, fields.end());
      header = true;
      continue;
    }
    if (fields.size() != m.shipper_labels.size() + 1) {
      throw std::invalid_argument(fmt::format("payoff csv line {}: expected {} fields, got {}",
                                              line_no, m.shipper_labels.size() + 1,
                                              fields.size()));
    }
    m.carrier_labels.push_back(fields[0]);
    std::vector<PayoffCell> row;
    for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(parse_cell(fields[i], line_no));
    m.cells.push_back(std::move(row));
  }
  if (!header || m.cells.empty()) throw std::invalid_argument("payoff csv: no data rows");
  m.validate();
  return m;
}

PayoffMatrix read_payoff_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open payoff matrix '{}'", path.string()));
  try {
    return parse_payoff_csv(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_nash_report(const PayoffMatrix& m, const BestResponses& r) {
  std::string out;
  auto it = std::back_inserter(out);
  constexpr int kWidth = 18;
  fmt::format_to(it, "{:<12}", "carrier\\shp");
  for (const auto& l : m.shipper_labels) fmt::format_to(it, "{:>{}}", l, kWidth);
  out += '\n';
  for (std::size_t row = 0; row < m.rows(); ++row) {
    fmt::format_to(it, "{:<12}", m.carrier_labels[row]);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::string cell = "N/A";
      if (const auto& p = m.cells[row][c]) {
        cell = fmt::format("{:.2f}{}/{:.2f}{}", p->first, r.is_carrier_best(row, c) ? "*" : "",
                           p->second, r.is_shipper_best(row, c) ? "*" : "");
      }
      const bool nash = std::find(r.nash.begin(), r.nash.end(), std::make_pair(row, c)) !=
                        r.nash.end();
      if (nash) cell = "[" + cell + "]";
      fmt::format_to(it, "{:>{}}", cell, kWidth);
    }
    out += '\n';
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (r.carrier_best[c].empty()) {
      fmt::format_to(it, "carrier best response to {}: undefined (all N/A)\n", m.shipper_labels[c]);
    }
  }
  for (std::size_t row = 0; row < m.rows(); ++row) {
    if (r.shipper_best[row].empty()) {
      fmt::format_to(it, "shipper best response to {}: undefined (all N/A)\n",
                     m.carrier_labels[row]);
    }
  }
  if (r.nash.empty()) {
    out += "pure Nash equilibria: none\n";
  } else {
    out += "pure Nash equilibria:";
    for (const auto& [row, c] : r.nash) {
      fmt::format_to(it, " (carrier {}, shipper {})", m.carrier_labels[row], m.shipper_labels[c]);
    }
    out += '\n';
  }
  out += "* = best response, [ ] = Nash equilibrium\n";
  return out;
}

}  // namespace freight
