#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "confsphere/curve.hpp"
#include "confsphere/families.hpp"
#include "confsphere/mercator.hpp"

namespace confsphere::cli {

/// t, x1..xn, H, E_D, E_T_i, E_R_ij, E_S_i, Q_*, delta3, delta4, delta5,
/// alpha1, alpha2, kappa1.  Undefined entries are NaN.
struct QuantityTrace {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::set<std::string> notes;

  std::size_t column(const std::string& name) const;
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

std::vector<std::string> trace_columns(int n);
/// Row for the curve through p whose jet is given (both describe the same point).
std::vector<double> trace_row(double t, const PhasePoint& p, const CurveJet& jet,
                              std::set<std::string>& notes);

inline constexpr int kTraceJetOrder = 6;

QuantityTrace trace_from_trajectory(const Trajectory& traj, double t_offset);
QuantityTrace trace_from_family(const SolutionFamily& f, const std::vector<double>& ts);

/// max_k |q_k - q_0| / (1 + |q_0|) for every column after the positions,
/// ignoring undefined entries (NaN when a column has none).
std::map<std::string, double> max_relative_drift(const QuantityTrace& trace);

}  // namespace confsphere::cli
