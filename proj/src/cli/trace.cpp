#include "confsphere/cli/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "confsphere/cli/report.hpp"
#include "confsphere/errors.hpp"
#include "confsphere/multilinear.hpp"
#include "confsphere/symmetries.hpp"
#include "confsphere/tractor.hpp"

namespace confsphere::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string idx(int i) { return std::to_string(i + 1); }

/// Q keys grouped by family: 0ijN, 0ijk, ijkN, ijkl.
std::vector<std::vector<int>> q_column_keys(int n) {
  auto keys = increasing_tuples(0, n + 2, 4);
  std::stable_sort(keys.begin(), keys.end(), [n](const auto& a, const auto& b) {
    return static_cast<int>(q_family(a, n)) < static_cast<int>(q_family(b, n));
  });
  return keys;
}

}  // namespace

std::size_t QuantityTrace::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return c;
  throw DomainError("no trace column " + name);
}

std::vector<std::string> trace_columns(int n) {
  std::vector<std::string> cols = {"t"};
  for (int i = 0; i < n; ++i) cols.push_back("x" + idx(i));
  cols.push_back("H");
  cols.push_back("E_D");
  for (int i = 0; i < n; ++i) cols.push_back("E_T_" + idx(i));
  for (const auto& ij : increasing_tuples(0, n, 2)) cols.push_back("E_R_" + idx(ij[0]) + idx(ij[1]));
  for (int i = 0; i < n; ++i) cols.push_back("E_S_" + idx(i));
  for (const auto& key : q_column_keys(n)) cols.push_back(q_label(key, n));
  for (const char* s : {"delta3", "delta4", "delta5", "alpha1", "alpha2", "kappa1"}) cols.push_back(s);
  return cols;
}

std::vector<double> trace_row(double t, const PhasePoint& p, const CurveJet& jet,
                              std::set<std::string>& notes) {
  const int n = p.dim();
  std::vector<double> row = {t};
  for (int i = 0; i < n; ++i) row.push_back(p.X[i]);
  row.push_back(hamiltonian(p));
  const EQuantities e = e_quantities(p);
  row.push_back(e.E_D);
  for (int i = 0; i < n; ++i) row.push_back(e.E_T[i]);
  for (const auto& ij : increasing_tuples(0, n, 2)) row.push_back(e.E_R(ij[0], ij[1]));
  for (int i = 0; i < n; ++i) row.push_back(e.E_S[i]);
  const IndexedQuantities q = q_phase(p);
  for (const auto& key : q_column_keys(n)) {
    auto it = q.find(key);
    row.push_back(it == q.end() ? kNaN : it->second);
  }
  const GramInvariants g = gram_invariants(jet, 5);
  row.push_back(g.delta3);
  row.push_back(g.delta4);
  row.push_back(g.delta5);
  row.push_back(g.alpha1);
  row.push_back(g.alpha2);
  try {
    row.push_back(kappa1(jet));
  } catch (const UndefinedInvariantError&) {
    row.push_back(kNaN);
    notes.insert("kappa1 is undefined where Delta_4 >= 0 (conformal circles) and is written as nan");
  }
  return row;
}

QuantityTrace trace_from_trajectory(const Trajectory& traj, double t_offset) {
  QuantityTrace tr;
  if (traj.points.empty()) throw DomainError("empty trajectory");
  tr.columns = trace_columns(traj.points.front().dim());
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const PhasePoint& p = traj.points[k];
    tr.rows.push_back(trace_row(t_offset + traj.t[k], p, curve_jet_from_phase(p, kTraceJetOrder), tr.notes));
  }
  return tr;
}

QuantityTrace trace_from_family(const SolutionFamily& f, const std::vector<double>& ts) {
  QuantityTrace tr;
  tr.columns = trace_columns(family_dim(f));
  for (double t : ts) {
    const CurveJet jet = eval_jet(f, t, kTraceJetOrder);
    tr.rows.push_back(trace_row(t, phase_from_jet(jet), jet, tr.notes));
  }
  return tr;
}

std::string QuantityTrace::to_csv() const {
  std::string s;
  for (std::size_t c = 0; c < columns.size(); ++c) s += (c ? "," : "") + columns[c];
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) s += (c ? "," : "") + format_real(row[c]);
    s += '\n';
  }
  return s;
}

nlohmann::json QuantityTrace::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) r.push_back(json_real(v));
    rs.push_back(std::move(r));
  }
  return {{"columns", columns}, {"rows", std::move(rs)}, {"notes", notes}};
}

std::map<std::string, double> max_relative_drift(const QuantityTrace& trace) {
  std::map<std::string, double> out;
  if (trace.rows.empty()) return out;
  const std::size_t first = trace.column("H");
  for (std::size_t c = first; c < trace.columns.size(); ++c) {
    double ref = kNaN, worst = kNaN;
    for (const auto& row : trace.rows) {
      const double v = row[c];
      if (std::isnan(v)) continue;
      if (std::isnan(ref)) {
        ref = v;
        worst = 0.0;
      }
      worst = std::max(worst, std::abs(v - ref) / (1.0 + std::abs(ref)));
    }
    out[trace.columns[c]] = worst;
  }
  return out;
}

}  // namespace confsphere::cli
