#include "confsphere/curve.hpp"

#include <string>

#include "confsphere/errors.hpp"

namespace confsphere {

CurveJet::CurveJet(double t_, std::vector<Vec> d) : t(t_), derivs(std::move(d)) {
  if (derivs.empty()) throw JetOrderError("curve jet needs at least the position");
  const int n = derivs.front().dim();
  if (n < 2) throw DimensionError("curves live in R^n with n >= 2");
  for (const Vec& v : derivs) {
    if (v.dim() != n) throw DimensionError("curve jet levels differ in dimension");
    if (!v.all_finite()) throw DomainError("curve jet has non-finite entries");
  }
}

CurveJet CurveJet::from_position_jet(const JetVec& x, double t) {
  std::vector<Vec> d;
  d.reserve(static_cast<std::size_t>(x.order()) + 1);
  for (int k = 0; k <= x.order(); ++k) d.push_back(x.derivative(k));
  return CurveJet(t, std::move(d));
}

void CurveJet::require(int k, const char* what) const {
  if (levels() < k)
    throw JetOrderError(std::string(what) + " needs derivatives through order " +
                        std::to_string(k) + ", jet has " + std::to_string(levels()));
}

const Vec& CurveJet::at(int k) const {
  require(k, "curve jet access");
  return derivs[k];
}

double CurveJet::u_sq() const { return norm_sq(U()); }

JetVec CurveJet::position_jet() const { return JetVec::from_derivatives(derivs); }

}  // namespace confsphere
