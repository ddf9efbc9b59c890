#include <Eigen/Dense>

#include "confsphere/mercator.hpp"
#include "confsphere/sampling.hpp"
#include "confsphere/symmetries.hpp"
#include "doctest.h"

using namespace confsphere;

TEST_CASE("brackets of the E quantities close on their span") {
  Sampler rng(81);
  const auto fs = e_functions(3);
  const int m = 40, k = static_cast<int>(fs.size());
  std::vector<PhasePoint> pts;
  for (int s = 0; s < m; ++s) pts.push_back(rng.phase_point(3));
  Eigen::MatrixXd basis(m, k);
  for (int s = 0; s < m; ++s)
    for (int c = 0; c < k; ++c) basis(s, c) = fs[c].second(pts[s]);
  const auto qr = basis.colPivHouseholderQr();
  REQUIRE(qr.rank() == k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Eigen::VectorXd br(m);
      for (int s = 0; s < m; ++s) br(s) = poisson_bracket_fd(fs[a].second, fs[b].second, pts[s]);
      const Eigen::VectorXd coef = qr.solve(br);
      const double resid = (basis * coef - br).lpNorm<Eigen::Infinity>();
      INFO(fs[a].first << " , " << fs[b].first);
      CHECK(resid <= 1e-6 * (1.0 + br.lpNorm<Eigen::Infinity>()));
      // structure constants come out as small integers
      for (int c = 0; c < k; ++c) CHECK(std::abs(coef(c) - std::round(coef(c))) <= 1e-6);
    }
}
