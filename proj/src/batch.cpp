#include "confsphere/batch.hpp"

#ifdef CONFSPHERE_HAVE_OPENMP
#include <omp.h>
#endif

namespace confsphere {

int max_threads() {
#ifdef CONFSPHERE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Trajectory> integrate_all(const std::vector<PhasePoint>& starts, double t_end, double h,
                                      int stride, Exec exec) {
  return parallel_map(
      starts.size(), [&](std::size_t i) { return integrate(starts[i], t_end, h, stride); }, exec);
}

std::vector<RelationReport> relation_all(const std::vector<PhasePoint>& points, Exec exec) {
  return parallel_map(points.size(), [&](std::size_t i) { return relation_check(points[i]); }, exec);
}

std::vector<MiddleSlotResiduals> middle_slot_all(const std::vector<CurveJet>& jets, Exec exec) {
  return parallel_map(
      jets.size(), [&](std::size_t i) { return middle_slot_residuals(jets[i]); }, exec);
}

std::vector<CurveJet> family_jets(const SolutionFamily& f, const std::vector<double>& ts, int order,
                                  Exec exec) {
  return parallel_map(ts.size(), [&](std::size_t i) { return eval_jet(f, ts[i], order); }, exec);
}

}  // namespace confsphere
