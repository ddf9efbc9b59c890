#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include "confsphere/families.hpp"
#include "confsphere/mercator.hpp"
#include "confsphere/symmetries.hpp"
#include "confsphere/tractor.hpp"

namespace confsphere {

/// Serial runs are the reference; Parallel fans the index range out over
/// OpenMP threads.  Results are stored by index, so both give identical output.
enum class Exec { Serial, Parallel };

int max_threads();

/// out[i] = f(i).  The first exception (lowest index) is rethrown after the loop.
template <class F>
auto parallel_map(std::size_t count, F&& f, Exec exec) -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        out[i] = f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (long i = 0; i < n; ++i) {
      try {
        out[i] = f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Trajectory> integrate_all(const std::vector<PhasePoint>& starts, double t_end, double h,
                                      int stride, Exec exec);
std::vector<RelationReport> relation_all(const std::vector<PhasePoint>& points, Exec exec);
std::vector<MiddleSlotResiduals> middle_slot_all(const std::vector<CurveJet>& jets, Exec exec);
std::vector<CurveJet> family_jets(const SolutionFamily& f, const std::vector<double>& ts, int order,
                                  Exec exec);

}  // namespace confsphere
