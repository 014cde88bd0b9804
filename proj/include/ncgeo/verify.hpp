#ifndef NCGEO_VERIFY_HPP
#define NCGEO_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ncgeo/nc_forms.hpp"

namespace ncgeo {

struct CheckResult {
  std::string name;
  int trials = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Random-instance suite for the calculus identities: d'd' = 0, graded
/// Leibniz, the four Cartan relations, the Maurer-Cartan identity of itheta
/// and d'gamma = [itheta, gamma]. Degrees up to 2 are drawn per trial.
std::vector<CheckResult> calculus_identity_suite(int n, int trials, std::uint64_t seed,
                                                 double tol_identity = 1e-10,
                                                 double tol_exact = 1e-12);

/// Connection-level suite: gauge covariance of the curvature and flatness of
/// omega = -itheta.
std::vector<CheckResult> connection_gauge_suite(int n, int trials, std::uint64_t seed,
                                                double tol = 1e-10);

bool all_pass(const std::vector<CheckResult>& results);

/// Number of worker threads for internal sweeps: NCG_THREADS, where 0 or an
/// unset variable selects hardware concurrency.
int thread_budget();

/// Runs fn(i) for i in [0, count) across the thread budget.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace ncgeo

#endif
