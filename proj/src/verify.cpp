#include "ncgeo/verify.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

namespace ncgeo {

namespace {

struct Tally {
  CheckResult result;
  void feed(double residual) {
    result.max_residual = std::max(result.max_residual, residual);
    ++result.trials;
  }
  CheckResult close(double tol) {
    result.tol = tol;
    result.pass = result.max_residual < tol;
    return result;
  }
};

Matrix random_traceless(int n, std::uint64_t& state) {
  return traceless_part(random_matrix(n, n, state));
}

Matrix random_unitary(int n, std::uint64_t& state) {
  const Matrix g = random_matrix(n, n, state);
  return matrix_exp(0.5 * (g - dagger(g)));  // exp of an antihermitian matrix
}

}  // namespace

std::vector<CheckResult> calculus_identity_suite(int n, int trials, std::uint64_t seed,
                                                 double tol_identity, double tol_exact) {
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + n;
  Tally dd{{ "d'd' = 0" }};
  Tally leibniz{{ "graded Leibniz" }};
  Tally cartan_ii{{ "i_X i_Y + i_Y i_X = 0" }};
  Tally cartan_li{{ "L_X i_Y - i_Y L_X = i_[X,Y]" }};
  Tally cartan_ll{{ "L_X L_Y - L_Y L_X = L_[X,Y]" }};
  Tally cartan_ld{{ "L_X d' = d' L_X" }};
  Tally mc{{ "d'(itheta) = (itheta)^2" }};
  Tally dgamma{{ "d'gamma = [itheta, gamma]" }};

  const NCForm itheta = canonical_theta(n);
  mc.feed(distance(d_prime(itheta), wedge(itheta, itheta)));

  for (int trial = 0; trial < trials; ++trial) {
    const int deg = trial % 3;  // degrees 0..2
    const NCForm omega = NCForm::random(n, deg, state);
    const InnerDerivation x(random_traceless(n, state));
    const InnerDerivation y(random_traceless(n, state));
    const InnerDerivation xy(bracket(x.generator(), y.generator()));

    dd.feed(max_coeff(d_prime(d_prime(omega))));

    {
      const int deg_b = (trial / 3) % 3;
      const NCForm beta = NCForm::random(n, deg_b, state);
      const NCForm lhs = d_prime(wedge(omega, beta));
      const double sign = (deg % 2 == 0) ? 1.0 : -1.0;
      const NCForm rhs = wedge(d_prime(omega), beta) + sign * wedge(omega, d_prime(beta));
      leibniz.feed(distance(lhs, rhs));
    }

    {
      // interior products need degree >= 2 to be nontrivial
      const NCForm two = NCForm::random(n, 2, state);
      cartan_ii.feed(distance(interior(x, interior(y, two)),
                              Complex(-1.0) * interior(y, interior(x, two))));
    }

    cartan_li.feed(distance(lie_derivative(x, interior(y, omega)) -
                                interior(y, lie_derivative(x, omega)),
                            interior(xy, omega)));
    cartan_ll.feed(distance(lie_derivative(x, lie_derivative(y, omega)) -
                                lie_derivative(y, lie_derivative(x, omega)),
                            lie_derivative(xy, omega)));
    cartan_ld.feed(distance(lie_derivative(x, d_prime(omega)),
                            d_prime(lie_derivative(x, omega))));

    {
      NCForm gamma(n, 0);
      gamma.component(0) = random_matrix(n, n, state);
      dgamma.feed(distance(d_prime(gamma),
                           wedge(itheta, gamma) - wedge(gamma, itheta)));
    }
  }

  return {dd.close(tol_identity),        leibniz.close(tol_identity),
          cartan_ii.close(tol_identity), cartan_li.close(tol_identity),
          cartan_ll.close(tol_identity), cartan_ld.close(tol_identity),
          mc.close(tol_exact),           dgamma.close(tol_exact)};
}

std::vector<CheckResult> connection_gauge_suite(int n, int trials, std::uint64_t seed,
                                                double tol) {
  std::uint64_t state = seed * 0x2545f4914f6cdd1dull + n;
  Tally covariance{{ "curvature covariance F^U = U*FU" }};
  Tally flat{{ "flat ordinary connection -itheta" }};

  flat.feed(max_coeff(curvature({Complex(-1.0) * canonical_theta(n)})));

  for (int trial = 0; trial < trials; ++trial) {
    const ConnectionForm omega{NCForm::random(n, 1, state)};
    const Matrix u = random_unitary(n, state);
    const NCForm lhs = curvature(gauge_transform(omega, u));
    NCForm rhs = curvature(omega);
    for (int i = 0; i < rhs.num_components(); ++i)
      rhs.component(i) = dagger(u) * rhs.component(i) * u;
    covariance.feed(distance(lhs, rhs));
  }

  return {covariance.close(tol), flat.close(tol)};
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

int thread_budget() {
  if (const char* env = std::getenv("NCG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace ncgeo
