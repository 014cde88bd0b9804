#ifndef NCGEO_LINALG_HPP
#define NCGEO_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ncgeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Relative singular-value threshold used for all rank/nullspace decisions.
inline constexpr double kRankRelTol = 1e-8;

/// Thrown when a rank decision has a singular value within a factor 10 of the
/// cut, so the dimension would not survive a threshold perturbation.
class AmbiguousRankError : public std::runtime_error {
public:
  explicit AmbiguousRankError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an affine constraint system admits no solution.
class InconsistentConstraints : public std::runtime_error {
public:
  InconsistentConstraints(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

Matrix dagger(const Matrix& a);

/// Column-major flattening of a matrix and its inverse.
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, int rows, int cols);

Matrix kron(const Matrix& a, const Matrix& b);

/// Operator on vec(Z) realizing Z -> [g, Z].
Matrix commutator_operator(const Matrix& g);

struct NullspaceResult {
  Matrix basis;      // columns span the nullspace
  int rank = 0;
  double threshold = 0.0;
  double max_singular_value = 0.0;
};

/// Nullspace of a complex matrix through an SVD with relative threshold.
/// When `guard` is set, a singular value within a factor 10 of the threshold
/// raises AmbiguousRankError instead of silently picking a side.
NullspaceResult nullspace(const Matrix& a, double rel_tol = kRankRelTol, bool guard = true);

/// Nullspace dimension only, via the spectrum of the Gram matrix; same
/// threshold and ambiguity semantics as nullspace().
int nullspace_dimension(const Matrix& a, double rel_tol = kRankRelTol, bool guard = true);

struct RealNullspaceResult {
  RealMatrix basis;
  int rank = 0;
  double threshold = 0.0;
  double max_singular_value = 0.0;
};

RealNullspaceResult nullspace_real(const RealMatrix& a, double rel_tol = kRankRelTol,
                                   bool guard = true);

/// Real solutions of the complex system A x = 0, i.e. the nullspace of the
/// stacked real system [Re A; Im A].
RealNullspaceResult nullspace_real_solutions(const Matrix& a, double rel_tol = kRankRelTol,
                                             bool guard = true);

int rank_of(const Matrix& a, double rel_tol = kRankRelTol);

struct LeastSquaresResult {
  Vector solution;
  double residual = 0.0;
};

LeastSquaresResult least_squares(const Matrix& a, const Vector& b);

Matrix matrix_exp(const Matrix& a);

/// Inverse through full-pivot LU; throws std::invalid_argument when singular.
Matrix matrix_inverse(const Matrix& a);

bool is_unitary(const Matrix& u, double tol = 1e-8);

double max_abs(const Matrix& a);

Matrix random_matrix(int rows, int cols, std::uint64_t& state);

/// Splitmix-style uniform double in [-1, 1]; cheap deterministic stream.
double uniform_pm1(std::uint64_t& state);

}  // namespace ncgeo

#endif
