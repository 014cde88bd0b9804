#include "ncgeo/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace ncgeo {

namespace {

// Shared rank logic: count singular values above rel_tol * max, optionally
// refusing to decide when a value sits within a factor 10 of the cut.
int decide_rank(const Eigen::VectorXd& sv, double rel_tol, bool guard, double* threshold,
                double* max_sv) {
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double tau = rel_tol * smax;
  *threshold = tau;
  *max_sv = smax;
  if (smax == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tau) ++rank;
    if (guard && sv(i) > tau / 10.0 && sv(i) < tau * 10.0) {
      throw AmbiguousRankError("singular value " + std::to_string(sv(i)) +
                               " within a factor 10 of threshold " + std::to_string(tau));
    }
  }
  return rank;
}

}  // namespace

Matrix dagger(const Matrix& a) { return a.adjoint(); }

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix commutator_operator(const Matrix& g) {
  const Eigen::Index n = g.rows();
  const Matrix id = Matrix::Identity(n, n);
  return kron(id, g) - kron(g.transpose(), id);
}

NullspaceResult nullspace(const Matrix& a, double rel_tol, bool guard) {
  NullspaceResult out;
  if (a.rows() == 0) {  // no constraints: everything is in the kernel
    out.basis = Matrix::Identity(a.cols(), a.cols());
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  out.rank = decide_rank(svd.singularValues(), rel_tol, guard, &out.threshold,
                         &out.max_singular_value);
  out.basis = svd.matrixV().rightCols(a.cols() - out.rank);
  return out;
}

int nullspace_dimension(const Matrix& a, double rel_tol, bool guard) {
  if (a.rows() == 0 || a.cols() == 0) return static_cast<int>(a.cols());
  // Dimension only: no singular vectors needed, and real-valued systems
  // (stacked adjoint operators have real entries) go through the faster
  // real divide-and-conquer path.
  Eigen::VectorXd sv;
  const double scale = std::max(1.0, max_abs(a));
  if (a.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    Eigen::BDCSVD<RealMatrix> svd(a.real());
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Matrix> svd(a);
    sv = svd.singularValues();
  }
  double threshold = 0.0, max_sv = 0.0;
  const int rank = decide_rank(sv, rel_tol, guard, &threshold, &max_sv);
  return static_cast<int>(a.cols()) - rank;
}

RealNullspaceResult nullspace_real(const RealMatrix& a, double rel_tol, bool guard) {
  RealNullspaceResult out;
  if (a.rows() == 0) {
    out.basis = RealMatrix::Identity(a.cols(), a.cols());
    return out;
  }
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  out.rank = decide_rank(svd.singularValues(), rel_tol, guard, &out.threshold,
                         &out.max_singular_value);
  out.basis = svd.matrixV().rightCols(a.cols() - out.rank);
  return out;
}

RealNullspaceResult nullspace_real_solutions(const Matrix& a, double rel_tol, bool guard) {
  RealMatrix stacked(2 * a.rows(), a.cols());
  stacked.topRows(a.rows()) = a.real();
  stacked.bottomRows(a.rows()) = a.imag();
  return nullspace_real(stacked, rel_tol, guard);
}

int rank_of(const Matrix& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  double threshold = 0.0, max_sv = 0.0;
  return decide_rank(svd.singularValues(), rel_tol, false, &threshold, &max_sv);
}

LeastSquaresResult least_squares(const Matrix& a, const Vector& b) {
  LeastSquaresResult out;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  out.solution = cod.solve(b);
  out.residual = (a * out.solution - b).norm();
  return out;
}

Matrix matrix_exp(const Matrix& a) { return a.exp(); }

Matrix matrix_inverse(const Matrix& a) {
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw std::invalid_argument("matrix is singular");
  return lu.inverse();
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return max_abs(dagger(u) * u - id) < tol;
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double uniform_pm1(std::uint64_t& state) {
  // splitmix64 step
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z = z ^ (z >> 31);
  return 2.0 * (double(z >> 11) * 0x1.0p-53) - 1.0;
}

Matrix random_matrix(int rows, int cols, std::uint64_t& state) {
  Matrix out(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      out(i, j) = Complex(uniform_pm1(state), uniform_pm1(state));
  return out;
}

}  // namespace ncgeo
