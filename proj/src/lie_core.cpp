#include "ncgeo/lie_core.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace ncgeo {

namespace {

constexpr double kBasisTol = 1e-10;

std::vector<Matrix> gell_mann(int n) {
  // Hermitian traceless matrices with Tr(l_a l_b) = 2 delta_ab. Pair matrices
  // come first (symmetric then antisymmetric per j<k), diagonals last, so for
  // n = 2 the list is exactly (sigma_1, sigma_2, sigma_3).
  std::vector<Matrix> out;
  const Complex I(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix s = Matrix::Zero(n, n);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.push_back(s);
      Matrix a = Matrix::Zero(n, n);
      a(j, k) = -I;
      a(k, j) = I;
      out.push_back(a);
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix d = Matrix::Zero(n, n);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int m = 0; m < l; ++m) d(m, m) = scale;
    d(l, l) = -scale * l;
    out.push_back(d);
  }
  return out;
}

LieBasisPtr cached_basis(std::map<int, LieBasisPtr>& cache, std::mutex& mtx, int n,
                         const std::function<LieBasisPtr(int)>& make) {
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make(n)).first;
  return it->second;
}

}  // namespace

Matrix bracket(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("bracket: dimension mismatch");
  return a * b - b * a;
}

Matrix traceless_part(const Matrix& gamma) {
  const Eigen::Index n = gamma.rows();
  return gamma - (gamma.trace() / double(n)) * Matrix::Identity(n, n);
}

LieBasis::LieBasis(std::vector<Matrix> elements, bool real_span)
    : elements_(std::move(elements)), real_span_(real_span) {
  if (elements_.empty()) throw std::invalid_argument("LieBasis: empty element list");
  n_ = static_cast<int>(elements_[0].rows());
  for (const Matrix& e : elements_) {
    if (e.rows() != n_ || e.cols() != n_)
      throw std::invalid_argument("LieBasis: inconsistent matrix sizes");
    if (!e.allFinite()) throw std::invalid_argument("LieBasis: non-finite entries");
    if (real_span_) {
      if (max_abs(e.adjoint() + e) > kBasisTol)
        throw std::invalid_argument("LieBasis: real-span element is not antihermitian");
      if (std::abs(e.trace()) > kBasisTol)
        throw std::invalid_argument("LieBasis: real-span element is not traceless");
    }
  }
  const int d = dim();
  flat_.resize(n_ * n_, d);
  for (int a = 0; a < d; ++a) flat_.col(a) = vec(elements_[a]);
  if (rank_of(flat_) != d)
    throw std::invalid_argument("LieBasis: elements are linearly dependent");
  solver_.compute(flat_);
  adjoint_ops_.assign(d, Matrix::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      adjoint_ops_[a].col(b) = coordinates(bracket(elements_[a], elements_[b]));
}

Vector LieBasis::coordinates(const Matrix& x, double span_tol) const {
  const Vector rhs = vec(x);
  const Vector c = solver_.solve(rhs);
  const double scale = std::max(1.0, rhs.norm());
  const double residual = (flat_ * c - rhs).norm();
  if (residual > span_tol * scale)
    throw std::invalid_argument("coordinates: matrix outside basis span (residual " +
                                std::to_string(residual) + ")");
  return c;
}

Matrix LieBasis::from_coordinates(const Vector& c) const {
  if (c.size() != dim()) throw std::invalid_argument("from_coordinates: bad size");
  return unvec(flat_ * c, n_, n_);
}

LieBasisPtr su_basis(int n) {
  static std::map<int, LieBasisPtr> cache;
  static std::mutex mtx;
  if (n < 2) throw std::invalid_argument("su_basis: n must be >= 2");
  return cached_basis(cache, mtx, n, [](int m) {
    std::vector<Matrix> t;
    for (const Matrix& l : gell_mann(m)) t.push_back(Complex(0.0, -0.5) * l);
    return std::make_shared<const LieBasis>(std::move(t), true);
  });
}

LieBasisPtr su2_basis() { return su_basis(2); }

LieBasisPtr sl_basis(int n) {
  static std::map<int, LieBasisPtr> cache;
  static std::mutex mtx;
  if (n < 2) throw std::invalid_argument("sl_basis: n must be >= 2");
  return cached_basis(cache, mtx, n, [](int m) {
    return std::make_shared<const LieBasis>(su_basis(m)->elements(), false);
  });
}

LieBasisPtr gl_basis(int n) {
  static std::map<int, LieBasisPtr> cache;
  static std::mutex mtx;
  if (n < 1) throw std::invalid_argument("gl_basis: n must be >= 1");
  return cached_basis(cache, mtx, n, [](int m) {
    std::vector<Matrix> t;
    if (m >= 2) t = su_basis(m)->elements();
    t.push_back(Matrix::Identity(m, m));
    return std::make_shared<const LieBasis>(std::move(t), false);
  });
}

LieSubspace full_subspace(const LieBasisPtr& basis) {
  LieSubspace out;
  out.ambient = basis;
  for (int i = 0; i < basis->dim(); ++i) {
    Vector v = Vector::Zero(basis->dim());
    v(i) = 1.0;
    out.basis_vectors.push_back(v);
  }
  return out;
}

LieSubspace subspace_from_matrices(const LieBasisPtr& ambient, std::span<const Matrix> mats) {
  LieSubspace out;
  out.ambient = ambient;
  for (const Matrix& m : mats) out.basis_vectors.push_back(ambient->coordinates(m));
  Matrix stacked(ambient->dim(), static_cast<Eigen::Index>(out.basis_vectors.size()));
  for (size_t i = 0; i < out.basis_vectors.size(); ++i)
    stacked.col(static_cast<Eigen::Index>(i)) = out.basis_vectors[i];
  if (rank_of(stacked) != static_cast<int>(out.basis_vectors.size()))
    throw std::invalid_argument("subspace_from_matrices: vectors are linearly dependent");
  return out;
}

Complex killing_form(const Matrix& x, const Matrix& y, const LieBasis& basis) {
  const Vector cx = basis.coordinates(x);
  const Vector cy = basis.coordinates(y);
  const int d = basis.dim();
  Matrix ad_x = Matrix::Zero(d, d);
  Matrix ad_y = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    ad_x += cx(a) * basis.adjoint_op(a);
    ad_y += cy(a) * basis.adjoint_op(a);
  }
  return (ad_x * ad_y).trace();
}

namespace {

// Residual of c against the span of the given coefficient vectors.
double projection_residual(const std::vector<Vector>& span, const Vector& c) {
  if (span.empty()) return c.norm();
  Matrix m(c.size(), static_cast<Eigen::Index>(span.size()));
  for (size_t i = 0; i < span.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = span[i];
  return least_squares(m, c).residual;
}

}  // namespace

ReductiveSplit reductive_split(const LieBasisPtr& g, const LieSubspace& h,
                               double closure_tol) {
  if (h.ambient.get() != g.get())
    throw std::invalid_argument("reductive_split: subspace ambient differs from g");
  const int d = g->dim();
  const int k = h.dim();

  // h must be a subalgebra.
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const Vector br = g->coordinates(bracket(h.element(i), h.element(j)));
      if (projection_residual(h.basis_vectors, br) > closure_tol)
        throw std::invalid_argument("reductive_split: h is not a subalgebra");
    }
  }

  // Killing Gram matrix of g (bilinear, no conjugation).
  Matrix gram = Matrix::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      gram(a, b) = (g->adjoint_op(a) * g->adjoint_op(b)).trace();

  Matrix hmat(d, k);
  for (int i = 0; i < k; ++i) hmat.col(i) = h.basis_vectors[i];
  const Matrix on_h = hmat.transpose() * gram * hmat;
  if (k > 0 && rank_of(on_h) < k)
    throw std::invalid_argument("reductive_split: Killing form degenerate on h");

  // Complement: vectors Killing-orthogonal to every h basis vector.
  const Matrix ortho = hmat.transpose() * gram;  // k x d
  ReductiveSplit out;
  out.subalgebra = h;
  out.complement.ambient = g;
  if (g->real_span()) {
    const RealNullspaceResult ns = nullspace_real_solutions(ortho);
    for (Eigen::Index c = 0; c < ns.basis.cols(); ++c)
      out.complement.basis_vectors.push_back(ns.basis.col(c).cast<Complex>());
  } else {
    const NullspaceResult ns = nullspace(ortho);
    for (Eigen::Index c = 0; c < ns.basis.cols(); ++c)
      out.complement.basis_vectors.push_back(ns.basis.col(c));
  }

  out.closure_residual = 0.0;
  for (int i = 0; i < k; ++i) {
    for (const Vector& lv : out.complement.basis_vectors) {
      const Vector br =
          g->coordinates(bracket(h.element(i), g->from_coordinates(lv)));
      out.closure_residual =
          std::max(out.closure_residual,
                   projection_residual(out.complement.basis_vectors, br));
    }
  }
  out.reductive = out.closure_residual < closure_tol;
  return out;
}

LieSubspace centralizer(std::span<const Matrix> generators, Ambient ambient, int n) {
  LieBasisPtr basis;
  switch (ambient) {
    case Ambient::FullMatrixAlgebra: basis = gl_basis(n); break;
    case Ambient::SpecialLinear: basis = sl_basis(n); break;
    case Ambient::SpecialUnitary: basis = su_basis(n); break;
  }
  if (generators.empty()) return full_subspace(basis);

  const int d = basis->dim();
  Matrix system(static_cast<Eigen::Index>(generators.size()) * n * n, d);
  Eigen::Index row = 0;
  for (const Matrix& gen : generators) {
    if (gen.rows() != n || gen.cols() != n)
      throw std::invalid_argument("centralizer: generator size mismatch");
    for (int a = 0; a < d; ++a)
      system.block(row, a, n * n, 1) = vec(bracket(basis->element(a), gen));
    row += n * n;
  }

  LieSubspace out;
  out.ambient = basis;
  if (basis->real_span()) {
    const RealNullspaceResult ns = nullspace_real_solutions(system);
    for (Eigen::Index c = 0; c < ns.basis.cols(); ++c)
      out.basis_vectors.push_back(ns.basis.col(c).cast<Complex>());
  } else {
    const NullspaceResult ns = nullspace(system);
    for (Eigen::Index c = 0; c < ns.basis.cols(); ++c)
      out.basis_vectors.push_back(ns.basis.col(c));
  }
  return out;
}

Matrix adjoint_action(const Matrix& h, const Matrix& x) {
  if (h.rows() != x.rows() || h.cols() != x.cols())
    throw std::invalid_argument("adjoint_action: dimension mismatch");
  return h * x * matrix_inverse(h);
}

}  // namespace ncgeo
