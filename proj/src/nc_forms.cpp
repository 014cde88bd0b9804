#include "ncgeo/nc_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ncgeo {

namespace {

constexpr int kMaxChoose = 40;

long long binomial(int n, int k) {
  static const auto table = [] {
    std::array<std::array<long long, kMaxChoose + 1>, kMaxChoose + 1> c{};
    for (int i = 0; i <= kMaxChoose; ++i) {
      c[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return c;
  }();
  if (k < 0 || k > n || n < 0) return 0;
  return table[n][k];
}

// Lexicographic ranking of strictly increasing tuples from {0..N-1}.
struct Indexer {
  int N;
  int p;

  int size() const { return static_cast<int>(binomial(N, p)); }

  int rank(std::span<const int> t) const {
    int r = 0;
    int prev = -1;
    for (int i = 0; i < p; ++i) {
      for (int v = prev + 1; v < t[i]; ++v)
        r += static_cast<int>(binomial(N - 1 - v, p - 1 - i));
      prev = t[i];
    }
    return r;
  }

  std::vector<int> unrank(int r) const {
    std::vector<int> t(p);
    int prev = -1;
    for (int i = 0; i < p; ++i) {
      int v = prev + 1;
      while (true) {
        const int block = static_cast<int>(binomial(N - 1 - v, p - 1 - i));
        if (r < block) break;
        r -= block;
        ++v;
      }
      t[i] = v;
      prev = v;
    }
    return t;
  }
};

// Sorts into increasing order, returning the permutation sign, or 0 when an
// index repeats.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    size_t j = i;
    while (j > 0 && idx[j] < idx[j - 1]) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
      --j;
    }
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

}  // namespace

NCForm::NCForm(int n, int degree) : n_(n), degree_(degree), basis_(sl_basis(n)) {
  if (degree < 0) throw std::invalid_argument("NCForm: negative degree");
  const int count = static_cast<int>(binomial(basis_->dim(), degree));
  coeffs_.assign(count, Matrix::Zero(n, n));
}

NCForm NCForm::random(int n, int degree, std::uint64_t& state) {
  NCForm out(n, degree);
  for (Matrix& c : out.coeffs_) c = random_matrix(n, n, state);
  return out;
}

std::vector<int> NCForm::component_tuple(int flat) const {
  return Indexer{basis_->dim(), degree_}.unrank(flat);
}

Matrix NCForm::value_on_basis(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_)
    throw std::invalid_argument("value_on_basis: wrong number of indices");
  if (coeffs_.empty()) return Matrix::Zero(n_, n_);
  std::vector<int> idx(indices.begin(), indices.end());
  const int sign = sort_with_sign(idx);
  if (sign == 0) return Matrix::Zero(n_, n_);
  return double(sign) * coeffs_[Indexer{basis_->dim(), degree_}.rank(idx)];
}

Matrix NCForm::evaluate(std::span<const Matrix> generators) const {
  if (static_cast<int>(generators.size()) != degree_)
    throw std::invalid_argument("evaluate: wrong number of derivations");
  if (degree_ == 0) return coeffs_[0];
  if (coeffs_.empty()) return Matrix::Zero(n_, n_);
  const int N = basis_->dim();
  Matrix coords(degree_, N);
  for (int i = 0; i < degree_; ++i)
    coords.row(i) = basis_->coordinates(traceless_part(generators[i])).transpose();

  Matrix out = Matrix::Zero(n_, n_);
  const Indexer ix{N, degree_};
  Matrix minor(degree_, degree_);
  for (int flat = 0; flat < ix.size(); ++flat) {
    const std::vector<int> t = ix.unrank(flat);
    for (int i = 0; i < degree_; ++i)
      for (int j = 0; j < degree_; ++j) minor(i, j) = coords(i, t[j]);
    const Complex det = minor.determinant();
    if (det != Complex(0.0, 0.0)) out += det * coeffs_[flat];
  }
  return out;
}

NCForm& NCForm::operator+=(const NCForm& other) {
  if (n_ != other.n_ || degree_ != other.degree_)
    throw std::invalid_argument("NCForm: shape mismatch");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

NCForm& NCForm::operator-=(const NCForm& other) {
  if (n_ != other.n_ || degree_ != other.degree_)
    throw std::invalid_argument("NCForm: shape mismatch");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

NCForm& NCForm::operator*=(const Complex& scalar) {
  for (Matrix& c : coeffs_) c *= scalar;
  return *this;
}

NCForm operator+(NCForm a, const NCForm& b) { return a += b; }
NCForm operator-(NCForm a, const NCForm& b) { return a -= b; }
NCForm operator*(const Complex& s, NCForm a) { return a *= s; }

double max_coeff(const NCForm& a) {
  double m = 0.0;
  for (int i = 0; i < a.num_components(); ++i) m = std::max(m, max_abs(a.component(i)));
  return m;
}

double distance(const NCForm& a, const NCForm& b) { return max_coeff(a - b); }

NCForm wedge(const NCForm& a, const NCForm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("wedge: algebra size mismatch");
  const int p = a.degree();
  const int q = b.degree();
  NCForm out(a.n(), p + q);
  if (out.num_components() == 0) return out;
  const int N = a.derivation_dim();
  const Indexer ix{N, p + q};

  // Positions of the p slots fed to `a`, enumerated as increasing tuples.
  const Indexer sel{p + q, p};
  std::vector<int> in_a(p), in_b(q);
  for (int flat = 0; flat < ix.size(); ++flat) {
    const std::vector<int> t = ix.unrank(flat);
    Matrix acc = Matrix::Zero(a.n(), a.n());
    for (int s = 0; s < sel.size(); ++s) {
      const std::vector<int> pos = sel.unrank(s);
      int sign_exp = 0;
      {
        int k = 0;
        std::vector<bool> used(p + q, false);
        for (int i = 0; i < p; ++i) {
          in_a[i] = t[pos[i]];
          used[pos[i]] = true;
          sign_exp += pos[i] - k;
          ++k;
        }
        int m = 0;
        for (int i = 0; i < p + q; ++i)
          if (!used[i]) in_b[m++] = t[i];
      }
      const double sign = (sign_exp % 2 == 0) ? 1.0 : -1.0;
      acc += sign * (a.value_on_basis(in_a) * b.value_on_basis(in_b));
    }
    out.component(flat) = acc;
  }
  return out;
}

NCForm d_prime(const NCForm& a) {
  const int p = a.degree();
  NCForm out(a.n(), p + 1);
  if (out.num_components() == 0) return out;
  const LieBasis& basis = a.derivation_basis();
  const int N = basis.dim();
  const Indexer ix{N, p + 1};

  std::vector<int> rest(p), rest2(p);
  for (int flat = 0; flat < ix.size(); ++flat) {
    const std::vector<int> t = ix.unrank(flat);
    Matrix acc = Matrix::Zero(a.n(), a.n());

    // sum_i (-1)^i [T_{t_i}, a(..i omitted..)]
    for (int i = 0; i <= p; ++i) {
      int m = 0;
      for (int k = 0; k <= p; ++k)
        if (k != i) rest[m++] = t[k];
      const Matrix val = a.value_on_basis(rest);
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      acc += sign * bracket(basis.element(t[i]), val);
    }

    // sum_{i<j} (-1)^{i+j} a(ad_{[T_{t_i}, T_{t_j}]}, ..i, j omitted..)
    if (p >= 1) {
      rest2.resize(p);
      for (int i = 0; i <= p; ++i) {
        for (int j = i + 1; j <= p; ++j) {
          int m = 1;
          for (int k = 0; k <= p; ++k)
            if (k != i && k != j) rest2[m++] = t[k];
          const Vector f = basis.adjoint_op(t[i]).col(t[j]);
          const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          for (int c = 0; c < N; ++c) {
            if (f(c) == Complex(0.0, 0.0)) continue;
            rest2[0] = c;
            acc += sign * f(c) * a.value_on_basis(rest2);
          }
        }
      }
    }
    out.component(flat) = acc;
  }
  return out;
}

NCForm interior(const InnerDerivation& x, const NCForm& a) {
  if (a.degree() == 0) return NCForm(a.n(), 0);
  NCForm out(a.n(), a.degree() - 1);
  const Vector c = a.derivation_basis().coordinates(x.generator());
  const int N = a.derivation_dim();
  std::vector<int> idx(a.degree());
  for (int flat = 0; flat < out.num_components(); ++flat) {
    const std::vector<int> t = out.component_tuple(flat);
    std::copy(t.begin(), t.end(), idx.begin() + 1);
    Matrix acc = Matrix::Zero(a.n(), a.n());
    for (int g = 0; g < N; ++g) {
      if (c(g) == Complex(0.0, 0.0)) continue;
      idx[0] = g;
      acc += c(g) * a.value_on_basis(idx);
    }
    out.component(flat) = acc;
  }
  return out;
}

NCForm lie_derivative(const InnerDerivation& x, const NCForm& a) {
  if (a.degree() == 0) return interior(x, d_prime(a));
  return interior(x, d_prime(a)) + d_prime(interior(x, a));
}

NCForm canonical_theta(int n) {
  if (n < 2) throw std::invalid_argument("canonical_theta: n must be >= 2");
  NCForm out(n, 1);
  for (int a = 0; a < out.derivation_dim(); ++a)
    out.component(a) = out.derivation_basis().element(a);
  return out;
}

NCForm curvature(const ConnectionForm& conn) {
  if (conn.omega.degree() != 1)
    throw std::invalid_argument("curvature: connection form must have degree 1");
  return d_prime(conn.omega) + wedge(conn.omega, conn.omega);
}

ConnectionForm gauge_transform(const ConnectionForm& conn, const Matrix& u,
                               double unitary_tol) {
  if (conn.omega.degree() != 1)
    throw std::invalid_argument("gauge_transform: connection form must have degree 1");
  if (!is_unitary(u, unitary_tol))
    throw std::invalid_argument("gauge_transform: matrix is not unitary");
  ConnectionForm out{NCForm(conn.omega.n(), 1)};
  const Matrix udag = dagger(u);
  const LieBasis& basis = conn.omega.derivation_basis();
  for (int a = 0; a < conn.omega.num_components(); ++a)
    out.omega.component(a) =
        udag * conn.omega.component(a) * u + udag * bracket(basis.element(a), u);
  return out;
}

HermiticityCheck is_antihermitian_connection(const ConnectionForm& conn, double tol) {
  HermiticityCheck out;
  // Frobenius norm per real derivation: unitarily invariant, so the defect is
  // unchanged under gauge transformations.
  for (int a = 0; a < conn.omega.num_components(); ++a) {
    const Matrix& v = conn.omega.component(a);
    out.defect = std::max(out.defect, (dagger(v) + v).norm());
  }
  out.antihermitian = out.defect < tol;
  return out;
}

double invariance_defect(const NCForm& omega, const InnerDerivation& y) {
  return max_coeff(lie_derivative(y, omega));
}

}  // namespace ncgeo
