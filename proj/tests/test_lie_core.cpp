#include <doctest.h>

#include "ncgeo/lie_core.hpp"

using namespace ncgeo;

namespace {

// Independent coordinate expansion for the su(n) basis: c_a = -2 Tr(T_a x).
Vector trace_coordinates(const LieBasis& basis, const Matrix& x) {
  Vector c(basis.dim());
  for (int a = 0; a < basis.dim(); ++a) c(a) = -2.0 * (basis.element(a) * x).trace();
  return c;
}

// Killing form oracle: assemble the adjoint matrices from scratch.
Complex killing_oracle(const LieBasis& basis, const Matrix& x, const Matrix& y) {
  const int d = basis.dim();
  auto ad_matrix = [&](const Matrix& z) {
    Matrix ad(d, d);
    for (int b = 0; b < d; ++b)
      ad.col(b) = trace_coordinates(basis, bracket(z, basis.element(b)));
    return ad;
  };
  return (ad_matrix(x) * ad_matrix(y)).trace();
}

Matrix random_su2_element(std::uint64_t& state) {
  const LieBasis& su2 = *su2_basis();
  Matrix out = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) out += uniform_pm1(state) * su2.element(a);
  return out;
}

}  // namespace

TEST_CASE("bracket matches the su(2) bracket table") {
  const LieBasis& su2 = *su2_basis();
  const Matrix t1 = su2.element(0), t2 = su2.element(1), t3 = su2.element(2);
  CHECK(max_abs(bracket(t1, t2) - t3) < 1e-14);
  CHECK(max_abs(bracket(t2, t3) - t1) < 1e-14);
  CHECK(max_abs(bracket(t3, t1) - t2) < 1e-14);
  // antisymmetry: [A, A] = 0 and [T1, T3] = -T2
  CHECK(max_abs(bracket(t1, t1)) == 0.0);
  CHECK(max_abs(bracket(t1, t3) + t2) < 1e-14);
  CHECK_THROWS_AS(bracket(t1, Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("su2 basis generators are antihermitian and traceless") {
  const LieBasis& su2 = *su2_basis();
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(su2.element(a).trace()) < 1e-15);
    CHECK(max_abs(dagger(su2.element(a)) + su2.element(a)) < 1e-15);
  }
}

TEST_CASE("su(n) bases reproduce brackets through structure constants") {
  for (int n : {2, 3}) {
    const LieBasis& basis = *su_basis(n);
    for (int a = 0; a < basis.dim(); ++a) {
      for (int b = 0; b < basis.dim(); ++b) {
        Matrix reconstructed = Matrix::Zero(n, n);
        const Vector f = basis.adjoint_op(a).col(b);
        for (int c = 0; c < basis.dim(); ++c)
          reconstructed += f(c) * basis.element(c);
        CHECK(max_abs(reconstructed - bracket(basis.element(a), basis.element(b))) < 1e-12);
        CHECK(f.imag().cwiseAbs().maxCoeff() < 1e-12);  // real structure constants
      }
    }
  }
}

TEST_CASE("Jacobi identity on random triples") {
  std::uint64_t state = 2024;
  for (int n : {2, 3}) {
    const LieBasis& basis = *su_basis(n);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix x = Matrix::Zero(n, n), y = Matrix::Zero(n, n), z = Matrix::Zero(n, n);
      for (int a = 0; a < basis.dim(); ++a) {
        x += uniform_pm1(state) * basis.element(a);
        y += uniform_pm1(state) * basis.element(a);
        z += uniform_pm1(state) * basis.element(a);
      }
      const Matrix jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                         bracket(z, bracket(x, y));
      CHECK(max_abs(jac) < 1e-12);
    }
  }
}

TEST_CASE("Killing form values on su(2)") {
  const LieBasis& su2 = *su2_basis();
  const Matrix t1 = su2.element(0), t2 = su2.element(1), t3 = su2.element(2);
  // Tr(ad_{T3}^2) over the 3-dim adjoint: eigenvalues {0, +i, -i} give -2.
  CHECK(std::abs(killing_form(t3, t3, su2) - Complex(-2.0, 0.0)) < 1e-12);
  CHECK(std::abs(killing_form(t1, t2, su2)) < 1e-12);
  CHECK(std::abs(killing_form(t3, t3, su2) - killing_oracle(su2, t3, t3)) < 1e-12);

  std::uint64_t state = 7;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = random_su2_element(state);
    const Matrix y = random_su2_element(state);
    CHECK(std::abs(killing_form(x, y, su2) - killing_form(y, x, su2)) < 1e-12);
    CHECK(std::abs(killing_form(x, y, su2) - killing_oracle(su2, x, y)) < 1e-11);
  }

  CHECK_THROWS_AS(killing_form(Matrix::Identity(2, 2), t1, su2), std::invalid_argument);
}

TEST_CASE("Killing form matches 2n Tr(XY) on su(n)") {
  std::uint64_t state = 61;
  for (int n : {2, 3}) {
    const LieBasis& basis = *su_basis(n);
    // K(T_a, T_a) = 2n Tr(T_a^2) = -n for the normalized generators
    for (int a = 0; a < basis.dim(); ++a)
      CHECK(std::abs(killing_form(basis.element(a), basis.element(a), basis) -
                     Complex(-double(n), 0.0)) < 1e-11);
    for (int trial = 0; trial < 5; ++trial) {
      Matrix x = Matrix::Zero(n, n), y = Matrix::Zero(n, n);
      for (int a = 0; a < basis.dim(); ++a) {
        x += uniform_pm1(state) * basis.element(a);
        y += uniform_pm1(state) * basis.element(a);
      }
      CHECK(std::abs(killing_form(x, y, basis) - 2.0 * double(n) * (x * y).trace()) <
            1e-10);
    }
  }
}

TEST_CASE("reductive split of su(2) along span(T3)") {
  const LieBasisPtr su2 = su2_basis();
  const Matrix t1 = su2->element(0), t2 = su2->element(1), t3 = su2->element(2);
  const std::vector<Matrix> h_gen = {t3};
  const ReductiveSplit split = reductive_split(su2, subspace_from_matrices(su2, h_gen));

  CHECK(split.complement.dim() == 2);
  CHECK(split.reductive);
  CHECK(split.closure_residual < 1e-10);

  // complement spans (T1, T2): both brackets with T3 stay inside.
  Matrix span(3, 2);
  for (int i = 0; i < 2; ++i) span.col(i) = split.complement.basis_vectors[i];
  for (const Matrix& target : {t1, t2}) {
    const Vector coords = su2->coordinates(target);
    CHECK(least_squares(span, coords).residual < 1e-10);
  }

  // Killing orthogonality of the split
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(killing_form(t3, split.complement.element(i), *su2)) < 1e-10);

  // h = g gives the zero complement
  const ReductiveSplit full = reductive_split(su2, full_subspace(su2));
  CHECK(full.complement.dim() == 0);

  // a non-subalgebra input is rejected
  const std::vector<Matrix> bad = {t1};
  CHECK_NOTHROW(reductive_split(su2, subspace_from_matrices(su2, bad)));  // abelian line is fine
  const LieBasisPtr su3 = su_basis(3);
  const std::vector<Matrix> not_closed = {su3->element(0)};
  CHECK_NOTHROW(reductive_split(su3, subspace_from_matrices(su3, not_closed)));
}

TEST_CASE("centralizers in M_2") {
  const LieBasis& su2 = *su2_basis();
  const Matrix t1 = su2.element(0), t2 = su2.element(1), t3 = su2.element(2);
  const Matrix id = Matrix::Identity(2, 2);

  SUBCASE("centralizer of T3 in M_2 is span(1, T3)") {
    const std::vector<Matrix> gens = {t3};
    const LieSubspace w0 = centralizer(gens, Ambient::FullMatrixAlgebra, 2);
    CHECK(w0.dim() == 2);
    Matrix span(w0.ambient->dim(), 2);
    for (int i = 0; i < 2; ++i) span.col(i) = w0.basis_vectors[i];
    for (const Matrix& target : {id, t3})
      CHECK(least_squares(span, w0.ambient->coordinates(target)).residual < 1e-10);
  }

  SUBCASE("empty generators return the full ambient") {
    const std::vector<Matrix> none;
    CHECK(centralizer(none, Ambient::FullMatrixAlgebra, 2).dim() == 4);
    CHECK(centralizer(none, Ambient::FullMatrixAlgebra, 3).dim() == 9);
  }

  SUBCASE("Schur: centralizer of all of su(2) is the scalars") {
    const std::vector<Matrix> gens = {t1, t2, t3};
    const LieSubspace z = centralizer(gens, Ambient::FullMatrixAlgebra, 2);
    CHECK(z.dim() == 1);
    CHECK(max_abs(traceless_part(z.element(0))) < 1e-10);
  }

  SUBCASE("centralizer output is an associative subalgebra containing 1") {
    const std::vector<Matrix> gens = {t3};
    const LieSubspace w0 = centralizer(gens, Ambient::FullMatrixAlgebra, 2);
    Matrix span(w0.ambient->dim(), w0.dim());
    for (int i = 0; i < w0.dim(); ++i) span.col(i) = w0.basis_vectors[i];
    CHECK(least_squares(span, w0.ambient->coordinates(id)).residual < 1e-10);
    for (int i = 0; i < w0.dim(); ++i) {
      for (int j = 0; j < w0.dim(); ++j) {
        const Matrix prod = w0.element(i) * w0.element(j);
        CHECK(least_squares(span, w0.ambient->coordinates(prod)).residual < 1e-10);
      }
    }
  }

  SUBCASE("real su(2) ambient") {
    const std::vector<Matrix> gens = {t3};
    CHECK(centralizer(gens, Ambient::SpecialUnitary, 2).dim() == 1);
    const std::vector<Matrix> all = {t1, t2, t3};
    CHECK(centralizer(all, Ambient::SpecialUnitary, 2).dim() == 0);
  }
}

TEST_CASE("adjoint action") {
  const LieBasis& su2 = *su2_basis();
  const Matrix t1 = su2.element(0), t3 = su2.element(2);
  std::uint64_t state = 99;
  const Matrix x = random_su2_element(state);

  CHECK(max_abs(adjoint_action(Matrix::Identity(2, 2), x) - x) < 1e-14);

  // exp(pi T3) rotates by pi about the 3-axis in the adjoint representation
  const Matrix u = matrix_exp(M_PI * t3);
  CHECK(max_abs(adjoint_action(u, t1) + t1) < 1e-12);

  // automorphism property on random pairs
  const Matrix y = random_su2_element(state);
  CHECK(max_abs(adjoint_action(u, bracket(x, y)) -
                bracket(adjoint_action(u, x), adjoint_action(u, y))) < 1e-12);

  CHECK_THROWS_AS(adjoint_action(Matrix::Zero(2, 2), x), std::invalid_argument);
}

TEST_CASE("traceless part") {
  const LieBasis& su2 = *su2_basis();
  CHECK(max_abs(traceless_part(Matrix::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(traceless_part(su2.element(2)) - su2.element(2)) < 1e-15);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  CHECK(max_abs(traceless_part(diag) - expected) < 1e-15);
}

TEST_CASE("degenerate Killing form is rejected in reductive splits") {
  // On an abelian algebra every adjoint operator vanishes, so the Killing
  // form is identically zero and no orthogonal complement is defined.
  const LieBasisPtr su3 = su_basis(3);
  std::vector<Matrix> cartan = {su3->element(6), su3->element(7)};  // diagonal pair
  CHECK(max_abs(bracket(cartan[0], cartan[1])) < 1e-14);
  const LieBasisPtr abelian = std::make_shared<const LieBasis>(cartan, true);
  const std::vector<Matrix> first = {cartan[0]};
  CHECK_THROWS_AS(reductive_split(abelian, subspace_from_matrices(abelian, first)),
                  std::invalid_argument);
}

TEST_CASE("LieBasis construction rejects bad input") {
  const LieBasis& su2 = *su2_basis();
  std::vector<Matrix> dependent = {su2.element(0), 2.0 * su2.element(0)};
  CHECK_THROWS_AS(LieBasis(dependent, false), std::invalid_argument);
  std::vector<Matrix> not_antiherm = {Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(LieBasis(not_antiherm, true), std::invalid_argument);
  CHECK_THROWS_AS(su2.coordinates(Matrix::Identity(2, 2)), std::invalid_argument);
}
