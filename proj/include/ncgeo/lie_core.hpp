#ifndef NCGEO_LIE_CORE_HPP
#define NCGEO_LIE_CORE_HPP

#include <memory>
#include <span>
#include <vector>

#include "ncgeo/linalg.hpp"

namespace ncgeo {

/// Commutator [a, b] = ab - ba.
Matrix bracket(const Matrix& a, const Matrix& b);

/// gamma - (Tr gamma / n) 1.
Matrix traceless_part(const Matrix& gamma);

/// Ordered basis of a matrix Lie algebra together with its structure
/// constants and a coordinate solver. `real_span` marks a real form such as
/// su(n): elements must then be antihermitian and traceless, and structure
/// constants are real.
class LieBasis {
public:
  LieBasis(std::vector<Matrix> elements, bool real_span);

  int dim() const { return static_cast<int>(elements_.size()); }
  int n() const { return n_; }
  bool real_span() const { return real_span_; }
  const Matrix& element(int a) const { return elements_[a]; }
  const std::vector<Matrix>& elements() const { return elements_; }

  /// Coefficients of x in this basis; throws std::invalid_argument when the
  /// expansion residual exceeds `span_tol` (relative to ||x||).
  Vector coordinates(const Matrix& x, double span_tol = 1e-8) const;

  Matrix from_coordinates(const Vector& c) const;

  /// Matrix of ad_{e_a} in basis coordinates; column b holds the structure
  /// constants of [e_a, e_b].
  const Matrix& adjoint_op(int a) const { return adjoint_ops_[a]; }

private:
  std::vector<Matrix> elements_;
  int n_ = 0;
  bool real_span_ = false;
  Matrix flat_;  // n^2 x dim, column a = vec(e_a)
  Eigen::CompleteOrthogonalDecomposition<Matrix> solver_;
  std::vector<Matrix> adjoint_ops_;
};

using LieBasisPtr = std::shared_ptr<const LieBasis>;

/// Antihermitian traceless generators T_a = -(i/2) * (generalized Gell-Mann),
/// normalized so Tr(T_a T_b) = -delta_ab / 2. Cached per n.
LieBasisPtr su_basis(int n);

/// su_basis(2): {T1, T2, T3} with [T1,T2]=T3, [T2,T3]=T1, [T3,T1]=T2.
LieBasisPtr su2_basis();

/// Same generators as su_basis(n) but with complex span, i.e. sl(n, C).
LieBasisPtr sl_basis(int n);

/// su(n) generators plus the identity: spans M_n over C.
LieBasisPtr gl_basis(int n);

struct LieSubspace {
  LieBasisPtr ambient;
  std::vector<Vector> basis_vectors;  // linearly independent coefficient vectors

  int dim() const { return static_cast<int>(basis_vectors.size()); }
  Matrix element(int i) const { return ambient->from_coordinates(basis_vectors[i]); }
};

LieSubspace full_subspace(const LieBasisPtr& basis);
LieSubspace subspace_from_matrices(const LieBasisPtr& ambient, std::span<const Matrix> mats);

/// Tr(ad_X ad_Y) computed in the adjoint representation of `basis`.
Complex killing_form(const Matrix& x, const Matrix& y, const LieBasis& basis);

struct ReductiveSplit {
  LieSubspace subalgebra;
  LieSubspace complement;   // Killing-orthogonal complement
  bool reductive = false;   // [h, l] contained in l
  double closure_residual = 0.0;
};

/// Splits g = h (+) l with l the Killing-orthogonal complement of h.
/// Throws when h is not a subalgebra or the Killing form degenerates on h.
ReductiveSplit reductive_split(const LieBasisPtr& g, const LieSubspace& h,
                               double closure_tol = 1e-10);

enum class Ambient { FullMatrixAlgebra, SpecialLinear, SpecialUnitary };

/// Basis of {Z in ambient : [Z, g_i] = 0 for all i}. The su(n) ambient is
/// solved as a real-linear problem, M_n and sl_n as complex-linear ones.
/// An empty generator list returns the full ambient.
LieSubspace centralizer(std::span<const Matrix> generators, Ambient ambient, int n);

/// Ad_h X = h X h^{-1}; throws for singular h.
Matrix adjoint_action(const Matrix& h, const Matrix& x);

}  // namespace ncgeo

#endif
