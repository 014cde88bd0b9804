#ifndef NCGEO_CLASSIFIER_HPP
#define NCGEO_CLASSIFIER_HPP

#include <optional>
#include <vector>

#include "ncgeo/lie_core.hpp"

namespace ncgeo {

/// Lie algebra homomorphism given by generator images in M_n.
struct LieRep {
  LieBasisPtr domain;          // basis of the acting algebra
  std::vector<Matrix> images;  // images[a] = lambda(domain element a)
  int n = 0;

  /// Max norm of [L_a, L_b] - sum_c c_ab^c L_c over generator pairs.
  double homomorphism_defect() const;
};

/// Block-diagonal su(2) representation attached to a partition of n; the
/// k-dimensional block carries spin (k-1)/2 in the ladder construction, with
/// antihermitian images matching the T_a conventions.
LieRep partition_rep(int n, const std::vector<int>& partition);

/// Antihermitian spin-j generators of dimension k = 2j+1, satisfying the same
/// bracket table as {T1, T2, T3}.
std::vector<Matrix> spin_block(int k);

/// Matrices of ad_{lambda(X_a)} acting on sl_n coordinates.
std::vector<Matrix> induced_adjoint(const LieRep& rep);

/// Same operators acting on all of M_n (gl basis coordinates).
std::vector<Matrix> induced_adjoint_full(const LieRep& rep);

/// dim { T : T rho_a = rho_a T for all a }, exact integer from guarded
/// singular-value thresholding. Throws AmbiguousRankError when unstable.
int commutant_dimension(std::span<const Matrix> operators, double rel_tol = kRankRelTol);

/// Quadratic Casimir -sum_a rho_a^2; eigenvalue j(j+1) on a spin-j block.
Matrix su2_casimir(std::span<const Matrix> operators);

struct IsotypicDecomposition {
  std::vector<std::pair<int, int>> blocks;  // (irrep dimension, multiplicity), dim descending
  int total_dim = 0;

  int multiplicity(int dim) const;
};

/// Isotypic decomposition under su(2) from the Casimir spectrum; requires the
/// three operators to satisfy the su(2) bracket table. The multiplicities are
/// cross-checked against the commutant dimension.
IsotypicDecomposition su2_isotypic(std::span<const Matrix> operators,
                                   double cluster_tol = 1e-6);

/// Affine-linear constraint sum_i combo_i Lambda(slot_i) = value.
struct LinearPin {
  Vector combo;
  Matrix value;
};

/// Linear solve for maps Lambda from a d-dimensional domain into M_n obeying
/// [targets_g, Lambda(Y_i)] = sum_j (domain_ops_g)_{ji} Lambda(Y_j) plus
/// optional traceless and pin constraints.
struct IntertwinerProblem {
  int n = 0;
  int domain_dim = 0;  // number of map slots d
  std::vector<Matrix> targets;
  std::vector<Matrix> domain_ops;  // d x d action of each generator on the domain
  bool traceless = false;
  std::vector<LinearPin> pins;
};

struct EquivariantSolutionSpace {
  int dimension = 0;
  std::vector<std::vector<Matrix>> basis;  // basis[k][slot]
  std::vector<Matrix> particular;          // zero maps when no pins are given
  double max_residual = 0.0;
};

EquivariantSolutionSpace solve_intertwiner(const IntertwinerProblem& problem,
                                           double rel_tol = kRankRelTol);

enum class DomainSide { Symmetry, Gauge };

/// Solution space of the equivariance constraints for a map defined on a
/// subspace of the symmetry algebra (Symmetry side, generators act by their
/// own ad) or of the gauge algebra (Gauge side, generators act through their
/// images). Horizontality pins shift the solution set to an affine space.
EquivariantSolutionSpace equivariant_solution_space(const LieRep& rep,
                                                    const LieSubspace& domain,
                                                    DomainSide side, bool traceless,
                                                    const std::vector<LinearPin>& pins = {});

struct ClassificationReport {
  int n = 0;
  std::vector<int> partition;  // empty when built from an explicit rep
  int w0_dim = 0;
  std::vector<Matrix> w0_basis;
  int z0_dim = 0;  // real dimension of the centralizer in su(n)
  std::optional<IsotypicDecomposition> isotypic;
  int scalar_field_count = 0;
  bool traceless = true;
};

ClassificationReport classify(const LieRep& rep, bool traceless = true);
ClassificationReport classify_partition(int n, const std::vector<int>& partition,
                                        bool traceless = true);

}  // namespace ncgeo

#endif
