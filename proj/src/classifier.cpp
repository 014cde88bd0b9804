#include "ncgeo/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ncgeo {

namespace {

constexpr double kHomomorphismTol = 1e-10;

std::vector<Matrix> induced_on(const LieRep& rep, const LieBasisPtr& space) {
  std::vector<Matrix> ops;
  ops.reserve(rep.images.size());
  for (const Matrix& image : rep.images) {
    Matrix op(space->dim(), space->dim());
    for (int b = 0; b < space->dim(); ++b)
      op.col(b) = space->coordinates(bracket(image, space->element(b)));
    ops.push_back(std::move(op));
  }
  return ops;
}

bool satisfies_su2_brackets(std::span<const Matrix> ops, double tol) {
  if (ops.size() != 3) return false;
  const LieBasis& su2 = *su2_basis();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Matrix expected = Matrix::Zero(ops[0].rows(), ops[0].cols());
      const Vector f = su2.adjoint_op(a).col(b);
      for (int c = 0; c < 3; ++c) expected += f(c) * ops[c];
      if (max_abs(bracket(ops[a], ops[b]) - expected) > tol) return false;
    }
  }
  return true;
}

}  // namespace

double LieRep::homomorphism_defect() const {
  double defect = 0.0;
  for (int a = 0; a < domain->dim(); ++a) {
    for (int b = 0; b < domain->dim(); ++b) {
      Matrix expected = Matrix::Zero(n, n);
      const Vector f = domain->adjoint_op(a).col(b);
      for (int c = 0; c < domain->dim(); ++c) expected += f(c) * images[c];
      defect = std::max(defect, max_abs(bracket(images[a], images[b]) - expected));
    }
  }
  return defect;
}

std::vector<Matrix> spin_block(int k) {
  if (k < 1) throw std::invalid_argument("spin_block: dimension must be positive");
  const double j = (k - 1) / 2.0;
  Matrix j3 = Matrix::Zero(k, k);
  Matrix jplus = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) j3(i, i) = j - i;
  for (int i = 1; i < k; ++i) {
    const double m = j - i;  // J+ |j,m> = sqrt((j-m)(j+m+1)) |j,m+1>
    jplus(i - 1, i) = std::sqrt((j - m) * (j + m + 1.0));
  }
  const Matrix jminus = jplus.adjoint();
  const Complex I(0.0, 1.0);
  const Matrix j1 = 0.5 * (jplus + jminus);
  const Matrix j2 = (jplus - jminus) / (2.0 * I);
  return {-I * j1, -I * j2, -I * j3};
}

LieRep partition_rep(int n, const std::vector<int>& partition) {
  int total = 0;
  for (int part : partition) {
    if (part < 1) throw std::invalid_argument("partition_rep: parts must be positive");
    total += part;
  }
  if (total != n) throw std::invalid_argument("partition_rep: parts must sum to n");

  LieRep rep;
  rep.domain = su2_basis();
  rep.n = n;
  rep.images.assign(3, Matrix::Zero(n, n));
  int offset = 0;
  for (int part : partition) {
    const std::vector<Matrix> block = spin_block(part);
    for (int a = 0; a < 3; ++a)
      rep.images[a].block(offset, offset, part, part) = block[a];
    offset += part;
  }
  if (rep.homomorphism_defect() > kHomomorphismTol)
    throw std::runtime_error("partition_rep: homomorphism check failed");
  return rep;
}

std::vector<Matrix> induced_adjoint(const LieRep& rep) {
  return induced_on(rep, sl_basis(rep.n));
}

std::vector<Matrix> induced_adjoint_full(const LieRep& rep) {
  return induced_on(rep, gl_basis(rep.n));
}

int commutant_dimension(std::span<const Matrix> operators, double rel_tol) {
  if (operators.empty()) throw std::invalid_argument("commutant_dimension: no operators");
  const Eigen::Index dim = operators[0].rows();
  Matrix stacked(static_cast<Eigen::Index>(operators.size()) * dim * dim, dim * dim);
  Eigen::Index row = 0;
  for (const Matrix& op : operators) {
    stacked.middleRows(row, dim * dim) = commutator_operator(op);
    row += dim * dim;
  }
  return nullspace_dimension(stacked, rel_tol, /*guard=*/true);
}

Matrix su2_casimir(std::span<const Matrix> operators) {
  if (operators.size() != 3) throw std::invalid_argument("su2_casimir: need 3 operators");
  Matrix c = Matrix::Zero(operators[0].rows(), operators[0].cols());
  for (const Matrix& op : operators) c -= op * op;
  return c;
}

int IsotypicDecomposition::multiplicity(int dim) const {
  for (const auto& [d, m] : blocks)
    if (d == dim) return m;
  return 0;
}

IsotypicDecomposition su2_isotypic(std::span<const Matrix> operators, double cluster_tol) {
  if (!satisfies_su2_brackets(operators, 1e-8))
    throw std::invalid_argument("su2_isotypic: operators do not satisfy su(2) brackets");
  const Matrix casimir = su2_casimir(operators);
  if (max_abs(casimir - dagger(casimir)) > 1e-8 * (1.0 + max_abs(casimir)))
    throw std::runtime_error("su2_isotypic: Casimir is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (casimir + dagger(casimir)));

  // Cluster eigenvalues on the j(j+1) grid over half-integers.
  std::map<int, int> counts;  // key = 2j
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    const double j_est = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * ev)));
    const int two_j = std::max(0, static_cast<int>(std::lround(2.0 * j_est)));
    const double j = two_j / 2.0;
    if (std::abs(ev - j * (j + 1.0)) > cluster_tol)
      throw std::runtime_error("su2_isotypic: Casimir eigenvalue " + std::to_string(ev) +
                               " is not near the j(j+1) grid");
    counts[two_j] += 1;
  }

  IsotypicDecomposition out;
  out.total_dim = static_cast<int>(operators[0].rows());
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    const int dim = it->first + 1;  // 2j + 1
    if (it->second % dim != 0)
      throw std::runtime_error("su2_isotypic: eigenspace dimension not divisible by 2j+1");
    out.blocks.emplace_back(dim, it->second / dim);
  }

  int check_total = 0;
  int sum_sq = 0;
  for (const auto& [dim, mult] : out.blocks) {
    check_total += dim * mult;
    sum_sq += mult * mult;
  }
  if (check_total != out.total_dim)
    throw std::runtime_error("su2_isotypic: block dimensions do not sum to the space");
  if (sum_sq != commutant_dimension(operators))
    throw std::runtime_error(
        "su2_isotypic: sum of squared multiplicities disagrees with the commutant");
  return out;
}

EquivariantSolutionSpace solve_intertwiner(const IntertwinerProblem& problem,
                                           double rel_tol) {
  const int n = problem.n;
  const int n2 = n * n;
  const int d = problem.domain_dim;
  if (problem.targets.size() != problem.domain_ops.size())
    throw std::invalid_argument("solve_intertwiner: generator count mismatch");
  if (d <= 0) throw std::invalid_argument("solve_intertwiner: empty domain");
  for (const Matrix& op : problem.domain_ops)
    if (op.rows() != d || op.cols() != d)
      throw std::invalid_argument("solve_intertwiner: domain op size mismatch");

  const Eigen::Index unknowns = static_cast<Eigen::Index>(d) * n2;
  Eigen::Index rows = static_cast<Eigen::Index>(problem.targets.size()) * unknowns;
  if (problem.traceless) rows += d;
  rows += static_cast<Eigen::Index>(problem.pins.size()) * n2;

  Matrix a = Matrix::Zero(rows, unknowns);
  Vector b = Vector::Zero(rows);
  Eigen::Index row = 0;

  const Matrix id_d = Matrix::Identity(d, d);
  const Matrix id_n2 = Matrix::Identity(n2, n2);
  for (size_t g = 0; g < problem.targets.size(); ++g) {
    a.middleRows(row, unknowns) = kron(id_d, commutator_operator(problem.targets[g])) -
                                  kron(problem.domain_ops[g].transpose(), id_n2);
    row += unknowns;
  }
  if (problem.traceless) {
    for (int slot = 0; slot < d; ++slot) {
      for (int k = 0; k < n; ++k) a(row, slot * n2 + k * n + k) = 1.0;
      ++row;
    }
  }
  for (const LinearPin& pin : problem.pins) {
    if (pin.combo.size() != d)
      throw std::invalid_argument("solve_intertwiner: pin combo size mismatch");
    for (int slot = 0; slot < d; ++slot)
      a.block(row, slot * n2, n2, n2) = pin.combo(slot) * id_n2;
    b.segment(row, n2) = vec(pin.value);
    row += n2;
  }

  EquivariantSolutionSpace out;
  const NullspaceResult ns = nullspace(a, rel_tol, /*guard=*/true);
  out.dimension = static_cast<int>(ns.basis.cols());

  Vector particular = Vector::Zero(unknowns);
  if (b.norm() > 0.0) {
    const LeastSquaresResult ls = least_squares(a, b);
    if (ls.residual > 1e-9 * std::max(1.0, b.norm()))
      throw InconsistentConstraints("solve_intertwiner: pins admit no solution",
                                    ls.residual);
    particular = ls.solution;
  }

  auto unpack = [&](const Vector& u) {
    std::vector<Matrix> slots;
    slots.reserve(d);
    for (int slot = 0; slot < d; ++slot)
      slots.push_back(unvec(u.segment(slot * n2, n2), n, n));
    return slots;
  };
  out.particular = unpack(particular);
  for (Eigen::Index c = 0; c < ns.basis.cols(); ++c)
    out.basis.push_back(unpack(ns.basis.col(c)));

  out.max_residual = (a * particular - b).cwiseAbs().maxCoeff();
  for (Eigen::Index c = 0; c < ns.basis.cols(); ++c)
    out.max_residual =
        std::max(out.max_residual, (a * Vector(ns.basis.col(c))).cwiseAbs().maxCoeff());
  return out;
}

EquivariantSolutionSpace equivariant_solution_space(const LieRep& rep,
                                                    const LieSubspace& domain,
                                                    DomainSide side, bool traceless,
                                                    const std::vector<LinearPin>& pins) {
  if (rep.homomorphism_defect() > kHomomorphismTol)
    throw std::invalid_argument("equivariant_solution_space: rep is not a homomorphism");
  const int d = domain.dim();
  IntertwinerProblem problem;
  problem.n = rep.n;
  problem.domain_dim = d;
  problem.traceless = traceless;
  problem.pins = pins;

  for (int g = 0; g < rep.domain->dim(); ++g) {
    const Matrix actor =
        side == DomainSide::Symmetry ? rep.domain->element(g) : rep.images[g];
    Matrix dom_op(d, d);
    Matrix span(domain.ambient->dim(), d);
    for (int i = 0; i < d; ++i) span.col(i) = domain.basis_vectors[i];
    for (int i = 0; i < d; ++i) {
      const Vector br =
          domain.ambient->coordinates(bracket(actor, domain.element(i)));
      const LeastSquaresResult ls = least_squares(span, br);
      if (ls.residual > 1e-9 * std::max(1.0, br.norm()))
        throw std::invalid_argument(
            "equivariant_solution_space: domain is not invariant under the action");
      dom_op.col(i) = ls.solution;
    }
    problem.targets.push_back(rep.images[g]);
    problem.domain_ops.push_back(std::move(dom_op));
  }
  return solve_intertwiner(problem);
}

ClassificationReport classify(const LieRep& rep, bool traceless) {
  if (rep.homomorphism_defect() > kHomomorphismTol)
    throw std::invalid_argument("classify: rep is not a homomorphism");
  ClassificationReport out;
  out.n = rep.n;
  out.traceless = traceless;

  const LieSubspace w0 =
      centralizer(rep.images, Ambient::FullMatrixAlgebra, rep.n);
  out.w0_dim = w0.dim();
  for (int i = 0; i < w0.dim(); ++i) out.w0_basis.push_back(w0.element(i));

  out.z0_dim = centralizer(rep.images, Ambient::SpecialUnitary, rep.n).dim();

  const std::vector<Matrix> ops =
      traceless ? induced_adjoint(rep) : induced_adjoint_full(rep);
  out.scalar_field_count = commutant_dimension(ops);
  if (satisfies_su2_brackets(ops, 1e-8)) out.isotypic = su2_isotypic(ops);
  return out;
}

ClassificationReport classify_partition(int n, const std::vector<int>& partition,
                                        bool traceless) {
  ClassificationReport out = classify(partition_rep(n, partition), traceless);
  out.partition = partition;
  return out;
}

}  // namespace ncgeo
