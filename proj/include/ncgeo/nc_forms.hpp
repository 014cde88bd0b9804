#ifndef NCGEO_NC_FORMS_HPP
#define NCGEO_NC_FORMS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ncgeo/lie_core.hpp"

namespace ncgeo {

/// ad_gamma with gamma projected on its traceless part at construction.
class InnerDerivation {
public:
  explicit InnerDerivation(const Matrix& gamma) : generator_(traceless_part(gamma)) {}
  const Matrix& generator() const { return generator_; }

private:
  Matrix generator_;
};

/// Degree-p antisymmetric multilinear map from derivations of M_n to M_n,
/// stored densely on strictly increasing tuples of sl_n basis indices.
/// Other index orders are reconstructed through the permutation sign.
class NCForm {
public:
  NCForm(int n, int degree);

  static NCForm random(int n, int degree, std::uint64_t& state);

  int n() const { return n_; }
  int degree() const { return degree_; }
  /// Dimension of the derivation space, n^2 - 1.
  int derivation_dim() const { return basis_->dim(); }
  int num_components() const { return static_cast<int>(coeffs_.size()); }

  const Matrix& component(int flat) const { return coeffs_[flat]; }
  Matrix& component(int flat) { return coeffs_[flat]; }
  std::vector<int> component_tuple(int flat) const;

  /// Value on basis derivations ad_{T_{indices[0]}}, ...; indices need not be
  /// increasing, repeated indices give zero.
  Matrix value_on_basis(std::span<const int> indices) const;

  /// Value on the inner derivations generated by the given matrices.
  Matrix evaluate(std::span<const Matrix> generators) const;

  const LieBasis& derivation_basis() const { return *basis_; }

  NCForm& operator+=(const NCForm& other);
  NCForm& operator-=(const NCForm& other);
  NCForm& operator*=(const Complex& scalar);

private:
  int n_ = 0;
  int degree_ = 0;
  LieBasisPtr basis_;
  std::vector<Matrix> coeffs_;
};

NCForm operator+(NCForm a, const NCForm& b);
NCForm operator-(NCForm a, const NCForm& b);
NCForm operator*(const Complex& s, NCForm a);

/// Largest coefficient entry in absolute value.
double max_coeff(const NCForm& a);
double distance(const NCForm& a, const NCForm& b);

/// Graded product with the shuffle convention: for two 1-forms
/// (ab)(X, Y) = a(X) b(Y) - a(Y) b(X).
NCForm wedge(const NCForm& a, const NCForm& b);

/// Koszul differential specialized to inner derivations.
NCForm d_prime(const NCForm& a);

/// Interior product; zero on degree 0.
NCForm interior(const InnerDerivation& x, const NCForm& a);

/// L_X = i_X d' + d' i_X.
NCForm lie_derivative(const InnerDerivation& x, const NCForm& a);

/// The canonical 1-form i\theta, sending ad_gamma to the traceless part of
/// gamma. Satisfies d'(i\theta) = (i\theta)^2.
NCForm canonical_theta(int n);

struct ConnectionForm {
  NCForm omega;  // degree 1
};

/// F(X, Y) = d'omega(X, Y) + [omega(X), omega(Y)].
NCForm curvature(const ConnectionForm& conn);

/// omega -> U* omega U + U* d'U; throws for non-unitary U.
ConnectionForm gauge_transform(const ConnectionForm& conn, const Matrix& u,
                               double unitary_tol = 1e-8);

struct HermiticityCheck {
  bool antihermitian = false;
  double defect = 0.0;  // max norm of omega(X)* + omega(X) over real derivations
};

HermiticityCheck is_antihermitian_connection(const ConnectionForm& conn, double tol = 1e-10);

/// Max entry norm of L_Y omega; zero means the form is Y-invariant.
double invariance_defect(const NCForm& omega, const InnerDerivation& y);

}  // namespace ncgeo

#endif
