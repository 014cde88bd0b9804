#ifndef NCGEO_SPHERICAL_HPP
#define NCGEO_SPHERICAL_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ncgeo/nc_forms.hpp"

namespace ncgeo {

/// Real function of (t, r). Partial derivatives use supplied analytic forms
/// when available, otherwise central differences with one Richardson step.
class ScalarField {
public:
  using Fn = std::function<double(double, double)>;

  ScalarField() : ScalarField(0.0) {}
  ScalarField(double constant);
  explicit ScalarField(Fn value);
  ScalarField(Fn value, Fn dt, Fn dr);

  double operator()(double t, double r) const { return value_(t, r); }
  double d_t(double t, double r) const;
  double d_r(double t, double r) const;
  bool analytic() const { return analytic_; }

private:
  Fn value_;
  Fn dt_, dr_;
  bool analytic_ = false;
};

struct ComplexField {
  ScalarField re, im;
  Complex operator()(double t, double r) const { return {re(t, r), im(t, r)}; }
};

/// Reduced field content of the spherically symmetric ansatz on
/// M/G = R x R+*:  a = a_t dt + a_r dr,  psi = -Lambda_2 + i Lambda_1,
/// phi = phi_1 + i phi_2, and the monopole scalar eta.
struct AnsatzFields {
  ScalarField a_t, a_r;
  ComplexField psi;
  ComplexField phi;
  ScalarField eta;

  /// phi = 1, eta = 1: the limit in which the ansatz reduces to the
  /// classical (Witten) one, with a flat embedded connection when psi = a = 0.
  static AnsatzFields witten_limit();
};

struct SamplePoint {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
  double r() const;
  Eigen::Vector3d nhat() const;  // x/r; throws when r == 0
};

/// Local noncommutative 1-form for n = 2: spacetime components A_mu^a on
/// dx^mu (x) T_a plus algebraic components phi^a_b, stored with the sign
/// convention  omega_loc = A_mu^a T_a dx^mu - phi^a_b T_a theta^b.
struct LocalNCOneForm {
  std::vector<std::string> coords;         // chart labels
  std::vector<Eigen::Vector3d> spacetime;  // per chart coord, coefficients on T_a
  Eigen::Matrix3d algebraic = Eigen::Matrix3d::Zero();

  Matrix spacetime_matrix(int mu) const;  // sum_a A_mu^a T_a
  Matrix algebraic_matrix(int b) const;   // value on ad_{T_b}: -sum_a phi^a_b T_a
  NCForm algebraic_form() const;          // the same data as a degree-1 NCForm
};

double form_distance(const LocalNCOneForm& a, const LocalNCOneForm& b);

/// Euclidean components of the ansatz in the radial (regular) gauge.
LocalNCOneForm radial_gauge_form(const AnsatzFields& fields, const SamplePoint& p);

/// Spherical-chart components in the singular gauge; theta must stay inside
/// (delta, pi - delta) with delta = 1e-6. This chart's polar-axis convention
/// differs from the radial gauge's by a constant quarter turn about T3, so
/// transporting it with e^{-theta T2} e^{-phi T3} lands on the radial form of
/// the quarter-turned fields (psi -> -i psi, everything else fixed).
LocalNCOneForm singular_gauge_form(const AnsatzFields& fields, double t, double r,
                                   double theta, double phi_angle);

/// Pulls the Euclidean (t,x,y,z) components back to the (t,r,theta,phi) chart.
LocalNCOneForm to_spherical_chart(const LocalNCOneForm& euclidean, double r, double theta,
                                  double phi_angle);

/// Passive U(1) gauge transformation: psi -> e^{i(chi1+chi0)} psi,
/// a -> a - eta d(chi1+chi0); phi and eta unchanged.
AnsatzFields passive_gauge_transform(const AnsatzFields& fields, const ScalarField& chi0,
                                     const ScalarField& chi1);

/// Symmetric gauge transformation by e^{chi T3} acting on phi' = 1 - phi:
/// phi' -> e^{-i chi} phi', psi -> e^{-i chi} psi, a -> a + d chi.
AnsatzFields symmetric_gauge_transform(const AnsatzFields& fields, const ScalarField& chi);

Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& axis, double angle);

/// SU(2) element with Ad_u realizing the given rotation (sign-ambiguous).
Matrix su2_lift(const Eigen::Matrix3d& rotation);

/// Matrix of Ad_u on su(2) in the T_a basis.
Eigen::Matrix3d adjoint_so3(const Matrix& u);

/// Norm of the difference between the radial form at the rotated point (with
/// rotated form indices) and Ad_{u(R)} of the radial form at the original
/// point. Zero for an exactly covariant construction.
double rotation_invariance_defect(const AnsatzFields& fields,
                                  const Eigen::Matrix3d& rotation, const SamplePoint& p);

/// Map from chart points to SU(2); partial derivatives are analytic when
/// supplied, finite differences otherwise.
class GaugeFunction {
public:
  using Point = std::vector<double>;
  using Fn = std::function<Matrix(const Point&)>;
  using AngleFn = std::function<double(const Point&)>;

  explicit GaugeFunction(Fn value);
  GaugeFunction(Fn value, std::vector<Fn> partials);

  Matrix operator()(const Point& x) const { return value_(x); }
  Matrix partial(int k, const Point& x) const;
  Matrix maurer_cartan(int k, const Point& x) const;  // g^{-1} d_k g

  static GaugeFunction product(const GaugeFunction& f, const GaugeFunction& g);
  static GaugeFunction axis_exponential(const Matrix& axis, AngleFn angle,
                                        std::vector<AngleFn> angle_partials = {});

private:
  Fn value_;
  std::vector<Fn> partials_;
  bool analytic_ = false;
};

/// Transition of the local form under a change of section s' = s g:
///   a'   = Ad_{g^{-1}} a - Ad_{g^{-1}} phi Ad_g (g^{-1}dg)
///   phi' = Ad_{g^{-1}} phi Ad_g
/// stated for phi in the a + phi o itheta convention; the stored algebraic
/// block carries the opposite sign, which flips the inhomogeneous term.
LocalNCOneForm local_transition(const LocalNCOneForm& form, const GaugeFunction& g,
                                const GaugeFunction::Point& point);

/// Pointwise symmetric gauge transform of a local form by U = e^{chi T3}:
/// spacetime components pick up Ad_{U*} plus dchi T3, the algebraic block is
/// pushed through the noncommutative gauge transformation of its 1-form.
LocalNCOneForm su_c_gauge_transform_local(const LocalNCOneForm& form, double chi,
                                          const std::vector<double>& dchi);

/// Linear map su(2) -> M_2 given by the images of T_1, T_2, T_3.
struct Su2LinearMap {
  std::array<Matrix, 3> images;

  Matrix apply(const Matrix& x) const;

  static Su2LinearMap lambda_of(const AnsatzFields& fields, double t, double r);
  static Su2LinearMap phi_of(const AnsatzFields& fields, double t, double r);
};

/// Max violation of the isotropy equivariance [T3, m(Y)] = m([T3, Y]) over
/// the su(2) generators.
double intertwiner_equivariance_defect(const Su2LinearMap& map);

/// Max violation of the shared-scalar condition Lambda(T3) = phi(T3).
double horizontality_pin_defect(const Su2LinearMap& lambda_map, const Su2LinearMap& phi_map);

/// One evaluation of the generic invariant-connection form
///   Ad_{h^{-1}} ( omega_tilde + Lambda(theta^G) + phi(Ad_h(theta^H - itheta)) )
/// on tangent data supplied as algebra elements.
Matrix decomposition_value(const Matrix& omega_tilde_value, const Su2LinearMap& lambda_map,
                           const Su2LinearMap& phi_map, const Matrix& g_tangent,
                           const Matrix& h, const Matrix& h_tangent, const Matrix& xi);

/// Local form of the generic decomposition along the radial-gauge section
/// (t, r, theta, phi) -> (s(t, r), e^{phi T3} e^{theta T2}, e^{-theta T2} e^{-phi T3}),
/// expressed in the spherical chart.
LocalNCOneForm decomposition_local_form(const AnsatzFields& fields, double t, double r,
                                        double theta, double phi_angle);

}  // namespace ncgeo

#endif
