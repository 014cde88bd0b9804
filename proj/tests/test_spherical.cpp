#include <doctest.h>

#include <cmath>

#include "ncgeo/spherical.hpp"

using namespace ncgeo;

namespace {

// Sample field set with nonconstant, analytically differentiable entries.
AnsatzFields sample_fields() {
  AnsatzFields f;
  f.a_t = ScalarField([](double t, double r) { return 0.3 * t + 0.1 * r; },
                      [](double, double) { return 0.3; },
                      [](double, double) { return 0.1; });
  f.a_r = ScalarField([](double t, double r) { return 0.2 * std::sin(t) + 0.4 / r; },
                      [](double t, double) { return 0.2 * std::cos(t); },
                      [](double, double r) { return -0.4 / (r * r); });
  f.psi.re = ScalarField([](double t, double r) { return 0.7 + 0.2 * t * r; },
                         [](double, double r) { return 0.2 * r; },
                         [](double t, double) { return 0.2 * t; });
  f.psi.im = ScalarField([](double, double r) { return 0.1 * r; },
                         [](double, double) { return 0.0; },
                         [](double, double) { return 0.1; });
  f.phi.re = ScalarField([](double t, double r) { return 0.9 - 0.05 * r * r + 0.02 * t; },
                         [](double, double) { return 0.02; },
                         [](double, double r) { return -0.1 * r; });
  f.phi.im = ScalarField([](double t, double r) { return 0.3 * std::cos(t) / r; },
                         [](double t, double r) { return -0.3 * std::sin(t) / r; },
                         [](double t, double r) { return -0.3 * std::cos(t) / (r * r); });
  f.eta = ScalarField([](double t, double r) { return 1.1 + 0.2 * std::sin(r) - 0.1 * t; },
                      [](double, double) { return -0.1; },
                      [](double, double r) { return 0.2 * std::cos(r); });
  return f;
}

SamplePoint point_from_spherical(double t, double r, double theta, double phi) {
  SamplePoint p;
  p.t = t;
  p.x = r * std::sin(theta) * std::cos(phi);
  p.y = r * std::sin(theta) * std::sin(phi);
  p.z = r * std::cos(theta);
  return p;
}

const Matrix& t_gen(int a) { return su2_basis()->element(a); }

// constant quarter-turn passive rotation: psi -> -i psi, everything else fixed
AnsatzFields quarter_turned(const AnsatzFields& fields) {
  return passive_gauge_transform(fields, ScalarField(-M_PI / 2.0), ScalarField(0.0));
}

GaugeFunction radial_section_gauge() {
  // h'(theta, phi) = e^{-theta T2} e^{-phi T3} over the (t,r,theta,phi) chart
  auto angle = [](int k, double sign) {
    return [k, sign](const GaugeFunction::Point& x) { return sign * x[k]; };
  };
  auto parts = [](int k, double sign) {
    std::vector<GaugeFunction::AngleFn> out;
    for (int m = 0; m < 4; ++m)
      out.push_back([k, m, sign](const GaugeFunction::Point&) {
        return m == k ? sign : 0.0;
      });
    return out;
  };
  return GaugeFunction::product(
      GaugeFunction::axis_exponential(t_gen(1), angle(2, -1.0), parts(2, -1.0)),
      GaugeFunction::axis_exponential(t_gen(2), angle(3, -1.0), parts(3, -1.0)));
}

}  // namespace

TEST_CASE("scalar fields differentiate correctly") {
  const ScalarField analytic([](double t, double r) { return t * t * r; },
                             [](double t, double r) { return 2.0 * t * r; },
                             [](double t, double) { return t * t; });
  CHECK(analytic.d_t(1.5, 2.0) == doctest::Approx(6.0));
  const ScalarField numeric([](double t, double r) { return std::sin(t) * std::exp(-r); });
  CHECK(numeric.d_t(0.7, 1.1) ==
        doctest::Approx(std::cos(0.7) * std::exp(-1.1)).epsilon(1e-10));
  CHECK(numeric.d_r(0.7, 1.1) ==
        doctest::Approx(-std::sin(0.7) * std::exp(-1.1)).epsilon(1e-10));
}

TEST_CASE("radial gauge form") {
  SUBCASE("ordinary limit: the algebraic block is the identity") {
    const AnsatzFields witten = AnsatzFields::witten_limit();
    const SamplePoint p = point_from_spherical(0.3, 1.7, 1.1, 0.4);
    const LocalNCOneForm form = radial_gauge_form(witten, p);
    CHECK((form.algebraic - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    // and the algebraic 1-form is exactly -itheta
    CHECK(distance(form.algebraic_form(), Complex(-1.0) * canonical_theta(2)) < 1e-12);
    // the spatial part is the pure-gauge hedgehog A_i^a = -eps_{iac} n^c / r
    CHECK(form.spacetime[0].cwiseAbs().maxCoeff() < 1e-14);
    const Eigen::Vector3d n = p.nhat();
    auto eps = [](int i, int j, int k) {
      return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
    };
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < 3; ++a) {
        double expected = 0.0;
        for (int c = 0; c < 3; ++c) expected -= eps(i, a, c) * n(c) / p.r();
        CHECK(form.spacetime[i + 1](a) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  SUBCASE("all fields zero give the zero form") {
    AnsatzFields zero;
    zero.phi = {ScalarField(0.0), ScalarField(0.0)};
    zero.eta = ScalarField(0.0);
    const LocalNCOneForm form = radial_gauge_form(zero, point_from_spherical(0, 1, 1, 1));
    CHECK(form.algebraic.cwiseAbs().maxCoeff() == 0.0);
    for (int mu = 0; mu < 4; ++mu) CHECK(form.spacetime[mu].cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("components on the z-axis") {
    const AnsatzFields f = sample_fields();
    SamplePoint p;
    p.t = 0.4;
    p.z = 1.3;
    const LocalNCOneForm form = radial_gauge_form(f, p);
    const Complex phi = f.phi(0.4, 1.3);
    const double eta = f.eta(0.4, 1.3);
    CHECK(form.algebraic(2, 2) == doctest::Approx(eta).epsilon(1e-12));
    CHECK(form.algebraic(0, 0) == doctest::Approx(phi.real()).epsilon(1e-12));
    CHECK(form.algebraic(1, 1) == doctest::Approx(phi.real()).epsilon(1e-12));
    CHECK(form.algebraic(0, 1) == doctest::Approx(-phi.imag()).epsilon(1e-12));
    CHECK(form.algebraic(1, 0) == doctest::Approx(phi.imag()).epsilon(1e-12));
  }
  SUBCASE("r = 0 is rejected") {
    SamplePoint origin;
    CHECK_THROWS_AS(radial_gauge_form(sample_fields(), origin), std::invalid_argument);
  }
}

TEST_CASE("singular gauge form") {
  const AnsatzFields f = sample_fields();
  SUBCASE("Witten limit reduces the algebraic part to -itheta components") {
    const LocalNCOneForm form =
        singular_gauge_form(AnsatzFields::witten_limit(), 0.0, 1.0, 1.2, 0.3);
    CHECK((form.algebraic - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(distance(form.algebraic_form(), Complex(-1.0) * canonical_theta(2)) < 1e-14);
  }
  SUBCASE("monopole coefficient vanishes on the equator") {
    const LocalNCOneForm form = singular_gauge_form(f, 0.1, 1.0, M_PI / 2.0, 0.7);
    CHECK(std::abs(form.spacetime[3](2)) < 1e-14);
  }
  SUBCASE("chart singularities are guarded") {
    CHECK_THROWS_AS(singular_gauge_form(f, 0, 1, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(singular_gauge_form(f, 0, 1, M_PI, 0), std::invalid_argument);
  }
}

TEST_CASE("passive gauge transformations") {
  const AnsatzFields f = sample_fields();
  const double t = 0.6, r = 1.4;

  SUBCASE("zero phases act as the identity") {
    const AnsatzFields g = passive_gauge_transform(f, ScalarField(0.0), ScalarField(0.0));
    CHECK(std::abs(g.psi(t, r) - f.psi(t, r)) < 1e-15);
    CHECK(g.a_t(t, r) == doctest::Approx(f.a_t(t, r)));
  }
  SUBCASE("constant quarter turn multiplies psi by i") {
    AnsatzFields unit = f;
    unit.psi = {ScalarField(1.0), ScalarField(0.0)};
    const AnsatzFields g =
        passive_gauge_transform(unit, ScalarField(M_PI / 4.0), ScalarField(M_PI / 4.0));
    CHECK(std::abs(g.psi(t, r) - Complex(0.0, 1.0)) < 1e-14);
    CHECK(g.a_t(t, r) == doctest::Approx(unit.a_t(t, r)));  // d(const) = 0
    CHECK(std::abs(g.phi(t, r) - unit.phi(t, r)) < 1e-15);
    CHECK(g.eta(t, r) == doctest::Approx(unit.eta(t, r)));
  }
  SUBCASE("composition adds phases, including the derivative term") {
    const ScalarField chi0([](double t_, double r_) { return 0.3 * t_ * r_; },
                           [](double, double r_) { return 0.3 * r_; },
                           [](double t_, double) { return 0.3 * t_; });
    const ScalarField chi1([](double t_, double r_) { return std::sin(t_) + 0.2 * r_; },
                           [](double t_, double) { return std::cos(t_); },
                           [](double, double) { return 0.2; });
    const ScalarField zero(0.0);
    const AnsatzFields two = passive_gauge_transform(
        passive_gauge_transform(f, chi0, zero), chi1, zero);
    const ScalarField sum(
        [chi0, chi1](double t_, double r_) { return chi0(t_, r_) + chi1(t_, r_); },
        [chi0, chi1](double t_, double r_) { return chi0.d_t(t_, r_) + chi1.d_t(t_, r_); },
        [chi0, chi1](double t_, double r_) { return chi0.d_r(t_, r_) + chi1.d_r(t_, r_); });
    const AnsatzFields one = passive_gauge_transform(f, sum, zero);
    for (double tt : {0.2, 0.9}) {
      for (double rr : {0.8, 1.7}) {
        CHECK(std::abs(two.psi(tt, rr) - one.psi(tt, rr)) < 1e-10);
        CHECK(two.a_t(tt, rr) == doctest::Approx(one.a_t(tt, rr)).epsilon(1e-10));
        CHECK(two.a_r(tt, rr) == doctest::Approx(one.a_r(tt, rr)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("symmetric gauge transformation") {
  const AnsatzFields f = sample_fields();
  const double t = 0.5, r = 1.2;

  SUBCASE("zero angle is the identity") {
    const AnsatzFields g = symmetric_gauge_transform(f, ScalarField(0.0));
    CHECK(std::abs(g.psi(t, r) - f.psi(t, r)) < 1e-15);
    CHECK(std::abs(g.phi(t, r) - f.phi(t, r)) < 1e-15);
  }
  SUBCASE("constant angle rotates psi and phi' = 1 - phi") {
    const double chi = 0.8;
    const AnsatzFields g = symmetric_gauge_transform(f, ScalarField(chi));
    const Complex u = std::exp(Complex(0.0, -chi));
    CHECK(std::abs(g.psi(t, r) - u * f.psi(t, r)) < 1e-14);
    CHECK(std::abs((1.0 - g.phi(t, r)) - u * (1.0 - f.phi(t, r))) < 1e-14);
    CHECK(g.a_t(t, r) == doctest::Approx(f.a_t(t, r)));
    CHECK(g.eta(t, r) == doctest::Approx(f.eta(t, r)));
  }
  SUBCASE("matches the local-form gauge transformation pointwise") {
    const ScalarField chi([](double t_, double r_) { return 0.4 * t_ + 0.3 * r_ * r_; },
                          [](double, double) { return 0.4; },
                          [](double, double r_) { return 0.6 * r_; });
    const AnsatzFields g = symmetric_gauge_transform(f, chi);
    for (double theta : {0.8, 2.0}) {
      const LocalNCOneForm before = singular_gauge_form(f, t, r, theta, 0.5);
      const LocalNCOneForm after = singular_gauge_form(g, t, r, theta, 0.5);
      const std::vector<double> dchi = {chi.d_t(t, r), chi.d_r(t, r), 0.0, 0.0};
      const LocalNCOneForm moved = su_c_gauge_transform_local(before, chi(t, r), dchi);
      CHECK(form_distance(after, moved) < 1e-12);
    }
  }
}

TEST_CASE("rotation invariance of the radial gauge") {
  const AnsatzFields f = sample_fields();

  SUBCASE("identity rotation") {
    CHECK(rotation_invariance_defect(f, Eigen::Matrix3d::Identity(),
                                     point_from_spherical(0.2, 1.5, 1.0, 0.7)) < 1e-14);
  }
  SUBCASE("rotations about z fix points on the z axis") {
    SamplePoint p;
    p.t = 0.1;
    p.z = 2.0;
    const Eigen::Matrix3d rot =
        rotation_from_axis_angle(Eigen::Vector3d::UnitZ(), 1.234);
    CHECK(rotation_invariance_defect(f, rot, p) < 1e-12);
  }
  SUBCASE("random rotations and points stay within tolerance") {
    std::uint64_t state = 31;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::Vector3d axis(uniform_pm1(state), uniform_pm1(state), uniform_pm1(state));
      if (axis.norm() < 1e-3) axis = Eigen::Vector3d::UnitX();
      const Eigen::Matrix3d rot =
          rotation_from_axis_angle(axis, M_PI * uniform_pm1(state));
      SamplePoint p;
      p.t = uniform_pm1(state);
      p.x = 0.5 + 0.4 * uniform_pm1(state);
      p.y = 0.5 + 0.4 * uniform_pm1(state);
      p.z = 0.5 + 0.4 * uniform_pm1(state);
      CHECK(rotation_invariance_defect(f, rot, p) < 1e-8);
    }
  }
  SUBCASE("lift and adjoint agree") {
    std::uint64_t state = 37;
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::Vector3d axis(uniform_pm1(state), uniform_pm1(state), uniform_pm1(state));
      if (axis.norm() < 1e-3) axis = Eigen::Vector3d::UnitY();
      const Eigen::Matrix3d rot =
          rotation_from_axis_angle(axis, M_PI * uniform_pm1(state));
      CHECK((adjoint_so3(su2_lift(rot)) - rot).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(rotation_invariance_defect(f, 2.0 * Eigen::Matrix3d::Identity(),
                                               point_from_spherical(0, 1, 1, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("local transition") {
  const AnsatzFields f = sample_fields();

  SUBCASE("constant gauge: conjugation without inhomogeneous term") {
    const Matrix u = matrix_exp(0.6 * t_gen(0) - 0.2 * t_gen(2));
    const GaugeFunction g([u](const GaugeFunction::Point&) { return u; });
    LocalNCOneForm form = singular_gauge_form(f, 0.4, 1.1, 1.0, 0.2);
    const GaugeFunction::Point x = {0.4, 1.1, 1.0, 0.2};
    const LocalNCOneForm out = local_transition(form, g, x);
    const Eigen::Matrix3d r_u = adjoint_so3(u);
    CHECK((out.algebraic - r_u.transpose() * form.algebraic * r_u).cwiseAbs().maxCoeff() <
          1e-9);
    for (int mu = 0; mu < 4; ++mu)
      CHECK((out.spacetime[mu] - Eigen::Vector3d(r_u.transpose() * form.spacetime[mu]))
                .cwiseAbs()
                .maxCoeff() < 1e-9);
  }

  SUBCASE("phi = identity recovers the classical inhomogeneous rule") {
    // stored algebraic block -1 corresponds to the identity map in the
    // a + phi o itheta convention, so a' = Ad_{g^{-1}} a - g^{-1}dg
    LocalNCOneForm form;
    form.coords = {"t", "r"};
    form.spacetime = {Eigen::Vector3d(0.1, 0.4, -0.2), Eigen::Vector3d(0.0, 0.3, 0.5)};
    form.algebraic = -Eigen::Matrix3d::Identity();

    auto angle = [](const GaugeFunction::Point& x) { return 0.7 * x[0] - 0.4 * x[1]; };
    std::vector<GaugeFunction::AngleFn> parts = {
        [](const GaugeFunction::Point&) { return 0.7; },
        [](const GaugeFunction::Point&) { return -0.4; }};
    const GaugeFunction g = GaugeFunction::axis_exponential(t_gen(1), angle, parts);
    const GaugeFunction::Point x = {0.9, 1.3};
    const LocalNCOneForm out = local_transition(form, g, x);

    const Eigen::Matrix3d r_g = adjoint_so3(g(x));
    for (int mu = 0; mu < 2; ++mu) {
      Eigen::Vector3d mc;
      const Matrix m = g.maurer_cartan(mu, x);
      for (int a = 0; a < 3; ++a)
        mc(a) = std::real(-2.0 * (t_gen(a) * m).trace());
      const Eigen::Vector3d expected =
          Eigen::Vector3d(r_g.transpose() * form.spacetime[mu]) - mc;
      CHECK((out.spacetime[mu] - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("cocycle property under composition") {
    std::uint64_t state = 41;
    for (int trial = 0; trial < 10; ++trial) {
      LocalNCOneForm form;
      form.coords = {"t", "r"};
      form.spacetime.assign(2, Eigen::Vector3d::Zero());
      for (int mu = 0; mu < 2; ++mu)
        for (int a = 0; a < 3; ++a) form.spacetime[mu](a) = uniform_pm1(state);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) form.algebraic(a, b) = uniform_pm1(state);

      auto make_gauge = [&](std::uint64_t& s) {
        const double c1 = uniform_pm1(s), c2 = uniform_pm1(s);
        Matrix axis = Matrix::Zero(2, 2);
        Eigen::Vector3d v(uniform_pm1(s), uniform_pm1(s), uniform_pm1(s));
        if (v.norm() < 1e-3) v = Eigen::Vector3d::UnitZ();
        v.normalize();
        for (int a = 0; a < 3; ++a) axis += v(a) * t_gen(a);
        auto angle = [c1, c2](const GaugeFunction::Point& x) {
          return c1 * x[0] + c2 * std::cos(x[1]);
        };
        std::vector<GaugeFunction::AngleFn> parts = {
            [c1](const GaugeFunction::Point&) { return c1; },
            [c2](const GaugeFunction::Point& x) { return -c2 * std::sin(x[1]); }};
        return GaugeFunction::axis_exponential(axis, angle, parts);
      };
      const GaugeFunction g1 = make_gauge(state);
      const GaugeFunction g2 = make_gauge(state);
      const GaugeFunction::Point x = {uniform_pm1(state), 1.3 + 0.5 * uniform_pm1(state)};
      const LocalNCOneForm two = local_transition(local_transition(form, g1, x), g2, x);
      const LocalNCOneForm one = local_transition(form, GaugeFunction::product(g1, g2), x);
      CHECK(form_distance(two, one) < 1e-10);
    }
  }

  SUBCASE("finite-difference derivatives agree with analytic ones") {
    auto angle = [](const GaugeFunction::Point& x) { return 0.5 * x[0] * x[1]; };
    std::vector<GaugeFunction::AngleFn> parts = {
        [](const GaugeFunction::Point& x) { return 0.5 * x[1]; },
        [](const GaugeFunction::Point& x) { return 0.5 * x[0]; }};
    const GaugeFunction exact = GaugeFunction::axis_exponential(t_gen(2), angle, parts);
    const GaugeFunction fd = GaugeFunction::axis_exponential(t_gen(2), angle);
    const GaugeFunction::Point x = {0.8, 1.6};
    for (int k = 0; k < 2; ++k)
      CHECK(max_abs(exact.partial(k, x) - fd.partial(k, x)) < 1e-9);
  }
}

TEST_CASE("cross-gauge consistency: singular transported to radial") {
  // The polar axis conventions of the two displayed gauges differ by a
  // constant quarter turn about T3, so the transported singular form lands on
  // the radial form of the quarter-turned fields (psi -> -i psi).
  const AnsatzFields f = sample_fields();
  const AnsatzFields rotated = quarter_turned(f);
  const GaugeFunction transition = radial_section_gauge();

  for (double theta : {0.6, 1.3, 2.4}) {
    for (double phi : {0.0, 0.9, 2.2}) {
      const double t = 0.35, r = 1.25;
      const GaugeFunction::Point x = {t, r, theta, phi};
      const LocalNCOneForm transported =
          local_transition(singular_gauge_form(f, t, r, theta, phi), transition, x);
      const LocalNCOneForm radial = to_spherical_chart(
          radial_gauge_form(rotated, point_from_spherical(t, r, theta, phi)), r, theta,
          phi);
      CHECK(form_distance(transported, radial) < 1e-9);
    }
  }
}

TEST_CASE("decomposition form") {
  const AnsatzFields f = sample_fields();
  const double t = 0.4, r = 1.6;

  SUBCASE("identity intertwiner collapses to the ordinary invariant form") {
    Su2LinearMap identity_map;
    for (int a = 0; a < 3; ++a) identity_map.images[a] = t_gen(a);
    const Su2LinearMap lambda_map = Su2LinearMap::lambda_of(f, t, r);
    std::uint64_t state = 43;
    const Matrix h = matrix_exp(0.4 * t_gen(0) + 0.2 * t_gen(1));
    const Matrix hinv = matrix_inverse(h);
    const Matrix omega_tilde = 0.7 * t_gen(2);
    const Matrix g_tan = traceless_part(random_matrix(2, 2, state));
    const Matrix h_tan = 0.3 * t_gen(0) - 0.8 * t_gen(2);
    const Matrix xi = random_matrix(2, 2, state);

    const Matrix value =
        decomposition_value(omega_tilde, lambda_map, identity_map, g_tan, h, h_tan, xi);
    const Matrix expected =
        hinv * (omega_tilde + lambda_map.apply(g_tan)) * h + h_tan - traceless_part(xi);
    CHECK(max_abs(value - expected) < 1e-12);
  }

  SUBCASE("all zero data gives zero") {
    Su2LinearMap zero_map;
    for (int a = 0; a < 3; ++a) zero_map.images[a] = Matrix::Zero(2, 2);
    const Matrix value = decomposition_value(
        Matrix::Zero(2, 2), zero_map, zero_map, Matrix::Zero(2, 2),
        Matrix::Identity(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2));
    CHECK(max_abs(value) == 0.0);
  }

  SUBCASE("constraint validation rejects non-equivariant maps") {
    const Su2LinearMap lambda_map = Su2LinearMap::lambda_of(f, t, r);
    const Su2LinearMap phi_map = Su2LinearMap::phi_of(f, t, r);
    CHECK(intertwiner_equivariance_defect(lambda_map) < 1e-12);
    CHECK(intertwiner_equivariance_defect(phi_map) < 1e-12);
    CHECK(horizontality_pin_defect(lambda_map, phi_map) < 1e-12);

    Su2LinearMap bad = lambda_map;
    bad.images[0] = t_gen(2);  // breaks the isotropy equivariance
    CHECK(intertwiner_equivariance_defect(bad) > 0.1);
  }

  SUBCASE("spherical specialization reproduces the radial gauge") {
    for (double theta : {0.5, 1.2, 2.6}) {
      for (double phi : {0.1, 1.8}) {
        const LocalNCOneForm via_decomposition =
            decomposition_local_form(f, t, r, theta, phi);
        const LocalNCOneForm via_radial = to_spherical_chart(
            radial_gauge_form(f, point_from_spherical(t, r, theta, phi)), r, theta, phi);
        CHECK(form_distance(via_decomposition, via_radial) < 1e-9);
      }
    }
  }
}
