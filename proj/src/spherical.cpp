#include "ncgeo/spherical.hpp"

#include <cmath>

namespace ncgeo {

namespace {

constexpr double kFdStep = 1e-5;
constexpr double kChartGuard = 1e-6;

double eps3(int i, int j, int k) {
  return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

// Central difference with one Richardson refinement.
double richardson(const std::function<double(double)>& f, double x) {
  const double h = kFdStep;
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

Matrix richardson_matrix(const std::function<Matrix(double)>& f, double x) {
  const double h = kFdStep;
  const Matrix d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const Matrix d2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

const Matrix& t_gen(int a) { return su2_basis()->element(a); }

// Real T-basis coordinates of an (approximately) su(2)-valued matrix.
Eigen::Vector3d su2_coords(const Matrix& m) {
  Eigen::Vector3d out;
  for (int a = 0; a < 3; ++a) out(a) = std::real(-2.0 * (t_gen(a) * m).trace());
  return out;
}

}  // namespace

ScalarField::ScalarField(double constant)
    : value_([constant](double, double) { return constant; }),
      dt_([](double, double) { return 0.0; }),
      dr_([](double, double) { return 0.0; }),
      analytic_(true) {}

ScalarField::ScalarField(Fn value) : value_(std::move(value)) {}

ScalarField::ScalarField(Fn value, Fn dt, Fn dr)
    : value_(std::move(value)), dt_(std::move(dt)), dr_(std::move(dr)), analytic_(true) {}

double ScalarField::d_t(double t, double r) const {
  if (analytic_) return dt_(t, r);
  return richardson([&](double s) { return value_(s, r); }, t);
}

double ScalarField::d_r(double t, double r) const {
  if (analytic_) return dr_(t, r);
  return richardson([&](double s) { return value_(t, s); }, r);
}

AnsatzFields AnsatzFields::witten_limit() {
  AnsatzFields f;
  f.a_t = ScalarField(0.0);
  f.a_r = ScalarField(0.0);
  f.psi = {ScalarField(0.0), ScalarField(0.0)};
  f.phi = {ScalarField(1.0), ScalarField(0.0)};
  f.eta = ScalarField(1.0);
  return f;
}

double SamplePoint::r() const { return std::sqrt(x * x + y * y + z * z); }

Eigen::Vector3d SamplePoint::nhat() const {
  const double rad = r();
  if (rad <= 0.0) throw std::invalid_argument("SamplePoint: r must be positive");
  return Eigen::Vector3d(x, y, z) / rad;
}

Matrix LocalNCOneForm::spacetime_matrix(int mu) const {
  Matrix out = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) out += spacetime[mu](a) * t_gen(a);
  return out;
}

Matrix LocalNCOneForm::algebraic_matrix(int b) const {
  Matrix out = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) out -= algebraic(a, b) * t_gen(a);
  return out;
}

NCForm LocalNCOneForm::algebraic_form() const {
  NCForm out(2, 1);
  for (int b = 0; b < 3; ++b) out.component(b) = algebraic_matrix(b);
  return out;
}

double form_distance(const LocalNCOneForm& a, const LocalNCOneForm& b) {
  if (a.coords != b.coords)
    throw std::invalid_argument("form_distance: charts differ");
  double d = 0.0;
  for (size_t mu = 0; mu < a.spacetime.size(); ++mu)
    d = std::max(d, (a.spacetime[mu] - b.spacetime[mu]).cwiseAbs().maxCoeff());
  d = std::max(d, (a.algebraic - b.algebraic).cwiseAbs().maxCoeff());
  return d;
}

LocalNCOneForm radial_gauge_form(const AnsatzFields& fields, const SamplePoint& p) {
  const double rad = p.r();
  if (rad <= 0.0) throw std::invalid_argument("radial_gauge_form: r must be positive");
  const Eigen::Vector3d n = p.nhat();

  const Complex psi = fields.psi(p.t, rad);
  const Complex phi = fields.phi(p.t, rad);
  const double eta = fields.eta(p.t, rad);
  const double at = fields.a_t(p.t, rad);
  const double ar = fields.a_r(p.t, rad);
  if (!std::isfinite(psi.real()) || !std::isfinite(psi.imag()) ||
      !std::isfinite(phi.real()) || !std::isfinite(phi.imag()) || !std::isfinite(eta) ||
      !std::isfinite(at) || !std::isfinite(ar))
    throw std::invalid_argument("radial_gauge_form: field value not finite");
  const Complex w = psi - Complex(0.0, 1.0) * phi;

  auto proj = [&](int a, int i) { return (a == i ? 1.0 : 0.0) - n(a) * n(i); };

  LocalNCOneForm out;
  out.coords = {"t", "x", "y", "z"};
  out.spacetime.assign(4, Eigen::Vector3d::Zero());
  for (int a = 0; a < 3; ++a) out.spacetime[0](a) = at * n(a);
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) {
      double v = ar * n(i) * n(a) + std::real(w) / rad * proj(a, i);
      for (int c = 0; c < 3; ++c) v += std::imag(w) / rad * eps3(i, a, c) * n(c);
      out.spacetime[i + 1](a) = v;
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double v = std::real(phi) * proj(a, b) + eta * n(a) * n(b);
      for (int d = 0; d < 3; ++d) v += std::imag(phi) * eps3(b, a, d) * n(d);
      out.algebraic(a, b) = v;
    }
  }
  return out;
}

LocalNCOneForm singular_gauge_form(const AnsatzFields& fields, double t, double r,
                                   double theta, double phi_angle) {
  (void)phi_angle;  // the singular-gauge components do not depend on phi
  if (r <= 0.0) throw std::invalid_argument("singular_gauge_form: r must be positive");
  if (theta < kChartGuard || theta > M_PI - kChartGuard)
    throw std::invalid_argument("singular_gauge_form: theta outside the chart");

  const Complex psi = fields.psi(t, r);
  const Complex phi = fields.phi(t, r);
  const double eta = fields.eta(t, r);
  const double lambda1 = std::imag(psi);
  const double lambda2 = -std::real(psi);
  const double phi1 = std::real(phi);
  const double phi2 = std::imag(phi);

  LocalNCOneForm out;
  out.coords = {"t", "r", "theta", "phi"};
  out.spacetime.assign(4, Eigen::Vector3d::Zero());
  out.spacetime[0] = Eigen::Vector3d(0.0, 0.0, fields.a_t(t, r));
  out.spacetime[1] = Eigen::Vector3d(0.0, 0.0, fields.a_r(t, r));
  out.spacetime[2] = Eigen::Vector3d(lambda1, lambda2, 0.0);
  out.spacetime[3] =
      Eigen::Vector3d(-lambda2 * std::sin(theta), lambda1 * std::sin(theta),
                      eta * std::cos(theta));
  out.algebraic << phi1, -phi2, 0.0,
                   phi2,  phi1, 0.0,
                   0.0,   0.0,  eta;
  return out;
}

LocalNCOneForm to_spherical_chart(const LocalNCOneForm& euclidean, double r, double theta,
                                  double phi_angle) {
  if (euclidean.coords != std::vector<std::string>{"t", "x", "y", "z"})
    throw std::invalid_argument("to_spherical_chart: expected a (t,x,y,z) chart");
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi_angle), cp = std::cos(phi_angle);
  // Columns: d(x,y,z)/d(r, theta, phi).
  Eigen::Matrix3d jac;
  jac << st * cp, r * ct * cp, -r * st * sp,
         st * sp, r * ct * sp,  r * st * cp,
         ct,     -r * st,       0.0;

  LocalNCOneForm out;
  out.coords = {"t", "r", "theta", "phi"};
  out.spacetime.assign(4, Eigen::Vector3d::Zero());
  out.spacetime[0] = euclidean.spacetime[0];
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      out.spacetime[k + 1] += jac(i, k) * euclidean.spacetime[i + 1];
  out.algebraic = euclidean.algebraic;
  return out;
}

AnsatzFields passive_gauge_transform(const AnsatzFields& fields, const ScalarField& chi0,
                                     const ScalarField& chi1) {
  AnsatzFields out = fields;
  const ComplexField psi = fields.psi;
  auto phase = [chi0, chi1](double t, double r) { return chi0(t, r) + chi1(t, r); };
  out.psi.re = ScalarField([psi, phase](double t, double r) {
    const Complex v = std::exp(Complex(0.0, phase(t, r))) * psi(t, r);
    return v.real();
  });
  out.psi.im = ScalarField([psi, phase](double t, double r) {
    const Complex v = std::exp(Complex(0.0, phase(t, r))) * psi(t, r);
    return v.imag();
  });
  const ScalarField at = fields.a_t, ar = fields.a_r, eta = fields.eta;
  out.a_t = ScalarField([at, eta, chi0, chi1](double t, double r) {
    return at(t, r) - eta(t, r) * (chi0.d_t(t, r) + chi1.d_t(t, r));
  });
  out.a_r = ScalarField([ar, eta, chi0, chi1](double t, double r) {
    return ar(t, r) - eta(t, r) * (chi0.d_r(t, r) + chi1.d_r(t, r));
  });
  return out;
}

AnsatzFields symmetric_gauge_transform(const AnsatzFields& fields, const ScalarField& chi) {
  AnsatzFields out = fields;
  const ComplexField psi = fields.psi, phi = fields.phi;
  auto rotate = [chi](const ComplexField& f, bool twist) {
    ComplexField g;
    auto val = [f, chi, twist](double t, double r) {
      const Complex u = std::exp(Complex(0.0, -chi(t, r)));
      if (twist) return 1.0 - u * (1.0 - f(t, r));  // phi = 1 - phi'
      return u * f(t, r);
    };
    g.re = ScalarField([val](double t, double r) { return val(t, r).real(); });
    g.im = ScalarField([val](double t, double r) { return val(t, r).imag(); });
    return g;
  };
  out.psi = rotate(psi, false);
  out.phi = rotate(phi, true);
  const ScalarField at = fields.a_t, ar = fields.a_r;
  out.a_t = ScalarField([at, chi](double t, double r) { return at(t, r) + chi.d_t(t, r); });
  out.a_r = ScalarField([ar, chi](double t, double r) { return ar(t, r) + chi.d_r(t, r); });
  return out;
}

Eigen::Matrix3d rotation_from_axis_angle(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

Matrix su2_lift(const Eigen::Matrix3d& rotation) {
  const Eigen::Matrix3d rt = rotation.transpose() * rotation;
  if ((rt - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
      std::abs(rotation.determinant() - 1.0) > 1e-10)
    throw std::invalid_argument("su2_lift: matrix is not a rotation");
  const Eigen::AngleAxisd aa(rotation);
  const double half = 0.5 * aa.angle();
  const Eigen::Vector3d n = aa.axis();
  Matrix u = std::cos(half) * Matrix::Identity(2, 2);
  for (int a = 0; a < 3; ++a) u += 2.0 * std::sin(half) * n(a) * t_gen(a);
  return u;
}

Eigen::Matrix3d adjoint_so3(const Matrix& u) {
  Eigen::Matrix3d out;
  const Matrix uinv = matrix_inverse(u);
  for (int b = 0; b < 3; ++b) out.col(b) = su2_coords(u * t_gen(b) * uinv);
  return out;
}

double rotation_invariance_defect(const AnsatzFields& fields,
                                  const Eigen::Matrix3d& rotation, const SamplePoint& p) {
  const Eigen::Matrix3d rt = rotation.transpose() * rotation;
  if ((rt - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
      std::abs(rotation.determinant() - 1.0) > 1e-10)
    throw std::invalid_argument("rotation_invariance_defect: not a rotation");

  SamplePoint q;
  q.t = p.t;
  const Eigen::Vector3d rx = rotation * Eigen::Vector3d(p.x, p.y, p.z);
  q.x = rx(0);
  q.y = rx(1);
  q.z = rx(2);

  const LocalNCOneForm at_p = radial_gauge_form(fields, p);
  const LocalNCOneForm at_q = radial_gauge_form(fields, q);
  const Matrix u = su2_lift(rotation);
  const Matrix uinv = matrix_inverse(u);

  double defect = max_abs(at_q.spacetime_matrix(0) - u * at_p.spacetime_matrix(0) * uinv);
  for (int i = 0; i < 3; ++i) {
    Matrix expected = Matrix::Zero(2, 2);
    for (int j = 0; j < 3; ++j)
      expected += rotation(i, j) * (u * at_p.spacetime_matrix(j + 1) * uinv);
    defect = std::max(defect, max_abs(at_q.spacetime_matrix(i + 1) - expected));
  }
  for (int b = 0; b < 3; ++b) {
    Matrix expected = Matrix::Zero(2, 2);
    for (int d = 0; d < 3; ++d)
      expected += rotation(b, d) * (u * at_p.algebraic_matrix(d) * uinv);
    defect = std::max(defect, max_abs(at_q.algebraic_matrix(b) - expected));
  }
  return defect;
}

GaugeFunction::GaugeFunction(Fn value) : value_(std::move(value)) {}

GaugeFunction::GaugeFunction(Fn value, std::vector<Fn> partials)
    : value_(std::move(value)), partials_(std::move(partials)), analytic_(true) {}

Matrix GaugeFunction::partial(int k, const Point& x) const {
  if (analytic_) {
    if (k >= static_cast<int>(partials_.size()))
      throw std::invalid_argument("GaugeFunction: no partial for coordinate");
    return partials_[k](x);
  }
  return richardson_matrix(
      [&](double s) {
        Point y = x;
        y[k] = s;
        return value_(y);
      },
      x[k]);
}

Matrix GaugeFunction::maurer_cartan(int k, const Point& x) const {
  return matrix_inverse(value_(x)) * partial(k, x);
}

GaugeFunction GaugeFunction::product(const GaugeFunction& f, const GaugeFunction& g) {
  auto value = [f, g](const Point& x) -> Matrix { return f(x) * g(x); };
  if (f.analytic_ && g.analytic_ && f.partials_.size() == g.partials_.size()) {
    std::vector<Fn> partials;
    for (size_t k = 0; k < f.partials_.size(); ++k) {
      partials.push_back([f, g, k](const Point& x) -> Matrix {
        return f.partial(static_cast<int>(k), x) * g(x) +
               f(x) * g.partial(static_cast<int>(k), x);
      });
    }
    return GaugeFunction(value, std::move(partials));
  }
  return GaugeFunction(value);
}

GaugeFunction GaugeFunction::axis_exponential(const Matrix& axis, AngleFn angle,
                                              std::vector<AngleFn> angle_partials) {
  auto value = [axis, angle](const Point& x) -> Matrix {
    return matrix_exp(angle(x) * axis);
  };
  if (angle_partials.empty()) return GaugeFunction(value);
  std::vector<Fn> partials;
  for (AngleFn dpart : angle_partials) {
    partials.push_back([axis, angle, dpart](const Point& x) -> Matrix {
      // axis commutes with its own exponential
      return dpart(x) * axis * matrix_exp(angle(x) * axis);
    });
  }
  return GaugeFunction(value, std::move(partials));
}

LocalNCOneForm local_transition(const LocalNCOneForm& form, const GaugeFunction& g,
                                const GaugeFunction::Point& point) {
  if (point.size() != form.coords.size())
    throw std::invalid_argument("local_transition: point arity mismatch");
  const Matrix gv = g(point);
  if (!is_unitary(gv, 1e-8))
    throw std::invalid_argument("local_transition: gauge value is not unitary");
  const Eigen::Matrix3d r_g = adjoint_so3(gv);
  const Eigen::Matrix3d r_ginv = r_g.transpose();

  LocalNCOneForm out;
  out.coords = form.coords;
  out.spacetime.assign(form.spacetime.size(), Eigen::Vector3d::Zero());
  out.algebraic = r_ginv * form.algebraic * r_g;
  for (size_t mu = 0; mu < form.spacetime.size(); ++mu) {
    const Eigen::Vector3d mc = su2_coords(g.maurer_cartan(static_cast<int>(mu), point));
    out.spacetime[mu] = r_ginv * form.spacetime[mu] + r_ginv * form.algebraic * r_g * mc;
  }
  return out;
}

LocalNCOneForm su_c_gauge_transform_local(const LocalNCOneForm& form, double chi,
                                          const std::vector<double>& dchi) {
  if (dchi.size() != form.coords.size())
    throw std::invalid_argument("su_c_gauge_transform_local: dchi arity mismatch");
  const Matrix u = matrix_exp(chi * t_gen(2));
  const Eigen::Matrix3d r_u = adjoint_so3(u);
  const Eigen::Matrix3d r_uinv = r_u.transpose();

  LocalNCOneForm out;
  out.coords = form.coords;
  out.spacetime.assign(form.spacetime.size(), Eigen::Vector3d::Zero());
  for (size_t mu = 0; mu < form.spacetime.size(); ++mu) {
    out.spacetime[mu] = r_uinv * form.spacetime[mu];
    out.spacetime[mu](2) += dchi[mu];  // U* dU = dchi T3
  }
  const ConnectionForm transformed =
      gauge_transform(ConnectionForm{form.algebraic_form()}, u);
  for (int b = 0; b < 3; ++b)
    out.algebraic.col(b) = -su2_coords(transformed.omega.component(b));
  return out;
}

Matrix Su2LinearMap::apply(const Matrix& x) const {
  const Vector c = sl_basis(2)->coordinates(traceless_part(x));
  Matrix out = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) out += c(a) * images[a];
  return out;
}

Su2LinearMap Su2LinearMap::lambda_of(const AnsatzFields& fields, double t, double r) {
  const Complex psi = fields.psi(t, r);
  const double l1 = std::imag(psi), l2 = -std::real(psi);
  const double eta = fields.eta(t, r);
  Su2LinearMap map;
  map.images[0] = l1 * t_gen(0) + l2 * t_gen(1);
  map.images[1] = -l2 * t_gen(0) + l1 * t_gen(1);
  map.images[2] = eta * t_gen(2);
  return map;
}

Su2LinearMap Su2LinearMap::phi_of(const AnsatzFields& fields, double t, double r) {
  const Complex phi = fields.phi(t, r);
  const double p1 = std::real(phi), p2 = std::imag(phi);
  const double eta = fields.eta(t, r);
  Su2LinearMap map;
  map.images[0] = p1 * t_gen(0) + p2 * t_gen(1);
  map.images[1] = -p2 * t_gen(0) + p1 * t_gen(1);
  map.images[2] = eta * t_gen(2);
  return map;
}

double intertwiner_equivariance_defect(const Su2LinearMap& map) {
  const LieBasis& su2 = *su2_basis();
  double defect = 0.0;
  for (int b = 0; b < 3; ++b) {
    Matrix expected = Matrix::Zero(2, 2);
    const Vector f = su2.adjoint_op(2).col(b);  // [T3, T_b] in coordinates
    for (int c = 0; c < 3; ++c) expected += f(c) * map.images[c];
    defect = std::max(defect, max_abs(bracket(t_gen(2), map.images[b]) - expected));
  }
  return defect;
}

double horizontality_pin_defect(const Su2LinearMap& lambda_map, const Su2LinearMap& phi_map) {
  return max_abs(lambda_map.images[2] - phi_map.images[2]);
}

Matrix decomposition_value(const Matrix& omega_tilde_value, const Su2LinearMap& lambda_map,
                           const Su2LinearMap& phi_map, const Matrix& g_tangent,
                           const Matrix& h, const Matrix& h_tangent, const Matrix& xi) {
  const Matrix hinv = matrix_inverse(h);
  const Matrix inner = h * (h_tangent - traceless_part(xi)) * hinv;
  const Matrix total = omega_tilde_value + lambda_map.apply(g_tangent) + phi_map.apply(inner);
  return hinv * total * h;
}

LocalNCOneForm decomposition_local_form(const AnsatzFields& fields, double t, double r,
                                        double theta, double phi_angle) {
  if (r <= 0.0) throw std::invalid_argument("decomposition_local_form: r must be positive");
  if (theta < kChartGuard || theta > M_PI - kChartGuard)
    throw std::invalid_argument("decomposition_local_form: theta outside the chart");

  using Point = GaugeFunction::Point;
  auto coord = [](int k) {
    return [k](const Point& x) { return x[k]; };
  };
  auto coord_partials = [](int k) {
    std::vector<GaugeFunction::AngleFn> parts;
    for (int m = 0; m < 4; ++m)
      parts.push_back([k, m](const Point&) { return k == m ? 1.0 : 0.0; });
    return parts;
  };
  auto minus = [](GaugeFunction::AngleFn f) {
    return [f](const Point& x) { return -f(x); };
  };
  auto minus_all = [&](std::vector<GaugeFunction::AngleFn> fs) {
    for (auto& f : fs) f = minus(f);
    return fs;
  };

  // g(theta, phi) = e^{phi T3} e^{theta T2}; h = g^{-1}.
  const GaugeFunction g_section = GaugeFunction::product(
      GaugeFunction::axis_exponential(t_gen(2), coord(3), coord_partials(3)),
      GaugeFunction::axis_exponential(t_gen(1), coord(2), coord_partials(2)));
  const GaugeFunction h_section = GaugeFunction::product(
      GaugeFunction::axis_exponential(t_gen(1), minus(coord(2)), minus_all(coord_partials(2))),
      GaugeFunction::axis_exponential(t_gen(2), minus(coord(3)), minus_all(coord_partials(3))));

  const Point x = {t, r, theta, phi_angle};
  const Matrix h = h_section(x);
  const Matrix hinv = matrix_inverse(h);
  const Su2LinearMap lambda_map = Su2LinearMap::lambda_of(fields, t, r);
  const Su2LinearMap phi_map = Su2LinearMap::phi_of(fields, t, r);
  if (intertwiner_equivariance_defect(lambda_map) > 1e-8 ||
      intertwiner_equivariance_defect(phi_map) > 1e-8 ||
      horizontality_pin_defect(lambda_map, phi_map) > 1e-8)
    throw std::invalid_argument("decomposition_local_form: constraint violation");
  const double a_comp[2] = {fields.a_t(t, r), fields.a_r(t, r)};

  LocalNCOneForm out;
  out.coords = {"t", "r", "theta", "phi"};
  out.spacetime.assign(4, Eigen::Vector3d::Zero());
  for (int mu = 0; mu < 4; ++mu) {
    Matrix total = Matrix::Zero(2, 2);
    if (mu < 2) {
      total += a_comp[mu] * t_gen(2);  // omega_tilde = a (x) T3 on M/G
    } else {
      total += lambda_map.apply(g_section.maurer_cartan(mu, x));
      total += phi_map.apply(h * h_section.maurer_cartan(mu, x) * hinv);
    }
    out.spacetime[mu] = su2_coords(hinv * total * h);
  }

  // Algebraic part: -Ad_{h^{-1}} phi Ad_h applied through itheta.
  Eigen::Matrix3d phi_block;
  const Complex phi = fields.phi(t, r);
  const double eta = fields.eta(t, r);
  phi_block << std::real(phi), -std::imag(phi), 0.0,
               std::imag(phi),  std::real(phi), 0.0,
               0.0,             0.0,            eta;
  const Eigen::Matrix3d r_h = adjoint_so3(h);
  out.algebraic = r_h.transpose() * phi_block * r_h;
  return out;
}

}  // namespace ncgeo
