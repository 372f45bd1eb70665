#include "twistbeam/beam.hpp"

#include <cmath>
#include <numbers>

namespace twistbeam::beam {

namespace {

constexpr cplx I{0.0, 1.0};
const double SQRT2 = std::numbers::sqrt2;
constexpr double PI = std::numbers::pi;

void check_point(const CylPoint& at) {
  if (at.rho < 0.0)
    throw std::invalid_argument("CylPoint: rho must be >= 0");
}

// Helicity-basis amplitudes of A0 and the harmonic indices they ride on.
// The plus component always carries J_{m-1} e^{i(m-1)phi}, the minus
// component J_{m+1} e^{i(m+1)phi}, the zero component J_m e^{i m phi}.
struct ModeCoeffs {
  cplx a_plus, a_minus, a_zero; // constants multiplying the harmonics
};

ModeCoeffs mode_coeffs(const BeamParams& p) {
  const double th = p.theta_k();
  const double u = std::cos(0.5 * th) * std::cos(0.5 * th);
  const double v = std::sin(0.5 * th) * std::sin(0.5 * th);
  const double s = std::sin(th);
  const cplx pre = static_cast<double>(p.lambda) * p.e0 *
                   std::sqrt(p.kappa / (2.0 * PI)) / I;
  ModeCoeffs c;
  if (p.lambda == 1) {
    c.a_plus = pre * u;
    c.a_minus = -pre * v;
  } else {
    c.a_plus = -pre * v;
    c.a_minus = pre * u;
  }
  c.a_zero = pre * (I / SQRT2) * s;
  return c;
}

} // namespace

HelicityAmps to_helicity(const CVec3& v) {
  HelicityAmps h;
  h.plus = (-v.x + I * v.y) / SQRT2;  // eta_+^* . v
  h.minus = (v.x + I * v.y) / SQRT2;  // eta_-^* . v
  h.zero = v.z;
  return h;
}

CVec3 from_helicity(const HelicityAmps& h) {
  CVec3 v;
  v.x = (-h.plus + h.minus) / SQRT2;
  v.y = -I * (h.plus + h.minus) / SQRT2;
  v.z = h.zero;
  return v;
}

BeamParams::BeamParams(double kappa_, double k_z_, int m_gamma_, int lambda_,
                       double e0_)
    : kappa(kappa_), k_z(k_z_), m_gamma(m_gamma_), lambda(lambda_), e0(e0_) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("BeamParams: kappa must be > 0");
  if (!(k_z > 0.0))
    throw std::invalid_argument("BeamParams: k_z must be > 0");
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("BeamParams: lambda must be +1 or -1");
  if (!(e0 > 0.0))
    throw std::invalid_argument("BeamParams: e0 must be > 0");
}

BeamParams BeamParams::from_pitch(double k_mag, double theta_k, int m_gamma,
                                  int lambda, double e0) {
  if (!(k_mag > 0.0))
    throw std::invalid_argument("BeamParams: |k| must be > 0");
  if (!(theta_k > 0.0) || !(theta_k < 0.5 * PI))
    throw std::invalid_argument("BeamParams: theta_k must be in (0, pi/2)");
  return BeamParams(k_mag * std::sin(theta_k), k_mag * std::cos(theta_k),
                    m_gamma, lambda, e0);
}

double BeamParams::wavelength() const { return 2.0 * PI / omega(); }

CVec3 polarization_vector(double theta_k, double phi_k, int lambda) {
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("polarization_vector: lambda must be +-1");
  if (!(theta_k >= 0.0) || !(theta_k < 0.5 * PI))
    throw std::invalid_argument("polarization_vector: theta_k in [0, pi/2)");
  const double u = std::cos(0.5 * theta_k) * std::cos(0.5 * theta_k);
  const double v = std::sin(0.5 * theta_k) * std::sin(0.5 * theta_k);
  HelicityAmps h;
  const cplx em = std::exp(-I * static_cast<double>(lambda) * phi_k);
  const cplx ep = std::exp(I * static_cast<double>(lambda) * phi_k);
  if (lambda == 1) {
    h.plus = em * u;
    h.minus = ep * v;
  } else {
    h.minus = em * u;
    h.plus = ep * v;
  }
  h.zero = (lambda / SQRT2) * std::sin(theta_k);
  return from_helicity(h);
}

CVec3 vector_potential_closed(const BeamParams& p, const CylPoint& at) {
  check_point(at);
  const ModeCoeffs c = mode_coeffs(p);
  const int m = p.m_gamma;
  const double x = p.kappa * at.rho;
  const cplx ez = std::exp(I * p.k_z * at.z);
  const auto harm = [&](int n) {
    return math::bessel_j(n, x) * std::exp(I * static_cast<double>(n) * at.phi);
  };
  HelicityAmps h;
  h.plus = c.a_plus * harm(m - 1) * ez;
  h.minus = c.a_minus * harm(m + 1) * ez;
  h.zero = c.a_zero * harm(m) * ez;
  return from_helicity(h);
}

CVec3 vector_potential_integral(const BeamParams& p, const CylPoint& at,
                                int n_phi) {
  check_point(at);
  if (n_phi < 64)
    throw std::invalid_argument("vector_potential_integral: n_phi >= 64");
  const double th = p.theta_k();
  // (-i)^{m_gamma}
  cplx phase_m = 1.0;
  {
    int r = ((p.m_gamma % 4) + 4) % 4;
    const cplx tbl[4] = {1.0, -I, -1.0, I};
    phase_m = tbl[r];
  }
  CVec3 acc;
  for (int j = 0; j < n_phi; ++j) {
    const double phi_k = 2.0 * PI * j / n_phi;
    const CVec3 eps = polarization_vector(th, phi_k, p.lambda);
    const double kdotr = p.kappa * at.rho * std::cos(phi_k - at.phi) +
                         p.k_z * at.z;
    const cplx w = phase_m *
                   std::exp(I * (static_cast<double>(p.m_gamma) * phi_k)) *
                   std::exp(I * kdotr) / static_cast<double>(n_phi);
    acc = acc + eps * w;
  }
  return acc * (p.e0 * std::sqrt(p.kappa / (2.0 * PI)));
}

CVec3 electric_field(const BeamParams& p, const CylPoint& at) {
  return vector_potential_closed(p, at) * (I * p.omega());
}

CVec3 magnetic_field(const BeamParams& p, const CylPoint& at) {
  check_point(at);
  const ModeCoeffs c = mode_coeffs(p);
  const int m = p.m_gamma;
  const double x = p.kappa * at.rho;
  const cplx ez = std::exp(I * p.k_z * at.z);
  const auto harm = [&](int n) {
    return math::bessel_j(n, x) * std::exp(I * static_cast<double>(n) * at.phi);
  };
  // Cartesian components of A0 (without e^{i k_z z}):
  //   Ax = (-a_p h_{m-1} + a_m h_{m+1})/sqrt2
  //   Ay = -i (a_p h_{m-1} + a_m h_{m+1})/sqrt2
  //   Az = a_0 h_m
  // and ladder identities dx h_n = (kappa/2)(h_{n-1} - h_{n+1}),
  // dy h_n = (i kappa/2)(h_{n-1} + h_{n+1}), dz -> i k_z.
  const cplx hm2 = harm(m - 2), hm1 = harm(m - 1), hm = harm(m),
             hp1 = harm(m + 1), hp2 = harm(m + 2);
  const double hk = 0.5 * p.kappa;
  const cplx ax = (-c.a_plus * hm1 + c.a_minus * hp1) / SQRT2;
  const cplx dx_az = c.a_zero * hk * (hm1 - hp1);
  const cplx dy_az = c.a_zero * I * hk * (hm1 + hp1);
  const cplx dx_ay = -I / SQRT2 *
                     (c.a_plus * hk * (hm2 - hm) + c.a_minus * hk * (hm - hp2));
  const cplx dy_ax = I * hk / SQRT2 *
                     (-c.a_plus * (hm2 + hm) + c.a_minus * (hm + hp2));
  const cplx ay = -I * (c.a_plus * hm1 + c.a_minus * hp1) / SQRT2;

  CVec3 b;
  b.x = (dy_az - I * p.k_z * ay) * ez;
  b.y = (I * p.k_z * ax - dx_az) * ez;
  b.z = (dx_ay - dy_ax) * ez;
  return b;
}

cplx divergence_a_closed(const BeamParams& p, const CylPoint& at) {
  check_point(at);
  const ModeCoeffs c = mode_coeffs(p);
  const int m = p.m_gamma;
  const double x = p.kappa * at.rho;
  const cplx ez = std::exp(I * p.k_z * at.z);
  const auto harm = [&](int n) {
    return math::bessel_j(n, x) * std::exp(I * static_cast<double>(n) * at.phi);
  };
  const cplx hm = harm(m);
  const double hk = 0.5 * p.kappa;
  // dx Ax + dy Ay collapses onto h_m by the same ladder identities.
  const cplx dx_ax = (-c.a_plus * hk * (harm(m - 2) - hm) +
                      c.a_minus * hk * (hm - harm(m + 2))) / SQRT2;
  const cplx dy_ay = -I * I * hk / SQRT2 *
                     (c.a_plus * (harm(m - 2) + hm) +
                      c.a_minus * (hm + harm(m + 2)));
  const cplx dz_az = I * p.k_z * c.a_zero * hm;
  return (dx_ax + dy_ay + dz_az) * ez;
}

FieldSample sample_fields(const BeamParams& p, const CylPoint& at) {
  FieldSample s;
  s.position = at;
  s.a0 = vector_potential_closed(p, at);
  s.e0 = s.a0 * (I * p.omega());
  s.b0 = magnetic_field(p, at);
  return s;
}

PoyntingCyl poynting_closed(const BeamParams& p, double rho) {
  if (rho < 0.0)
    throw std::invalid_argument("poynting_closed: rho must be >= 0");
  const double th = p.theta_k();
  const double u = std::cos(0.5 * th) * std::cos(0.5 * th);
  const double v = std::sin(0.5 * th) * std::sin(0.5 * th);
  const double x = p.kappa * rho;
  const double jm = math::bessel_j(p.m_gamma, x);
  const double ja = math::bessel_j(p.m_gamma - p.lambda, x);
  const double jb = math::bessel_j(p.m_gamma + p.lambda, x);
  const double w = p.omega();
  const double pref = p.kappa * w * w / (4.0 * PI) * p.e0 * p.e0;
  PoyntingCyl s;
  s.s_rho = 0.0;
  s.s_phi = pref * std::sin(th) * jm * (u * ja + v * jb);
  s.s_z = pref * (u * u * ja * ja - v * v * jb * jb);
  return s;
}

Vec3 poynting_from_fields(const BeamParams& p, const CylPoint& at) {
  const CVec3 e = electric_field(p, at);
  const CVec3 b = magnetic_field(p, at);
  const CVec3 s = cross(e, conj(b));
  return {0.5 * s.x.real(), 0.5 * s.y.real(), 0.5 * s.z.real()};
}

double poynting_calibration() {
  static const double c0 = [] {
    const BeamParams ref(0.3, 0.9, 1, 1, 1.0);
    const double rho = 0.7 / ref.kappa;
    const Vec3 sf = poynting_from_fields(ref, {rho, 0.3, 0.0});
    const PoyntingCyl sc = poynting_closed(ref, rho);
    return sf.z / sc.s_z;
  }();
  return c0;
}

double mean_e_sq(const BeamParams& p, const CylPoint& at) {
  const CVec3 e = electric_field(p, at);
  return 0.5 * (std::norm(e.x) + std::norm(e.y) + std::norm(e.z));
}

CVec3 te_mode(const BeamParams& p, const CylPoint& at) {
  check_point(at);
  const int m = p.m_gamma;
  const double x = p.kappa * at.rho;
  const cplx ez = std::exp(I * p.k_z * at.z);
  const auto psi = [&](int n) {
    return math::bessel_j(n, x) * std::exp(I * static_cast<double>(n) * at.phi);
  };
  HelicityAmps h;
  const cplx pre = p.e0 / (I * p.k_z * SQRT2) * ez;
  h.plus = pre * psi(m - 1);
  h.minus = -pre * psi(m + 1);
  h.zero = 0.0;
  return from_helicity(h);
}

CVec3 tm_mode(const BeamParams& p, const CylPoint& at) {
  check_point(at);
  const int m = p.m_gamma;
  const double x = p.kappa * at.rho;
  const double th = p.theta_k();
  const cplx ez = std::exp(I * p.k_z * at.z);
  const auto psi = [&](int n) {
    return math::bessel_j(n, x) * std::exp(I * static_cast<double>(n) * at.phi);
  };
  HelicityAmps h;
  const cplx pre = -p.e0 / (p.omega() * SQRT2) * ez;
  h.plus = pre * psi(m - 1);
  h.minus = pre * psi(m + 1);
  h.zero = pre * I * SQRT2 * std::tan(th) * psi(m);
  return from_helicity(h);
}

} // namespace twistbeam::beam
