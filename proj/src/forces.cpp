#include "twistbeam/forces.hpp"

#include <cmath>
#include <numbers>

namespace twistbeam::forces {

namespace {

using beam::CVec3;
constexpr double PI = std::numbers::pi;

struct Cart {
  double x, y, z;
};

CylPoint to_cyl(const Cart& c) {
  return {std::hypot(c.x, c.y), std::atan2(c.y, c.x), c.z};
}

CVec3 e_at(const BeamParams& bp, const Cart& c) {
  return beam::electric_field(bp, to_cyl(c));
}

Cart shifted(const Cart& c, int axis, double h) {
  Cart s = c;
  (axis == 0 ? s.x : axis == 1 ? s.y : s.z) += h;
  return s;
}

// Richardson pair for one directional derivative of a complex 3-vector
// field. Returns the extrapolated derivative; *disagreement collects the
// largest |D(h) - D(h/2)| component seen so far.
CVec3 deriv_richardson(const BeamParams& bp, const Cart& at, int axis,
                       double h, double* disagreement, double* scale) {
  const CVec3 dh = (e_at(bp, shifted(at, axis, h)) -
                    e_at(bp, shifted(at, axis, -h))) *
                   (0.5 / h);
  const CVec3 dh2 = (e_at(bp, shifted(at, axis, 0.5 * h)) -
                     e_at(bp, shifted(at, axis, -0.5 * h))) *
                    (1.0 / h);
  const CVec3 diff = dh - dh2;
  *disagreement = std::max(*disagreement, diff.norm());
  const CVec3 rich = (dh2 * 4.0 - dh) * (1.0 / 3.0);
  *scale = std::max(*scale, rich.norm());
  return rich;
}

void check_fd(double disagreement, double scale, const char* where) {
  if (scale > 0.0 && disagreement > 1e-6 * scale)
    throw PrecisionError(std::string(where) +
                         ": finite-difference steps disagree beyond 1e-6");
}

Vec3 poynting_cartesian(const BeamParams& bp, const CylPoint& at) {
  const beam::PoyntingCyl s = beam::poynting_closed(bp, at.rho);
  const double c0 = beam::poynting_calibration();
  const double sp = std::sin(at.phi), cp = std::cos(at.phi);
  return {c0 * (-s.s_phi * sp), c0 * (s.s_phi * cp), c0 * s.s_z};
}

} // namespace

ParticleResponse::ParticleResponse(cplx alpha_) : alpha(alpha_) {
  if (alpha.imag() < 0.0)
    throw std::invalid_argument("ParticleResponse: Im(alpha) must be >= 0");
}

DiskGeometry::DiskGeometry(double radius_, double z_center_)
    : radius(radius_), z_center(z_center_) {
  if (!(radius > 0.0))
    throw std::invalid_argument("DiskGeometry: radius must be > 0");
}

double default_fd_step(const BeamParams& bp) {
  // 5e-5 of the full wavelength keeps every phase increment near 3e-4 rad
  // regardless of pitch angle; the transverse scale 2 pi / kappa fails the
  // step-agreement gate for theta_k <~ 0.1, and the quadratic-field
  // quantities (|E|^2, E x E^*) vary at twice the wavenumber.
  return 5e-5 * (2.0 * PI / bp.omega());
}

Vec3 force_dipole(const BeamParams& bp, const ParticleResponse& particle,
                  const CylPoint& at, double fd_step) {
  if (!(fd_step > 0.0))
    throw std::invalid_argument("force_dipole: fd_step must be > 0");
  const Cart c{at.rho * std::cos(at.phi), at.rho * std::sin(at.phi), at.z};
  const CVec3 e = e_at(bp, c);
  double disagreement = 0.0, scale = 0.0;
  CVec3 grad[3];
  for (int i = 0; i < 3; ++i)
    grad[i] = deriv_richardson(bp, c, i, fd_step, &disagreement, &scale);
  check_fd(disagreement, scale, "force_dipole");
  Vec3 f;
  double* out[3] = {&f.x, &f.y, &f.z};
  for (int i = 0; i < 3; ++i) {
    // sum_j E_j d_i E_j^*
    const cplx s = e.x * std::conj(grad[i].x) + e.y * std::conj(grad[i].y) +
                   e.z * std::conj(grad[i].z);
    *out[i] = 0.5 * (particle.alpha * s).real();
  }
  return f;
}

ForceBreakdown force_decomposition(const BeamParams& bp,
                                   const ParticleResponse& particle,
                                   const CylPoint& at, double fd_step) {
  if (!(fd_step > 0.0))
    throw std::invalid_argument("force_decomposition: fd_step must be > 0");
  const Cart c{at.rho * std::cos(at.phi), at.rho * std::sin(at.phi), at.z};
  const double omega = bp.omega();
  const double sigma = particle.sigma(omega);

  // |E0|^2 and Im(E0 x E0^*) on the finite-difference stencil.
  const auto esq = [&](const Cart& p) {
    const CVec3 e = e_at(bp, p);
    return std::norm(e.x) + std::norm(e.y) + std::norm(e.z);
  };
  const auto spin_vec = [&](const Cart& p) {
    const CVec3 e = e_at(bp, p);
    const CVec3 w = beam::cross(e, beam::conj(e));
    return Vec3{w.x.imag(), w.y.imag(), w.z.imag()};
  };

  double disagreement = 0.0, scale = 0.0;
  double grad_esq[3];
  for (int i = 0; i < 3; ++i) {
    const double dh = (esq(shifted(c, i, fd_step)) -
                       esq(shifted(c, i, -fd_step))) /
                      (2.0 * fd_step);
    const double dh2 = (esq(shifted(c, i, 0.5 * fd_step)) -
                        esq(shifted(c, i, -0.5 * fd_step))) /
                       fd_step;
    disagreement = std::max(disagreement, std::abs(dh - dh2));
    grad_esq[i] = (4.0 * dh2 - dh) / 3.0;
    scale = std::max(scale, std::abs(grad_esq[i]));
  }
  check_fd(disagreement, scale, "force_decomposition");

  // Jacobian of the spin vector, Richardson-extrapolated.
  double jac[3][3]; // jac[i][j] = d V_j / d x_i
  disagreement = 0.0;
  scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 vph = spin_vec(shifted(c, i, fd_step));
    const Vec3 vmh = spin_vec(shifted(c, i, -fd_step));
    const Vec3 vph2 = spin_vec(shifted(c, i, 0.5 * fd_step));
    const Vec3 vmh2 = spin_vec(shifted(c, i, -0.5 * fd_step));
    const double dh[3] = {(vph.x - vmh.x) / (2 * fd_step),
                          (vph.y - vmh.y) / (2 * fd_step),
                          (vph.z - vmh.z) / (2 * fd_step)};
    const double dh2[3] = {(vph2.x - vmh2.x) / fd_step,
                           (vph2.y - vmh2.y) / fd_step,
                           (vph2.z - vmh2.z) / fd_step};
    for (int j = 0; j < 3; ++j) {
      disagreement = std::max(disagreement, std::abs(dh[j] - dh2[j]));
      jac[i][j] = (4.0 * dh2[j] - dh[j]) / 3.0;
      scale = std::max(scale, std::abs(jac[i][j]));
    }
  }
  check_fd(disagreement, scale, "force_decomposition");

  ForceBreakdown fb;
  const double re_alpha = particle.alpha.real();
  fb.gradient = {0.25 * re_alpha * grad_esq[0], 0.25 * re_alpha * grad_esq[1],
                 0.25 * re_alpha * grad_esq[2]};
  const Vec3 s = poynting_cartesian(bp, at);
  fb.poynting = {sigma * s.x, sigma * s.y, sigma * s.z};
  const double sc = sigma / (4.0 * omega);
  fb.spin_curl = {sc * (jac[1][2] - jac[2][1]), sc * (jac[2][0] - jac[0][2]),
                  sc * (jac[0][1] - jac[1][0])};
  fb.total = force_dipole(bp, particle, at, fd_step);

  const double sum_norm =
      std::hypot(fb.gradient.x + fb.poynting.x + fb.spin_curl.x - fb.total.x,
                 fb.gradient.y + fb.poynting.y + fb.spin_curl.y - fb.total.y,
                 fb.gradient.z + fb.poynting.z + fb.spin_curl.z - fb.total.z);
  const double ref = std::max(
      {std::hypot(fb.total.x, fb.total.y, fb.total.z),
       std::hypot(fb.gradient.x, fb.gradient.y, fb.gradient.z),
       std::hypot(fb.poynting.x, fb.poynting.y, fb.poynting.z),
       std::hypot(fb.spin_curl.x, fb.spin_curl.y, fb.spin_curl.z)});
  if (ref > 0.0 && sum_norm > 1e-7 * ref)
    throw PrecisionError("force_decomposition: terms do not sum to the total");
  return fb;
}

double grad_e0sq_radial_analytic(const BeamParams& bp, double rho) {
  if (rho < 0.0)
    throw std::invalid_argument("grad_e0sq_radial_analytic: rho >= 0");
  const double th = bp.theta_k();
  const double u = std::cos(0.5 * th) * std::cos(0.5 * th);
  const double v = std::sin(0.5 * th) * std::sin(0.5 * th);
  const double st = std::sin(th);
  const double x = bp.kappa * rho;
  const int m = bp.m_gamma;
  const double w = bp.omega();
  const double pref = w * w * bp.e0 * bp.e0 * bp.kappa / (2.0 * PI);
  const double ja = math::bessel_j(m - bp.lambda, x);
  const double jb = math::bessel_j(m + bp.lambda, x);
  const double jm = math::bessel_j(m, x);
  const double dja = math::bessel_j_prime(m - bp.lambda, x);
  const double djb = math::bessel_j_prime(m + bp.lambda, x);
  const double djm = math::bessel_j_prime(m, x);
  // |E0|^2 = pref (u^2 J_a^2 + v^2 J_b^2 + (sin^2 th / 2) J_m^2)
  return pref * bp.kappa *
         (2.0 * u * u * ja * dja + 2.0 * v * v * jb * djb +
          st * st * jm * djm);
}

Mat3 stress_tensor_avg(const BeamParams& bp, const CylPoint& at) {
  const CVec3 e = beam::electric_field(bp, at);
  const CVec3 b = beam::magnetic_field(bp, at);
  const cplx ec[3] = {e.x, e.y, e.z};
  const cplx bc[3] = {b.x, b.y, b.z};
  const double e2 = std::norm(e.x) + std::norm(e.y) + std::norm(e.z);
  const double b2 = std::norm(b.x) + std::norm(b.y) + std::norm(b.z);
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      t.m[i][j] = 0.5 * (ec[i] * std::conj(ec[j]) + bc[i] * std::conj(bc[j])).real();
      if (i == j)
        t.m[i][j] -= 0.25 * (e2 + b2);
    }
  return t;
}

namespace {

double disk_force_with_n(const BeamParams& bp, const DiskGeometry& disk, int n) {
  const auto rule = math::mapped_rule(n, 0.0, disk.radius);
  double acc = 0.0;
  for (size_t i = 0; i < rule.x.size(); ++i) {
    const double rho = rule.x[i];
    const Mat3 t = stress_tensor_avg(bp, {rho, 0.0, disk.z_center});
    acc += rule.w[i] * 2.0 * PI * rho * t.m[2][2];
  }
  return -acc;
}

} // namespace

double force_absorptive_disk(const BeamParams& bp, const DiskGeometry& disk,
                             int n_radial_quad) {
  if (n_radial_quad < 2)
    throw std::invalid_argument("force_absorptive_disk: need n >= 2");
  const double f = disk_force_with_n(bp, disk, n_radial_quad);
  const double f2 = disk_force_with_n(bp, disk, 2 * n_radial_quad);
  if (std::abs(f - f2) > 1e-9 * std::max(std::abs(f2), 1e-300))
    throw PrecisionError("force_absorptive_disk: quadrature not converged");
  return f;
}

} // namespace twistbeam::forces
