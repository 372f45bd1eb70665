#pragma once

#include <complex>

#include "twistbeam/beam.hpp"

namespace twistbeam::forces {

using beam::BeamParams;
using beam::CylPoint;
using beam::Vec3;
using cplx = std::complex<double>;

// Dipole response p0 = alpha E0 of a small particle; Im(alpha) >= 0
// (absorption / radiation reaction).
struct ParticleResponse {
  cplx alpha;
  explicit ParticleResponse(cplx alpha_);
  double sigma(double omega) const { return omega * alpha.imag(); }
};

struct ForceBreakdown {
  Vec3 total, gradient, poynting, spin_curl;
};

// Thin absorptive disk on the beam axis, facing the beam (normal +z).
struct DiskGeometry {
  double radius; // a0
  double z_center = 0.0;
  explicit DiskGeometry(double radius_, double z_center_ = 0.0);
};

double default_fd_step(const BeamParams& bp); // 1e-4 * (2 pi / kappa)

// Time-averaged dipole force <F> = (1/2) Re(alpha E0 . (grad) E0*), spatial
// derivatives by Richardson-extrapolated central differences. Throws
// PrecisionError if the two step sizes disagree beyond 1e-6 relative.
Vec3 force_dipole(const BeamParams& bp, const ParticleResponse& particle,
                  const CylPoint& at, double fd_step);

// Gradient / Poynting / spin-curl split; total recomputed via force_dipole.
ForceBreakdown force_decomposition(const BeamParams& bp,
                                   const ParticleResponse& particle,
                                   const CylPoint& at, double fd_step);

// Analytic d|E0|^2/drho via Bessel recurrences (cross-check for the
// finite-difference gradient path).
double grad_e0sq_radial_analytic(const BeamParams& bp, double rho);

struct Mat3 {
  double m[3][3] = {};
};

// Time-averaged Maxwell stress tensor <T_ij>.
Mat3 stress_tensor_avg(const BeamParams& bp, const CylPoint& at);

// <F_z> = - int over the front face of <T_zz>, free fields in front and
// zero behind; radial Gauss-Legendre quadrature with n_radial_quad nodes.
double force_absorptive_disk(const BeamParams& bp, const DiskGeometry& disk,
                             int n_radial_quad);

} // namespace twistbeam::forces
