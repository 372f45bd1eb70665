#pragma once

#include <complex>

#include "twistbeam/math_core.hpp"

namespace twistbeam::beam {

using cplx = std::complex<double>;

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

// Complex 3-vector in Cartesian components. Helicity components live in
// HelicityAmps; the two representations convert exactly (round trip ~1e-16).
struct CVec3 {
  cplx x{}, y{}, z{};

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }
  double norm() const {
    return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z));
  }
};

inline CVec3 operator*(cplx s, const CVec3& v) { return v * s; }

// Bilinear dot product (no conjugation), as in A.p operator products.
inline cplx dot(const CVec3& a, const CVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline CVec3 conj(const CVec3& v) {
  return {std::conj(v.x), std::conj(v.y), std::conj(v.z)};
}

// Components on the helicity basis eta_{+1} = (-1,-i,0)/sqrt2,
// eta_{-1} = (1,-i,0)/sqrt2, eta_0 = (0,0,1).
struct HelicityAmps {
  cplx plus{}, minus{}, zero{};
};

HelicityAmps to_helicity(const CVec3& v);
CVec3 from_helicity(const HelicityAmps& h);

// Bessel-mode parameters. kappa and k_z are in 1/a0; omega() = |k| is the
// frequency in the c = 1 wave units used by all field formulas.
struct BeamParams {
  double kappa;
  double k_z;
  int m_gamma;
  int lambda; // plane-wave helicity, +1 or -1
  double e0;  // field-amplitude scale

  BeamParams(double kappa_, double k_z_, int m_gamma_, int lambda_,
             double e0_ = 1.0);

  static BeamParams from_pitch(double k_mag, double theta_k, int m_gamma,
                               int lambda, double e0 = 1.0);

  double omega() const { return std::hypot(kappa, k_z); }
  double theta_k() const { return std::atan2(kappa, k_z); }
  double wavelength() const; // 2 pi / |k|, in a0
};

struct CylPoint {
  double rho = 0, phi = 0, z = 0; // rho, z in a0
};

// Polarization vector of a plane-wave component with momentum direction
// (theta_k, phi_k) and helicity lambda.
CVec3 polarization_vector(double theta_k, double phi_k, int lambda);

// Spatial envelope A0 of the Bessel mode (physical field Re(A0 e^{-i w t})).
CVec3 vector_potential_closed(const BeamParams& p, const CylPoint& at);

// Same quantity as a trapezoidal phi_k integral over the plane-wave cone;
// cross-validation oracle for the closed form. n_phi >= 64.
CVec3 vector_potential_integral(const BeamParams& p, const CylPoint& at,
                                int n_phi);

CVec3 electric_field(const BeamParams& p, const CylPoint& at); // E0 = i w A0
CVec3 magnetic_field(const BeamParams& p, const CylPoint& at); // B0 = curl A0

// Analytic divergence of A0 (vanishes identically; exposed for checks).
cplx divergence_a_closed(const BeamParams& p, const CylPoint& at);

struct FieldSample {
  CylPoint position;
  CVec3 a0, e0, b0;
};
FieldSample sample_fields(const BeamParams& p, const CylPoint& at);

// Time-averaged Poynting vector in cylindrical components, closed form.
struct PoyntingCyl {
  double s_rho = 0, s_phi = 0, s_z = 0;
};
PoyntingCyl poynting_closed(const BeamParams& p, double rho);

// (1/2) Re(E0 x B0*) in Cartesian components at the given point.
Vec3 poynting_from_fields(const BeamParams& p, const CylPoint& at);

// Ratio of the field-product Poynting flux to the closed form, measured once
// at a reference point. Equals 1 with the conventions used here.
double poynting_calibration();

// Time-averaged intensity <E(t)^2> = |E0|^2 / 2.
double mean_e_sq(const BeamParams& p, const CylPoint& at);

// TE/TM Bessel modes, linearly equivalent to the lambda = +-1 pair.
CVec3 te_mode(const BeamParams& p, const CylPoint& at);
CVec3 tm_mode(const BeamParams& p, const CylPoint& at);

} // namespace twistbeam::beam
