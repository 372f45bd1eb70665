#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "twistbeam/beam.hpp"
#include "twistbeam/constants.hpp"
#include "twistbeam/math_core.hpp"

namespace twistbeam::photo {

using cplx = std::complex<double>;
using beam::BeamParams;
using math::QuadratureSpec;

struct AtomicOrbital {
  int n, l, m;
  AtomicOrbital(int n_, int l_, int m_);
};

struct AtomConfig {
  double m_e = 1.0;
  double mass_ratio = constants::proton_electron_mass_ratio; // m_p / m_e
  double a0 = 1.0;
  double e1 = -1.0; // electron charge
  // When false, the near-unity m_p/M factors inside the relative-coordinate
  // integrals are replaced by 1.
  bool exact_mass_factors = true;

  double total_mass() const { return m_e * (1.0 + mass_ratio); }
  double ratio_pM() const {
    return exact_mass_factors ? mass_ratio / (1.0 + mass_ratio) : 1.0;
  }
};

// Center-of-mass wave function model. The stored profile Y(R_perp, Z) is
// real and unit-normalized as int R_perp dR_perp dZ |Y|^2 = 1 (identical to
// the spherical-coordinate measure R^2 dR dcos(theta)).
class CmState {
public:
  enum class Model { DeltaLocalized, GaussianRing, LzEigenstate };

  struct Window {
    double r_lo = 0, r_hi = 0, z_half = 0;
  };

  static CmState delta_localized(double b, double phi_b);
  // Ring at radius b with radial Gaussian width w and polar width w/10.
  static CmState gaussian_ring(double b, double width, int m_R = 0);
  static CmState lz_eigenstate(int m_R,
                               std::function<double(double, double)> profile,
                               Window window);

  Model model() const { return model_; }
  int m_R() const { return m_R_; }
  double b() const { return b_; }
  double phi_b() const { return phi_b_; }
  double width() const { return width_; }
  const Window& window() const { return window_; }

  double profile(double r_perp, double z) const;
  double d_profile_dr(double r_perp, double z) const;
  double d_profile_dz(double r_perp, double z) const;
  bool has_analytic_partials() const { return model_ == Model::GaussianRing; }

  // Residual of the unit-normalization quadrature (diagnostic).
  double normalization_residual() const;

private:
  CmState() = default;
  void normalize();

  Model model_ = Model::DeltaLocalized;
  int m_R_ = 0;
  double b_ = 0, phi_b_ = 0, width_ = 0;
  double norm_ = 1.0;
  std::function<double(double, double)> raw_profile_;
  Window window_;
};

struct AmplitudeRecord {
  enum class Contribution { Rel, Cm };
  cplx value{};
  int m_gamma = 0, lambda = 1;
  int n_f = 0, l_f = 0, m_f = 0;
  double b = 0;       // a0
  double theta_k = 0; // rad
  Contribution contribution = Contribution::Rel;
  int m_R = 0, m_R_prime = 0;
};

// Physical wavenumber (1/a0) of the 1S -> nP transition photon.
double physical_wavenumber(int n_f);

// Atomic factor g_{f lambda} of the relative-coordinate integral; complex in
// general, reduces to the real dipole value for kappa r, k_z r << 1.
// check_convergence reruns at doubled node counts and throws PrecisionError
// if the relative change exceeds 1e-8.
cplx atomic_factor_g(const AtomicOrbital& final_state, int lambda_pol,
                     const BeamParams& bp, const AtomConfig& atom,
                     const QuadratureSpec& quad, bool check_convergence = true);

// Photoexcitation amplitude of a target atom localized at impact parameter
// (b, phi_b) in the Z = 0 plane; 1S initial state.
AmplitudeRecord amplitude_localized(const BeamParams& bp,
                                    const AtomConfig& atom,
                                    const AtomicOrbital& final_state, double b,
                                    double phi_b, const QuadratureSpec& quad);

// CM overlap integral with Bessel index delta_m = m'_R - m_R. Requires
// profile-based models (gaussian_ring or lz_eigenstate).
cplx G_tilde_FI(const CmState& cm_initial, const CmState& cm_final,
                const BeamParams& bp, int delta_m, const QuadratureSpec& quad);

// Amplitude between L_Z-eigenstate CM wave functions. Exactly zero unless
// m'_R - m_R = m_gamma - m_f.
AmplitudeRecord amplitude_lz(const BeamParams& bp, const AtomConfig& atom,
                             const AtomicOrbital& final_state, int m_R,
                             int m_R_prime, const CmState& cm_initial,
                             const CmState& cm_final,
                             const QuadratureSpec& quad);

// Relative-coordinate overlap of the CM-derivative term.
cplx g_fi_overlap(const AtomicOrbital& final_state, const BeamParams& bp,
                  const AtomConfig& atom, const QuadratureSpec& quad);

// CM integral with the radial derivative operator acting on the initial
// profile; lambda_pol in {-1, 0, +1}.
cplx G_FI_lambda(const CmState& cm_initial, const CmState& cm_final,
                 const BeamParams& bp, int delta_m, int lambda_pol,
                 const QuadratureSpec& quad);

// CM-derivative contribution M_{e,R}; suppressed by m_e / M relative to the
// relative-coordinate amplitude unless the CM state is extremely localized.
AmplitudeRecord amplitude_cm(const BeamParams& bp, const AtomConfig& atom,
                             const AtomicOrbital& final_state,
                             const CmState& cm_initial, const CmState& cm_final,
                             const QuadratureSpec& quad);

// |amplitude_localized| over a grid of impact parameters for each m_f.
// b_grid is in a0; records ordered by (m_f, b).
std::vector<AmplitudeRecord> scan_amplitudes(const BeamParams& bp,
                                             const AtomConfig& atom, int n_f,
                                             int l_f,
                                             const std::vector<int>& m_f_list,
                                             const std::vector<double>& b_grid,
                                             const QuadratureSpec& quad);

} // namespace twistbeam::photo
