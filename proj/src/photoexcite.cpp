#include "twistbeam/photoexcite.hpp"

#include <cmath>
#include <numbers>

namespace twistbeam::photo {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double PI = std::numbers::pi;
const double SQRT2 = std::numbers::sqrt2;

void require_profile_model(const CmState& s, const char* where) {
  if (s.model() == CmState::Model::DeltaLocalized)
    throw std::invalid_argument(std::string(where) +
                                ": delta-localized CM state not usable here; "
                                "use amplitude_localized");
}

} // namespace

AtomicOrbital::AtomicOrbital(int n_, int l_, int m_) : n(n_), l(l_), m(m_) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("AtomicOrbital: n out of range [1,6]");
  if (l < 0 || l >= n)
    throw std::invalid_argument("AtomicOrbital: need 0 <= l < n");
  if (std::abs(m) > l)
    throw std::invalid_argument("AtomicOrbital: need |m| <= l");
}

CmState CmState::delta_localized(double b, double phi_b) {
  if (b < 0.0)
    throw std::invalid_argument("CmState: b must be >= 0");
  CmState s;
  s.model_ = Model::DeltaLocalized;
  s.b_ = b;
  s.phi_b_ = phi_b;
  return s;
}

CmState CmState::gaussian_ring(double b, double width, int m_R) {
  if (!(width > 0.0))
    throw std::invalid_argument("CmState: ring width must be > 0");
  if (b < 0.0)
    throw std::invalid_argument("CmState: b must be >= 0");
  CmState s;
  s.model_ = Model::GaussianRing;
  s.b_ = b;
  s.width_ = width;
  s.m_R_ = m_R;
  const double wz = width / 10.0;
  s.window_.r_lo = std::max(0.0, b - 10.0 * width);
  s.window_.r_hi = b + 10.0 * width;
  s.window_.z_half = 10.0 * wz;
  // 1/sqrt(R) factor makes the radial probability density R |Y|^2 an exact
  // Gaussian centered at b, so the sharp-ring limit lands on J(kappa b)
  // without the measure-shift bias.
  s.raw_profile_ = [b, width, wz](double r, double z) {
    const double dr = (r - b) / (2.0 * width);
    const double dz = z / (2.0 * wz);
    return std::exp(-dr * dr - dz * dz) / std::sqrt(std::max(r, 1e-20));
  };
  s.normalize();
  return s;
}

CmState CmState::lz_eigenstate(int m_R,
                               std::function<double(double, double)> profile,
                               Window window) {
  if (!profile)
    throw std::invalid_argument("CmState: missing profile");
  if (!(window.r_hi > window.r_lo) || !(window.z_half > 0.0))
    throw std::invalid_argument("CmState: invalid integration window");
  CmState s;
  s.model_ = Model::LzEigenstate;
  s.m_R_ = m_R;
  s.raw_profile_ = std::move(profile);
  s.window_ = window;
  s.normalize();
  return s;
}

void CmState::normalize() {
  const auto rr = math::mapped_rule(128, window_.r_lo, window_.r_hi);
  const auto rz = math::mapped_rule(128, -window_.z_half, window_.z_half);
  double acc = 0.0;
  for (size_t i = 0; i < rr.x.size(); ++i) {
    double zacc = 0.0;
    for (size_t j = 0; j < rz.x.size(); ++j) {
      const double y = raw_profile_(rr.x[i], rz.x[j]);
      zacc += rz.w[j] * y * y;
    }
    acc += rr.w[i] * rr.x[i] * zacc;
  }
  if (!(acc > 0.0))
    throw std::invalid_argument("CmState: profile has zero norm on window");
  norm_ = 1.0 / std::sqrt(acc);
}

double CmState::profile(double r_perp, double z) const {
  if (model_ == Model::DeltaLocalized)
    throw std::invalid_argument("CmState: delta model has no profile");
  return norm_ * raw_profile_(r_perp, z);
}

double CmState::d_profile_dr(double r_perp, double z) const {
  if (model_ == Model::GaussianRing)
    return (-(r_perp - b_) / (2.0 * width_ * width_) - 0.5 / r_perp) *
           profile(r_perp, z);
  const double h = 1e-6 * (window_.r_hi - window_.r_lo);
  return (profile(r_perp + h, z) - profile(r_perp - h, z)) / (2.0 * h);
}

double CmState::d_profile_dz(double r_perp, double z) const {
  if (model_ == Model::GaussianRing) {
    const double wz = width_ / 10.0;
    return -z / (2.0 * wz * wz) * profile(r_perp, z);
  }
  const double h = 1e-6 * window_.z_half;
  return (profile(r_perp, z + h) - profile(r_perp, z - h)) / (2.0 * h);
}

double CmState::normalization_residual() const {
  const auto rr = math::mapped_rule(160, window_.r_lo, window_.r_hi);
  const auto rz = math::mapped_rule(160, -window_.z_half, window_.z_half);
  double acc = 0.0;
  for (size_t i = 0; i < rr.x.size(); ++i)
    for (size_t j = 0; j < rz.x.size(); ++j) {
      const double y = profile(rr.x[i], rz.x[j]);
      acc += rr.w[i] * rz.w[j] * rr.x[i] * y * y;
    }
  return acc - 1.0;
}

double physical_wavenumber(int n_f) {
  if (n_f < 2 || n_f > 6)
    throw std::invalid_argument("physical_wavenumber: n_f out of range [2,6]");
  const double omega_hartree = 0.5 * (1.0 - 1.0 / (static_cast<double>(n_f) * n_f));
  return omega_hartree / constants::speed_of_light;
}

namespace {

// Relative-coordinate integral shared by the atomic factors (R'_10 against
// Y_1lambda) and the CM-derivative overlap (R_10, no polarization harmonic).
cplx relative_integral(const AtomicOrbital& f, int bessel_index,
                       bool with_polarization, int lambda_pol,
                       bool use_radial_deriv, const BeamParams& bp,
                       const AtomConfig& atom, int n_radial, int n_angular,
                       double r_max) {
  const double rpm = atom.ratio_pM();
  const double kap = rpm * bp.kappa;
  const double kz = rpm * bp.k_z;
  const auto rr = math::mapped_rule(n_radial, 0.0, r_max);
  const auto rc = math::mapped_rule(n_angular, -1.0, 1.0);

  cplx acc = 0.0;
  for (int ic = 0; ic < n_angular; ++ic) {
    const double c = rc.x[ic];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double theta = std::acos(c);
    double ang = math::sph_harm_phi0(f.l, f.m, theta);
    if (with_polarization)
      ang *= math::sph_harm_phi0(1, lambda_pol, theta);
    if (ang == 0.0)
      continue;
    cplx racc = 0.0;
    for (int ir = 0; ir < n_radial; ++ir) {
      const double r = rr.x[ir];
      const double radial =
          math::hydrogen_radial(f.n, f.l, r) *
          (use_radial_deriv ? math::hydrogen_radial_deriv(1, 0, r)
                            : math::hydrogen_radial(1, 0, r));
      const double bes = math::bessel_j(bessel_index, kap * r * s);
      racc += rr.w[ir] * r * r * radial * bes * std::exp(I * (kz * r * c));
    }
    acc += rc.w[ic] * ang * racc;
  }
  return acc;
}

cplx atomic_factor_g_raw(const AtomicOrbital& f, int lambda_pol,
                         const BeamParams& bp, const AtomConfig& atom,
                         int n_radial, int n_angular, double r_max) {
  return -atom.a0 * relative_integral(f, f.m - lambda_pol, true, lambda_pol,
                                      true, bp, atom, n_radial, n_angular,
                                      r_max);
}

} // namespace

cplx atomic_factor_g(const AtomicOrbital& final_state, int lambda_pol,
                     const BeamParams& bp, const AtomConfig& atom,
                     const QuadratureSpec& quad, bool check_convergence) {
  if (lambda_pol < -1 || lambda_pol > 1)
    throw std::invalid_argument("atomic_factor_g: lambda_pol in {-1,0,+1}");
  quad.validate();
  const cplx g = atomic_factor_g_raw(final_state, lambda_pol, bp, atom,
                                     quad.n_radial, quad.n_angular, quad.r_max);
  if (check_convergence) {
    const cplx g2 =
        atomic_factor_g_raw(final_state, lambda_pol, bp, atom,
                            2 * quad.n_radial, 2 * quad.n_angular, quad.r_max);
    const double scale = std::max(std::abs(g2), 1e-30);
    if (std::abs(g - g2) > 1e-8 * scale)
      throw PrecisionError("atomic_factor_g: quadrature doubling test failed");
  }
  return g;
}

namespace {

// theta_k-weighted polarization bracket of the relative-momentum amplitude:
// cos^2(tk/2) g_{f,L} + (i/sqrt2) sin(tk) g_{f,0} - sin^2(tk/2) g_{f,-L}.
cplx g_bracket(const BeamParams& bp, const AtomConfig& atom,
               const AtomicOrbital& f, const QuadratureSpec& quad,
               bool check_convergence = false) {
  const double th = bp.theta_k();
  const double u = std::cos(0.5 * th) * std::cos(0.5 * th);
  const double v = std::sin(0.5 * th) * std::sin(0.5 * th);
  const cplx gl = atomic_factor_g(f, bp.lambda, bp, atom, quad, check_convergence);
  const cplx g0 = atomic_factor_g(f, 0, bp, atom, quad, check_convergence);
  const cplx gm = atomic_factor_g(f, -bp.lambda, bp, atom, quad, check_convergence);
  return u * gl + (I / SQRT2) * std::sin(th) * g0 - v * gm;
}

cplx rel_prefactor(const BeamParams& bp, const AtomConfig& atom) {
  return -(atom.e1 * bp.lambda / (atom.m_e * atom.a0)) * bp.e0 *
         std::sqrt(2.0 * PI * bp.kappa / 3.0);
}

} // namespace

AmplitudeRecord amplitude_localized(const BeamParams& bp,
                                    const AtomConfig& atom,
                                    const AtomicOrbital& final_state, double b,
                                    double phi_b, const QuadratureSpec& quad) {
  if (b < 0.0)
    throw std::invalid_argument("amplitude_localized: b must be >= 0");
  AmplitudeRecord rec;
  rec.m_gamma = bp.m_gamma;
  rec.lambda = bp.lambda;
  rec.n_f = final_state.n;
  rec.l_f = final_state.l;
  rec.m_f = final_state.m;
  rec.b = b;
  rec.theta_k = bp.theta_k();
  rec.contribution = AmplitudeRecord::Contribution::Rel;
  const cplx bracket = g_bracket(bp, atom, final_state, quad);
  const double jb = math::bessel_j(final_state.m - bp.m_gamma, bp.kappa * b);
  const cplx phase =
      std::exp(I * (static_cast<double>(bp.m_gamma - final_state.m) * phi_b));
  rec.value = rel_prefactor(bp, atom) * phase * jb * bracket;
  return rec;
}

cplx G_tilde_FI(const CmState& cm_initial, const CmState& cm_final,
                const BeamParams& bp, int delta_m, const QuadratureSpec& quad) {
  require_profile_model(cm_initial, "G_tilde_FI");
  require_profile_model(cm_final, "G_tilde_FI");
  quad.validate();
  const double r_lo = std::min(cm_initial.window().r_lo, cm_final.window().r_lo);
  const double r_hi = std::max(cm_initial.window().r_hi, cm_final.window().r_hi);
  const double z_half =
      std::max(cm_initial.window().z_half, cm_final.window().z_half);
  const auto rr = math::mapped_rule(quad.n_radial, r_lo, r_hi);
  const auto rz = math::mapped_rule(quad.n_angular, -z_half, z_half);
  cplx acc = 0.0;
  for (int i = 0; i < quad.n_radial; ++i) {
    const double rp = rr.x[i];
    const double bes = math::bessel_j(delta_m, bp.kappa * rp);
    cplx zacc = 0.0;
    for (int j = 0; j < quad.n_angular; ++j) {
      const double z = rz.x[j];
      zacc += rz.w[j] * cm_final.profile(rp, z) * cm_initial.profile(rp, z) *
              std::exp(I * (bp.k_z * z));
    }
    acc += rr.w[i] * rp * bes * zacc;
  }
  return acc;
}

AmplitudeRecord amplitude_lz(const BeamParams& bp, const AtomConfig& atom,
                             const AtomicOrbital& final_state, int m_R,
                             int m_R_prime, const CmState& cm_initial,
                             const CmState& cm_final,
                             const QuadratureSpec& quad) {
  AmplitudeRecord rec;
  rec.m_gamma = bp.m_gamma;
  rec.lambda = bp.lambda;
  rec.n_f = final_state.n;
  rec.l_f = final_state.l;
  rec.m_f = final_state.m;
  rec.b = cm_initial.b();
  rec.theta_k = bp.theta_k();
  rec.contribution = AmplitudeRecord::Contribution::Rel;
  rec.m_R = m_R;
  rec.m_R_prime = m_R_prime;
  // Kronecker delta of Z-angular-momentum conservation.
  if (m_R_prime - m_R != bp.m_gamma - final_state.m) {
    rec.value = 0.0;
    return rec;
  }
  const cplx gt = G_tilde_FI(cm_initial, cm_final, bp, m_R_prime - m_R, quad);
  const cplx bracket = g_bracket(bp, atom, final_state, quad);
  rec.value = rel_prefactor(bp, atom) * gt * bracket;
  return rec;
}

cplx g_fi_overlap(const AtomicOrbital& final_state, const BeamParams& bp,
                  const AtomConfig& atom, const QuadratureSpec& quad) {
  quad.validate();
  return relative_integral(final_state, final_state.m, false, 0, false, bp,
                           atom, quad.n_radial, quad.n_angular, quad.r_max);
}

cplx G_FI_lambda(const CmState& cm_initial, const CmState& cm_final,
                 const BeamParams& bp, int delta_m, int lambda_pol,
                 const QuadratureSpec& quad) {
  require_profile_model(cm_initial, "G_FI_lambda");
  require_profile_model(cm_final, "G_FI_lambda");
  if (lambda_pol < -1 || lambda_pol > 1)
    throw std::invalid_argument("G_FI_lambda: lambda_pol in {-1,0,+1}");
  quad.validate();
  const double r_lo = std::min(cm_initial.window().r_lo, cm_final.window().r_lo);
  const double r_hi = std::max(cm_initial.window().r_hi, cm_final.window().r_hi);
  const double z_half =
      std::max(cm_initial.window().z_half, cm_final.window().z_half);
  const auto rr = math::mapped_rule(quad.n_radial, r_lo, r_hi);
  const auto rz = math::mapped_rule(quad.n_angular, -z_half, z_half);
  const int m_R = cm_initial.m_R();
  cplx acc = 0.0;
  for (int i = 0; i < quad.n_radial; ++i) {
    const double rp = rr.x[i];
    const double bes = math::bessel_j(delta_m - lambda_pol, bp.kappa * rp);
    cplx zacc = 0.0;
    for (int j = 0; j < quad.n_angular; ++j) {
      const double z = rz.x[j];
      double dY;
      if (lambda_pol == 0) {
        dY = cm_initial.d_profile_dz(rp, z);
      } else {
        // (1/sqrt2)(-lambda d/dR_perp + m_R / R_perp) Y_I
        dY = (-lambda_pol * cm_initial.d_profile_dr(rp, z) +
              m_R * cm_initial.profile(rp, z) / rp) /
             SQRT2;
      }
      zacc += rz.w[j] * cm_final.profile(rp, z) * std::exp(I * (bp.k_z * z)) * dY;
    }
    acc += rr.w[i] * rp * bes * zacc;
  }
  return -1.0 * acc; // -a0 prefactor, a0 = 1
}

AmplitudeRecord amplitude_cm(const BeamParams& bp, const AtomConfig& atom,
                             const AtomicOrbital& final_state,
                             const CmState& cm_initial, const CmState& cm_final,
                             const QuadratureSpec& quad) {
  require_profile_model(cm_initial, "amplitude_cm");
  require_profile_model(cm_final, "amplitude_cm");
  AmplitudeRecord rec;
  rec.m_gamma = bp.m_gamma;
  rec.lambda = bp.lambda;
  rec.n_f = final_state.n;
  rec.l_f = final_state.l;
  rec.m_f = final_state.m;
  rec.b = cm_initial.b();
  rec.theta_k = bp.theta_k();
  rec.contribution = AmplitudeRecord::Contribution::Cm;
  rec.m_R = cm_initial.m_R();
  rec.m_R_prime = cm_final.m_R();
  const int delta_m = rec.m_R_prime - rec.m_R;
  if (delta_m != bp.m_gamma - final_state.m) {
    rec.value = 0.0;
    return rec;
  }
  const double th = bp.theta_k();
  const double u = std::cos(0.5 * th) * std::cos(0.5 * th);
  const double v = std::sin(0.5 * th) * std::sin(0.5 * th);
  const cplx gfi = g_fi_overlap(final_state, bp, atom, quad);
  const cplx gL = G_FI_lambda(cm_initial, cm_final, bp, delta_m, bp.lambda, quad);
  const cplx g0 = G_FI_lambda(cm_initial, cm_final, bp, delta_m, 0, quad);
  const cplx gM = G_FI_lambda(cm_initial, cm_final, bp, delta_m, -bp.lambda, quad);
  const cplx bracket = u * gL + (I / SQRT2) * std::sin(th) * g0 - v * gM;
  const cplx pref = -(atom.e1 * bp.lambda / (atom.total_mass() * atom.a0)) *
                    bp.e0 * std::sqrt(bp.kappa / 2.0);
  rec.value = pref * gfi * bracket;
  return rec;
}

std::vector<AmplitudeRecord> scan_amplitudes(const BeamParams& bp,
                                             const AtomConfig& atom, int n_f,
                                             int l_f,
                                             const std::vector<int>& m_f_list,
                                             const std::vector<double>& b_grid,
                                             const QuadratureSpec& quad) {
  std::vector<AmplitudeRecord> out;
  out.reserve(m_f_list.size() * b_grid.size());
  const cplx pref = rel_prefactor(bp, atom);
  for (int m_f : m_f_list) {
    const AtomicOrbital f(n_f, l_f, m_f);
    // One bracket per m_f (convergence-checked); the b dependence is a
    // single Bessel factor.
    const cplx bracket = g_bracket(bp, atom, f, quad, true);
    for (double b : b_grid) {
      AmplitudeRecord rec;
      rec.m_gamma = bp.m_gamma;
      rec.lambda = bp.lambda;
      rec.n_f = n_f;
      rec.l_f = l_f;
      rec.m_f = m_f;
      rec.b = b;
      rec.theta_k = bp.theta_k();
      rec.contribution = AmplitudeRecord::Contribution::Rel;
      rec.value = pref * math::bessel_j(m_f - bp.m_gamma, bp.kappa * b) * bracket;
      out.push_back(rec);
    }
  }
  return out;
}

} // namespace twistbeam::photo
