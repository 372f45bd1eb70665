#include "twistbeam.h"

#include <cstring>
#include <new>
#include <string>

#include "twistbeam/beam.hpp"
#include "twistbeam/forces.hpp"
#include "twistbeam/math_core.hpp"
#include "twistbeam/photoexcite.hpp"
#include "twistbeam/verify.hpp"

using twistbeam::PrecisionError;
namespace beam = twistbeam::beam;
namespace math = twistbeam::math;
namespace photo = twistbeam::photo;

struct tb_beam {
  beam::BeamParams params;
};

struct tb_cm_state {
  photo::CmState state;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
tb_status guarded(Fn&& fn) {
  try {
    fn();
    return TB_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return TB_ERROR_INVALID_ARGUMENT;
  } catch (const PrecisionError& e) {
    g_last_error = e.what();
    return TB_ERROR_PRECISION;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return TB_ERROR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TB_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TB_ERROR_INTERNAL;
  }
}

void require(bool cond, const char* msg) {
  if (!cond)
    throw std::invalid_argument(msg);
}

void write_cvec(const beam::CVec3& v, double re[3], double im[3]) {
  re[0] = v.x.real();
  re[1] = v.y.real();
  re[2] = v.z.real();
  im[0] = v.x.imag();
  im[1] = v.y.imag();
  im[2] = v.z.imag();
}

math::QuadratureSpec to_spec(const tb_quadrature* q, int n_f) {
  if (q == nullptr)
    return math::QuadratureSpec::for_final_state(n_f);
  math::QuadratureSpec s;
  s.n_radial = q->n_radial;
  s.n_angular = q->n_angular;
  s.r_max = q->r_max;
  return s;
}

photo::AtomConfig atom_config(int exact_mass_factors) {
  photo::AtomConfig a;
  a.exact_mass_factors = exact_mass_factors != 0;
  return a;
}

} // namespace

extern "C" {

const char* tb_last_error(void) { return g_last_error.c_str(); }

const char* tb_version(void) { return "0.1.0"; }

tb_status tb_bessel_j(int order, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "tb_bessel_j: out is null");
    *out = math::bessel_j(order, x);
  });
}

tb_status tb_sph_harm_phi0(int l, int m, double theta, double* out) {
  return guarded([&] {
    require(out != nullptr, "tb_sph_harm_phi0: out is null");
    *out = math::sph_harm_phi0(l, m, theta);
  });
}

tb_status tb_hydrogen_radial(int n, int l, double r, double* out) {
  return guarded([&] {
    require(out != nullptr, "tb_hydrogen_radial: out is null");
    *out = math::hydrogen_radial(n, l, r);
  });
}

tb_status tb_hydrogen_radial_deriv(int n, int l, double r, double* out) {
  return guarded([&] {
    require(out != nullptr, "tb_hydrogen_radial_deriv: out is null");
    *out = math::hydrogen_radial_deriv(n, l, r);
  });
}

tb_status tb_gauss_legendre(int n, double* nodes, double* weights) {
  return guarded([&] {
    require(nodes != nullptr && weights != nullptr,
            "tb_gauss_legendre: output arrays are null");
    const math::GaussLegendre rule = math::gauss_legendre(n);
    std::memcpy(nodes, rule.nodes.data(), sizeof(double) * n);
    std::memcpy(weights, rule.weights.data(), sizeof(double) * n);
  });
}

tb_status tb_physical_wavenumber(int n_f, double* out) {
  return guarded([&] {
    require(out != nullptr, "tb_physical_wavenumber: out is null");
    *out = photo::physical_wavenumber(n_f);
  });
}

tb_status tb_beam_create(double kappa, double k_z, int m_gamma, int lambda,
                         double e0, tb_beam** out) {
  return guarded([&] {
    require(out != nullptr, "tb_beam_create: out is null");
    *out = new tb_beam{beam::BeamParams(kappa, k_z, m_gamma, lambda, e0)};
  });
}

tb_status tb_beam_create_pitch(double k_mag, double theta_k, int m_gamma,
                               int lambda, double e0, tb_beam** out) {
  return guarded([&] {
    require(out != nullptr, "tb_beam_create_pitch: out is null");
    *out = new tb_beam{
        beam::BeamParams::from_pitch(k_mag, theta_k, m_gamma, lambda, e0)};
  });
}

void tb_beam_destroy(tb_beam* b) { delete b; }

tb_status tb_beam_props(const tb_beam* b, double* omega, double* theta_k,
                        double* wavelength) {
  return guarded([&] {
    require(b != nullptr, "tb_beam_props: beam is null");
    if (omega)
      *omega = b->params.omega();
    if (theta_k)
      *theta_k = b->params.theta_k();
    if (wavelength)
      *wavelength = b->params.wavelength();
  });
}

#define TB_FIELD_FN(NAME, CORE)                                           \
  tb_status NAME(const tb_beam* b, double rho, double phi, double z,      \
                 double re[3], double im[3]) {                            \
    return guarded([&] {                                                  \
      require(b != nullptr, #NAME ": beam is null");                      \
      require(re != nullptr && im != nullptr, #NAME ": output is null");  \
      write_cvec(CORE(b->params, {rho, phi, z}), re, im);                 \
    });                                                                   \
  }

TB_FIELD_FN(tb_vector_potential, beam::vector_potential_closed)
TB_FIELD_FN(tb_electric_field, beam::electric_field)
TB_FIELD_FN(tb_magnetic_field, beam::magnetic_field)
TB_FIELD_FN(tb_te_mode, beam::te_mode)
TB_FIELD_FN(tb_tm_mode, beam::tm_mode)

#undef TB_FIELD_FN

tb_status tb_poynting_closed(const tb_beam* b, double rho, double out[3]) {
  return guarded([&] {
    require(b != nullptr, "tb_poynting_closed: beam is null");
    require(out != nullptr, "tb_poynting_closed: out is null");
    const beam::PoyntingCyl s = beam::poynting_closed(b->params, rho);
    out[0] = s.s_rho;
    out[1] = s.s_phi;
    out[2] = s.s_z;
  });
}

tb_status tb_mean_e_sq(const tb_beam* b, double rho, double phi, double z,
                       double* out) {
  return guarded([&] {
    require(b != nullptr, "tb_mean_e_sq: beam is null");
    require(out != nullptr, "tb_mean_e_sq: out is null");
    *out = beam::mean_e_sq(b->params, {rho, phi, z});
  });
}

tb_status tb_quadrature_default(int n_f, tb_quadrature* out) {
  return guarded([&] {
    require(out != nullptr, "tb_quadrature_default: out is null");
    const math::QuadratureSpec s = math::QuadratureSpec::for_final_state(n_f);
    out->n_radial = s.n_radial;
    out->n_angular = s.n_angular;
    out->r_max = s.r_max;
  });
}

tb_status tb_atomic_factor_g(const tb_beam* b, int n_f, int l_f, int m_f,
                             int lambda_pol, int exact_mass_factors,
                             const tb_quadrature* quad, double* re,
                             double* im) {
  return guarded([&] {
    require(b != nullptr, "tb_atomic_factor_g: beam is null");
    require(re != nullptr && im != nullptr, "tb_atomic_factor_g: out null");
    const auto g = photo::atomic_factor_g(
        photo::AtomicOrbital(n_f, l_f, m_f), lambda_pol, b->params,
        atom_config(exact_mass_factors), to_spec(quad, n_f));
    *re = g.real();
    *im = g.imag();
  });
}

tb_status tb_amplitude_localized(const tb_beam* b, int n_f, int l_f, int m_f,
                                 double bpar, double phi_b,
                                 int exact_mass_factors,
                                 const tb_quadrature* quad, double* re,
                                 double* im) {
  return guarded([&] {
    require(b != nullptr, "tb_amplitude_localized: beam is null");
    require(re != nullptr && im != nullptr, "tb_amplitude_localized: out null");
    const auto rec = photo::amplitude_localized(
        b->params, atom_config(exact_mass_factors),
        photo::AtomicOrbital(n_f, l_f, m_f), bpar, phi_b, to_spec(quad, n_f));
    *re = rec.value.real();
    *im = rec.value.imag();
  });
}

tb_status tb_scan_amplitude(const tb_beam* b, int n_f, int l_f,
                            const int* m_f_list, size_t n_mf,
                            const double* b_grid, size_t n_b,
                            int exact_mass_factors, const tb_quadrature* quad,
                            double* re_out, double* im_out) {
  return guarded([&] {
    require(b != nullptr, "tb_scan_amplitude: beam is null");
    require(m_f_list != nullptr && b_grid != nullptr && n_mf > 0 && n_b > 0,
            "tb_scan_amplitude: empty grid");
    require(re_out != nullptr && im_out != nullptr,
            "tb_scan_amplitude: output arrays are null");
    const std::vector<int> mfs(m_f_list, m_f_list + n_mf);
    const std::vector<double> bs(b_grid, b_grid + n_b);
    const auto recs =
        photo::scan_amplitudes(b->params, atom_config(exact_mass_factors),
                               n_f, l_f, mfs, bs, to_spec(quad, n_f));
    for (size_t i = 0; i < recs.size(); ++i) {
      re_out[i] = recs[i].value.real();
      im_out[i] = recs[i].value.imag();
    }
  });
}

tb_status tb_cm_gaussian_ring(double b, double width, int m_R,
                              tb_cm_state** out) {
  return guarded([&] {
    require(out != nullptr, "tb_cm_gaussian_ring: out is null");
    *out = new tb_cm_state{photo::CmState::gaussian_ring(b, width, m_R)};
  });
}

tb_status tb_cm_custom_profile(int m_R,
                               double (*profile)(double, double, void*),
                               void* ctx, double r_lo, double r_hi,
                               double z_half, tb_cm_state** out) {
  return guarded([&] {
    require(out != nullptr, "tb_cm_custom_profile: out is null");
    require(profile != nullptr, "tb_cm_custom_profile: profile is null");
    *out = new tb_cm_state{photo::CmState::lz_eigenstate(
        m_R,
        [profile, ctx](double r, double z) { return profile(r, z, ctx); },
        {r_lo, r_hi, z_half})};
  });
}

void tb_cm_destroy(tb_cm_state* s) { delete s; }

tb_status tb_g_tilde(const tb_cm_state* initial, const tb_cm_state* final_st,
                     const tb_beam* b, int delta_m, const tb_quadrature* quad,
                     double* re, double* im) {
  return guarded([&] {
    require(initial != nullptr && final_st != nullptr,
            "tb_g_tilde: CM state is null");
    require(b != nullptr, "tb_g_tilde: beam is null");
    require(re != nullptr && im != nullptr, "tb_g_tilde: out null");
    const auto g = photo::G_tilde_FI(initial->state, final_st->state,
                                     b->params, delta_m, to_spec(quad, 2));
    *re = g.real();
    *im = g.imag();
  });
}

tb_status tb_amplitude_lz(const tb_beam* b, int n_f, int l_f, int m_f, int m_R,
                          int m_R_prime, const tb_cm_state* initial,
                          const tb_cm_state* final_st, int exact_mass_factors,
                          const tb_quadrature* quad, double* re, double* im) {
  return guarded([&] {
    require(b != nullptr, "tb_amplitude_lz: beam is null");
    require(initial != nullptr && final_st != nullptr,
            "tb_amplitude_lz: CM state is null");
    require(re != nullptr && im != nullptr, "tb_amplitude_lz: out null");
    const auto rec = photo::amplitude_lz(
        b->params, atom_config(exact_mass_factors),
        photo::AtomicOrbital(n_f, l_f, m_f), m_R, m_R_prime, initial->state,
        final_st->state, to_spec(quad, n_f));
    *re = rec.value.real();
    *im = rec.value.imag();
  });
}

tb_status tb_amplitude_cm(const tb_beam* b, int n_f, int l_f, int m_f,
                          const tb_cm_state* initial,
                          const tb_cm_state* final_st, int exact_mass_factors,
                          const tb_quadrature* quad, double* re, double* im) {
  return guarded([&] {
    require(b != nullptr, "tb_amplitude_cm: beam is null");
    require(initial != nullptr && final_st != nullptr,
            "tb_amplitude_cm: CM state is null");
    require(re != nullptr && im != nullptr, "tb_amplitude_cm: out null");
    const auto rec = photo::amplitude_cm(
        b->params, atom_config(exact_mass_factors),
        photo::AtomicOrbital(n_f, l_f, m_f), initial->state, final_st->state,
        to_spec(quad, n_f));
    *re = rec.value.real();
    *im = rec.value.imag();
  });
}

tb_status tb_force_dipole(const tb_beam* b, double alpha_re, double alpha_im,
                          double rho, double phi, double z, double fd_step,
                          double out[3]) {
  return guarded([&] {
    require(b != nullptr, "tb_force_dipole: beam is null");
    require(out != nullptr, "tb_force_dipole: out is null");
    const twistbeam::forces::ParticleResponse part({alpha_re, alpha_im});
    const double h =
        fd_step > 0.0 ? fd_step : twistbeam::forces::default_fd_step(b->params);
    const auto f =
        twistbeam::forces::force_dipole(b->params, part, {rho, phi, z}, h);
    out[0] = f.x;
    out[1] = f.y;
    out[2] = f.z;
  });
}

tb_status tb_force_decomposition(const tb_beam* b, double alpha_re,
                                 double alpha_im, double rho, double phi,
                                 double z, double fd_step, double total[3],
                                 double gradient[3], double poynting[3],
                                 double spin_curl[3]) {
  return guarded([&] {
    require(b != nullptr, "tb_force_decomposition: beam is null");
    require(total != nullptr && gradient != nullptr && poynting != nullptr &&
                spin_curl != nullptr,
            "tb_force_decomposition: output is null");
    const twistbeam::forces::ParticleResponse part({alpha_re, alpha_im});
    const double h =
        fd_step > 0.0 ? fd_step : twistbeam::forces::default_fd_step(b->params);
    const auto fb = twistbeam::forces::force_decomposition(b->params, part,
                                                           {rho, phi, z}, h);
    const auto put = [](const beam::Vec3& v, double* o) {
      o[0] = v.x;
      o[1] = v.y;
      o[2] = v.z;
    };
    put(fb.total, total);
    put(fb.gradient, gradient);
    put(fb.poynting, poynting);
    put(fb.spin_curl, spin_curl);
  });
}

tb_status tb_stress_tensor(const tb_beam* b, double rho, double phi, double z,
                           double out[9]) {
  return guarded([&] {
    require(b != nullptr, "tb_stress_tensor: beam is null");
    require(out != nullptr, "tb_stress_tensor: out is null");
    const auto t = twistbeam::forces::stress_tensor_avg(b->params, {rho, phi, z});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out[3 * i + j] = t.m[i][j];
  });
}

tb_status tb_disk_force(const tb_beam* b, double radius, int n_radial_quad,
                        double* f_z) {
  return guarded([&] {
    require(b != nullptr, "tb_disk_force: beam is null");
    require(f_z != nullptr, "tb_disk_force: out is null");
    *f_z = twistbeam::forces::force_absorptive_disk(
        b->params, twistbeam::forces::DiskGeometry(radius), n_radial_quad);
  });
}

tb_status tb_verify_suite(const char* suite, double tol_scale, int* passed,
                          char** json_report) {
  return guarded([&] {
    require(suite != nullptr, "tb_verify_suite: suite is null");
    require(passed != nullptr, "tb_verify_suite: passed is null");
    const auto rep = twistbeam::verify::run_suite(suite, tol_scale);
    *passed = rep.passed() ? 1 : 0;
    if (json_report != nullptr) {
      const std::string s = rep.to_json();
      char* buf = new char[s.size() + 1];
      std::memcpy(buf, s.c_str(), s.size() + 1);
      *json_report = buf;
    }
  });
}

void tb_string_free(char* s) { delete[] s; }

} // extern "C"
