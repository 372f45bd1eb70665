#include "twistbeam/verify.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <json.hpp>

#include "twistbeam/beam.hpp"
#include "twistbeam/forces.hpp"
#include "twistbeam/photoexcite.hpp"

namespace twistbeam::verify {

namespace {

using beam::BeamParams;
using beam::CVec3;
using beam::CylPoint;
using cplx = std::complex<double>;
constexpr double PI = std::numbers::pi;

double rel_dev(const CVec3& a, const CVec3& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : 0.0;
}

void add(SuiteReport& rep, const std::string& name, double value, double tol) {
  rep.checks.push_back({name, value, tol, value <= tol});
}

SuiteReport suite_basis(double ts) {
  SuiteReport rep;
  rep.suite = "basis";
  std::mt19937 rng(20240901u);
  std::uniform_real_distribution<double> urho(0.0, 3.0), uphi(-PI, PI),
      uz(-2.0, 2.0);
  const double k = photo::physical_wavenumber(2);
  double worst_te = 0.0, worst_tm = 0.0, worst_inv = 0.0, worst_long = 0.0;
  for (int m_gamma : {-1, 0, 1, 2}) {
    const BeamParams p1 = BeamParams::from_pitch(k, 0.2, m_gamma, 1);
    const BeamParams p2 = BeamParams::from_pitch(k, 0.2, m_gamma, -1);
    const double lam = p1.wavelength();
    for (int i = 0; i < 25; ++i) {
      const CylPoint at{urho(rng) * lam, uphi(rng), uz(rng) * lam};
      const CVec3 ap = beam::vector_potential_closed(p1, at);
      const CVec3 am = beam::vector_potential_closed(p2, at);
      const cplx c = p1.e0 / p1.k_z * std::sqrt(PI / p1.kappa);
      const CVec3 te_lin = (ap + am) * c;
      const CVec3 tm_lin = (ap - am) * (cplx(0.0, -1.0) * c);
      const CVec3 te = beam::te_mode(p1, at);
      const CVec3 tm = beam::tm_mode(p1, at);
      worst_te = std::max(worst_te, rel_dev(te, te_lin));
      worst_tm = std::max(worst_tm, rel_dev(tm, tm_lin));
      worst_long = std::max(worst_long, std::abs(te.z));
      // invert: A_{+-1} = (te -+ i tm) / (2c)
      const CVec3 ap_rec = (te + tm * cplx(0.0, 1.0)) * (0.5 / c);
      const CVec3 am_rec = (te - tm * cplx(0.0, 1.0)) * (0.5 / c);
      worst_inv = std::max(worst_inv, rel_dev(ap, ap_rec));
      worst_inv = std::max(worst_inv, rel_dev(am, am_rec));
    }
  }
  add(rep, "te_equals_sum_of_helicity_modes", worst_te, 1e-12 * ts);
  add(rep, "tm_equals_difference_of_helicity_modes", worst_tm, 1e-12 * ts);
  add(rep, "helicity_modes_recovered_from_te_tm", worst_inv, 1e-12 * ts);
  add(rep, "te_longitudinal_component_zero", worst_long, 1e-14 * ts);
  return rep;
}

SuiteReport suite_fields(double ts) {
  SuiteReport rep;
  rep.suite = "fields";
  std::mt19937 rng(20240902u);
  std::uniform_real_distribution<double> urho(0.0, 3.0), uphi(-PI, PI),
      uz(-2.0, 2.0);
  const double k = photo::physical_wavenumber(2);
  double worst_closed = 0.0, worst_curl = 0.0, worst_div = 0.0,
         worst_ratio = 0.0;
  for (int m_gamma : {-1, 0, 1, 3}) {
    for (int lambda : {1, -1}) {
      const BeamParams p = BeamParams::from_pitch(k, 0.35, m_gamma, lambda);
      const double lam = p.wavelength();
      const double h = 1e-4 * lam;
      for (int i = 0; i < 12; ++i) {
        const CylPoint at{urho(rng) * lam, uphi(rng), uz(rng) * lam};
        const CVec3 ac = beam::vector_potential_closed(p, at);
        const CVec3 ai = beam::vector_potential_integral(p, at, 512);
        worst_closed = std::max(worst_closed, rel_dev(ac, ai));

        // FD curl of A vs analytic B, Richardson extrapolated.
        const auto a_at = [&](double x, double y, double z) {
          return beam::vector_potential_closed(
              p, {std::hypot(x, y), std::atan2(y, x), z});
        };
        const double x = at.rho * std::cos(at.phi);
        const double y = at.rho * std::sin(at.phi);
        const auto d = [&](int comp, int axis, double hh) {
          const double dx = axis == 0 ? hh : 0, dy = axis == 1 ? hh : 0,
                       dz = axis == 2 ? hh : 0;
          const CVec3 fp = a_at(x + dx, y + dy, at.z + dz);
          const CVec3 fm = a_at(x - dx, y - dy, at.z - dz);
          const CVec3 df = (fp - fm) * (0.5 / hh);
          return comp == 0 ? df.x : comp == 1 ? df.y : df.z;
        };
        const auto dr = [&](int comp, int axis) {
          return (4.0 * d(comp, axis, 0.5 * h) - d(comp, axis, h)) / 3.0;
        };
        CVec3 curl_fd;
        curl_fd.x = dr(2, 1) - dr(1, 2);
        curl_fd.y = dr(0, 2) - dr(2, 0);
        curl_fd.z = dr(1, 0) - dr(0, 1);
        const CVec3 b = beam::magnetic_field(p, at);
        worst_curl = std::max(worst_curl, rel_dev(b, curl_fd));

        const CVec3 e = beam::electric_field(p, at);
        worst_div = std::max(worst_div,
                             std::abs(beam::divergence_a_closed(p, at)) /
                                 std::max(e.norm(), 1e-300));

        const beam::PoyntingCyl sc = beam::poynting_closed(p, at.rho);
        const beam::Vec3 sf = beam::poynting_from_fields(p, at);
        const double w = p.omega();
        const double s_scale = p.kappa * w * w / (4.0 * PI) * p.e0 * p.e0;
        if (std::abs(sc.s_z) > 1e-3 * s_scale) // stay clear of the zeros
          worst_ratio = std::max(worst_ratio, std::abs(sf.z / sc.s_z - 1.0));
      }
    }
  }
  add(rep, "closed_form_matches_plane_wave_superposition", worst_closed,
      1e-10 * ts);
  add(rep, "analytic_curl_matches_finite_difference", worst_curl, 1e-6 * ts);
  add(rep, "vector_potential_divergence_free", worst_div, 1e-10 * ts);
  add(rep, "field_product_poynting_matches_closed_form", worst_ratio,
      1e-8 * ts);
  return rep;
}

SuiteReport suite_dipole(double ts) {
  SuiteReport rep;
  rep.suite = "dipole";
  const photo::AtomConfig atom;
  const math::QuadratureSpec quad = math::QuadratureSpec::for_final_state(2);
  const double k = photo::physical_wavenumber(2);
  const double g_closed = std::pow(2.0 / 3.0, 3.5) / PI;

  const BeamParams bp = BeamParams::from_pitch(k, 0.2, 0, 1);
  const cplx g2100 =
      photo::atomic_factor_g(photo::AtomicOrbital(2, 1, 0), 0, bp, atom, quad);
  const cplx g2111 =
      photo::atomic_factor_g(photo::AtomicOrbital(2, 1, 1), 1, bp, atom, quad);
  add(rep, "g2100_matches_dipole_closed_form", std::abs(g2100 - g_closed),
      1e-4 * ts);
  add(rep, "g2111_matches_dipole_closed_form", std::abs(g2111 - g_closed),
      1e-4 * ts);

  const BeamParams bp_small = BeamParams::from_pitch(k / 10.0, 0.2, 0, 1);
  const cplx a = photo::atomic_factor_g(photo::AtomicOrbital(2, 1, 0), 0,
                                        bp_small, atom, quad);
  const cplx b = photo::atomic_factor_g(photo::AtomicOrbital(2, 1, 1), 1,
                                        bp_small, atom, quad);
  add(rep, "g_ratio_tends_to_one_in_dipole_limit", std::abs(a / b - 1.0),
      1e-6 * ts);
  return rep;
}

SuiteReport suite_forces(double ts) {
  SuiteReport rep;
  rep.suite = "forces";
  std::mt19937 rng(20240903u);
  std::uniform_real_distribution<double> urho(0.05, 3.0), uphi(-PI, PI),
      uz(-2.0, 2.0), ua(-2.0, 2.0), uai(0.0, 2.0);
  const double k = photo::physical_wavenumber(2);
  double worst_id = 0.0;
  for (int i = 0; i < 40; ++i) {
    const int m_gamma = static_cast<int>(rng() % 5) - 2;
    const int lambda = (rng() % 2 == 0) ? 1 : -1;
    const BeamParams p = BeamParams::from_pitch(k, 0.1 + 0.9 * urho(rng) / 3.0,
                                                m_gamma, lambda);
    const double lam = p.wavelength();
    const CylPoint at{urho(rng) * lam, uphi(rng), uz(rng) * lam};
    const forces::ParticleResponse part({ua(rng), uai(rng)});
    const auto fb =
        forces::force_decomposition(p, part, at, forces::default_fd_step(p));
    const double sum_err = std::hypot(
        fb.gradient.x + fb.poynting.x + fb.spin_curl.x - fb.total.x,
        fb.gradient.y + fb.poynting.y + fb.spin_curl.y - fb.total.y,
        fb.gradient.z + fb.poynting.z + fb.spin_curl.z - fb.total.z);
    const double ref = std::max(
        std::hypot(fb.total.x, fb.total.y, fb.total.z), 1e-300);
    worst_id = std::max(worst_id, sum_err / ref);
  }
  add(rep, "decomposition_sums_to_dipole_force", worst_id, 1e-9 * ts);

  double worst_trio = 0.0;
  double worst_sign = 0.0; // must stay 0
  for (double th : {0.05, 0.2, 0.5, 1.0}) {
    for (int lambda : {1, -1}) {
      const BeamParams p = BeamParams::from_pitch(k, th, -lambda, lambda);
      const forces::ParticleResponse part({0.0, 1.0});
      const double sigma = part.sigma(p.omega());
      const CylPoint axis{0.0, 0.0, 0.0};
      const double i0 = beam::mean_e_sq(p, axis);
      const beam::PoyntingCyl s = beam::poynting_closed(p, 0.0);
      if (!(s.s_z < 0.0))
        worst_sign = 1.0;
      const auto fb =
          forces::force_decomposition(p, part, axis, forces::default_fd_step(p));
      if (!(fb.total.z > 0.0))
        worst_sign = 1.0;
      worst_trio = std::max(
          worst_trio, std::abs(fb.total.z / (sigma * i0) - std::cos(th)));
      worst_trio = std::max(worst_trio,
                            std::abs(fb.poynting.z / (sigma * i0) + 1.0));
      const double half = std::cos(0.5 * th);
      worst_trio = std::max(
          worst_trio,
          std::abs(fb.spin_curl.z / (sigma * i0) - 2.0 * half * half));
    }
  }
  add(rep, "on_axis_counterpropagating_flux_with_forward_force", worst_sign,
      0.0);
  add(rep, "on_axis_force_terms_match_closed_forms", worst_trio, 1e-6 * ts);
  return rep;
}

} // namespace

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass)
      return false;
  return true;
}

std::string SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["pass"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    j["checks"].push_back(cj);
  }
  return j.dump(2);
}

SuiteReport run_suite(const std::string& name, double tol_scale) {
  if (name == "basis")
    return suite_basis(tol_scale);
  if (name == "fields")
    return suite_fields(tol_scale);
  if (name == "dipole")
    return suite_dipole(tol_scale);
  if (name == "forces")
    return suite_forces(tol_scale);
  if (name == "all") {
    SuiteReport rep;
    rep.suite = "all";
    for (const char* s : {"basis", "fields", "dipole", "forces"}) {
      SuiteReport sub = run_suite(s, tol_scale);
      for (auto& c : sub.checks) {
        c.name = sub.suite + "." + c.name;
        rep.checks.push_back(std::move(c));
      }
    }
    return rep;
  }
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

} // namespace twistbeam::verify
