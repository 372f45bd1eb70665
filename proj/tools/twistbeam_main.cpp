// twistbeam CLI: scan-amplitude, poynting-map, field-sample, force,
// tractor-check, verify. Links the shared library through the C API only.

#include <twistbeam.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int thread_cap() {
  if (const char* env = std::getenv("TWISTBEAM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1)
      return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic indexed parallel map: results land by index, worker count
// never affects output.
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
  const int workers = std::min<size_t>(thread_cap(), n == 0 ? 1 : n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        fn(i);
    });
  for (auto& t : pool)
    t.join();
}

struct BeamHandle {
  tb_beam* ptr = nullptr;
  ~BeamHandle() { tb_beam_destroy(ptr); }
};

int fail(tb_status st, const std::string& context) {
  std::cerr << "twistbeam: " << context << ": " << tb_last_error() << "\n";
  return static_cast<int>(st);
}

struct OutputSink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  int open(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) {
        std::cerr << "twistbeam: cannot open output file '" << path << "'\n";
        return 1;
      }
      os = &file;
    }
    return 0;
  }
};

// ------------------------------------------------------------------
// Config file: a JSON object whose keys are long option names. Flags on
// the command line win; config values are injected as tokens ahead of the
// user's tokens for any option the user did not pass.

bool user_passed(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0)
      return true;
  return false;
}

int inject_config(std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty())
    return 0;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "twistbeam: cannot read config file '" << path << "'\n";
    return 2;
  }
  json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    std::cerr << "twistbeam: bad config file: " << e.what() << "\n";
    return 2;
  }
  if (!cfg.is_object()) {
    std::cerr << "twistbeam: config file must hold a JSON object\n";
    return 2;
  }
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (user_passed(args, flag))
      continue;
    if (value.is_boolean()) {
      if (value.get<bool>())
        injected.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& item : value) {
        injected.push_back(flag);
        injected.push_back(item.is_string() ? item.get<std::string>()
                                            : item.dump());
      }
    } else {
      injected.push_back(flag);
      injected.push_back(value.is_string() ? value.get<std::string>()
                                           : value.dump());
    }
  }
  // defaults go right after the subcommand name; explicit flags follow and win
  auto pos = args.begin();
  while (pos != args.end() && !pos->empty() && (*pos)[0] == '-')
    ++pos;
  if (pos != args.end())
    ++pos;
  args.insert(pos, injected.begin(), injected.end());
  return 0;
}

// ------------------------------------------------------------------

struct BeamOpts {
  int m_gamma = 0;
  int lambda = 1;
  double pitch = 0.2;
  double k = -1.0; // < 0: physical 1S->nP value
  double k_scale = 1.0;
  double e0 = 1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--m-gamma", m_gamma, "total helicity m_gamma");
    cmd->add_option("--lambda", lambda, "plane-wave helicity (+1 or -1)");
    cmd->add_option("--pitch", pitch, "pitch angle theta_k in radians");
    cmd->add_option("--k", k, "photon wavenumber in 1/a0 (default: physical)");
    cmd->add_option("--k-scale", k_scale, "multiplier applied to k");
    cmd->add_option("--e0", e0, "field-amplitude scale");
  }

  int make(int n_f_for_default, BeamHandle& out) const {
    double kk = k;
    if (kk <= 0.0) {
      if (tb_status st = tb_physical_wavenumber(n_f_for_default, &kk); st != TB_OK)
        return fail(st, "wavenumber");
    }
    kk *= k_scale;
    if (tb_status st =
            tb_beam_create_pitch(kk, pitch, m_gamma, lambda, e0, &out.ptr);
        st != TB_OK)
      return fail(st, "beam parameters");
    return 0;
  }
};

struct QuadOpts {
  int n_radial = 96;
  int n_angular = 48;
  double r_max = -1.0; // < 0: 40 n_f^2

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n-radial", n_radial, "radial quadrature nodes");
    cmd->add_option("--n-angular", n_angular, "angular quadrature nodes");
    cmd->add_option("--r-max", r_max, "radial cutoff in a0");
  }

  tb_quadrature resolve(int n_f) const {
    tb_quadrature q{n_radial, n_angular, r_max};
    if (r_max <= 0.0)
      q.r_max = 40.0 * n_f * n_f;
    return q;
  }
};

void beam_provenance(std::ostream& os, const char* cmd, const BeamHandle& beam,
                     const BeamOpts& opts) {
  double omega = 0, theta = 0, lam = 0;
  tb_beam_props(beam.ptr, &omega, &theta, &lam);
  os << "# twistbeam " << cmd << "\n";
  os << "# k = " << fmt17(omega) << " a0^-1, lambda_photon = " << fmt17(lam)
     << " a0, kappa = " << fmt17(omega * std::sin(theta))
     << " a0^-1, k_z = " << fmt17(omega * std::cos(theta)) << " a0^-1\n";
  os << "# m_gamma = " << opts.m_gamma << ", helicity = " << opts.lambda
     << ", pitch = " << fmt17(theta) << " rad, e0 = " << fmt17(opts.e0)
     << "\n";
  os << "# lengths on the command line are photon wavelengths; "
        "x_a0 = x_over_lambda * lambda_photon\n";
}

// ------------------------------------------------------------------

int run_scan_amplitude(const BeamOpts& beam_opts, const QuadOpts& quad_opts,
                       int n_f, int l_f, std::vector<int> m_f_list,
                       double b_max, int n_points, bool unit_mass,
                       const std::string& output) {
  BeamHandle beam;
  if (int rc = beam_opts.make(n_f, beam); rc != 0)
    return rc;
  double lam = 0;
  tb_beam_props(beam.ptr, nullptr, nullptr, &lam);

  std::vector<double> b_grid_a0(n_points);
  std::vector<double> b_grid_lam(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double bl = n_points == 1 ? 0.0 : b_max * i / (n_points - 1.0);
    b_grid_lam[i] = bl;
    b_grid_a0[i] = bl * lam;
  }

  const tb_quadrature quad = quad_opts.resolve(n_f);
  std::vector<double> re(m_f_list.size() * n_points);
  std::vector<double> im(m_f_list.size() * n_points);
  if (tb_status st = tb_scan_amplitude(
          beam.ptr, n_f, l_f, m_f_list.data(), m_f_list.size(),
          b_grid_a0.data(), b_grid_a0.size(), unit_mass ? 0 : 1, &quad,
          re.data(), im.data());
      st != TB_OK)
    return fail(st, "scan-amplitude");

  OutputSink sink;
  if (sink.open(output))
    return 1;
  beam_provenance(*sink.os, "scan-amplitude", beam, beam_opts);
  *sink.os << "# nf = " << n_f << ", lf = " << l_f
           << ", mass_factors = " << (unit_mass ? "unity" : "exact") << "\n";
  *sink.os << "b_over_lambda,m_f,re_amp,im_amp,abs_amp\n";
  std::vector<std::string> rows(re.size());
  parallel_for(re.size(), [&](size_t idx) {
    const size_t ib = idx % n_points;
    const size_t imf = idx / n_points;
    const double a = std::hypot(re[idx], im[idx]);
    rows[idx] = fmt17(b_grid_lam[ib]) + "," + std::to_string(m_f_list[imf]) +
                "," + fmt17(re[idx]) + "," + fmt17(im[idx]) + "," + fmt17(a) +
                "\n";
  });
  for (const auto& r : rows)
    *sink.os << r;
  sink.os->flush();
  return 0;
}

int run_poynting_map(const BeamOpts& beam_opts, double rho_max, int n_points,
                     bool report_negative, const std::string& output) {
  BeamHandle beam;
  if (int rc = beam_opts.make(2, beam); rc != 0)
    return rc;
  double lam = 0;
  tb_beam_props(beam.ptr, nullptr, nullptr, &lam);

  std::vector<std::array<double, 4>> vals(n_points);
  std::atomic<int> bad{0};
  parallel_for(n_points, [&](size_t i) {
    const double rl = n_points == 1 ? 0.0 : rho_max * i / (n_points - 1.0);
    double s[3] = {};
    if (tb_poynting_closed(beam.ptr, rl * lam, s) != TB_OK)
      bad.store(1);
    vals[i] = {rl, s[0], s[1], s[2]};
  });
  if (bad.load())
    return fail(TB_ERROR_INTERNAL, "poynting-map");

  OutputSink sink;
  if (sink.open(output))
    return 1;
  beam_provenance(*sink.os, "poynting-map", beam, beam_opts);
  *sink.os << "rho_over_lambda,s_rho,s_phi,s_z\n";
  for (const auto& v : vals)
    *sink.os << fmt17(v[0]) << "," << fmt17(v[1]) << "," << fmt17(v[2]) << ","
             << fmt17(v[3]) << "\n";

  if (report_negative) {
    const auto s_z = [&](double rho_lam) {
      double s[3] = {};
      tb_poynting_closed(beam.ptr, rho_lam * lam, s);
      return s[2];
    };
    // locate sign changes on a fine grid, then bisect
    const int fine = std::max(n_points, 4096);
    std::vector<std::pair<double, double>> intervals;
    double prev_r = 0.0, prev_s = s_z(0.0);
    double open_at = prev_s < 0.0 ? 0.0 : -1.0;
    for (int i = 1; i <= fine; ++i) {
      const double r = rho_max * i / fine;
      const double s = s_z(r);
      if ((s < 0.0) != (prev_s < 0.0)) {
        double lo = prev_r, hi = r;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((s_z(mid) < 0.0) == (prev_s < 0.0))
            lo = mid;
          else
            hi = mid;
        }
        const double root = 0.5 * (lo + hi);
        if (s < 0.0)
          open_at = root;
        else {
          intervals.emplace_back(open_at, root);
          open_at = -1.0;
        }
      }
      prev_r = r;
      prev_s = s;
    }
    if (open_at >= 0.0)
      intervals.emplace_back(open_at, rho_max);
    *sink.os << "# negative_s_z_intervals_over_lambda: " << intervals.size()
             << "\n";
    for (const auto& [lo, hi] : intervals)
      *sink.os << "# negative_s_z_interval " << fmt17(lo) << " " << fmt17(hi)
               << "\n";
  }
  sink.os->flush();
  return 0;
}

int run_field_sample(const BeamOpts& beam_opts, double rho, double phi,
                     double z, double rho_max, int n_points,
                     const std::string& output) {
  BeamHandle beam;
  if (int rc = beam_opts.make(2, beam); rc != 0)
    return rc;
  double lam = 0;
  tb_beam_props(beam.ptr, nullptr, nullptr, &lam);

  std::vector<double> rho_grid(n_points);
  for (int i = 0; i < n_points; ++i)
    rho_grid[i] =
        n_points == 1 ? rho : rho_max * i / (n_points - 1.0);

  std::vector<std::string> rows(n_points);
  std::atomic<int> err{0};
  parallel_for(n_points, [&](size_t i) {
    double are[3], aim[3], ere[3], eim[3], bre[3], bim[3];
    const double r_a0 = rho_grid[i] * lam;
    const double z_a0 = z * lam;
    if (tb_vector_potential(beam.ptr, r_a0, phi, z_a0, are, aim) != TB_OK ||
        tb_electric_field(beam.ptr, r_a0, phi, z_a0, ere, eim) != TB_OK ||
        tb_magnetic_field(beam.ptr, r_a0, phi, z_a0, bre, bim) != TB_OK) {
      err.store(1);
      return;
    }
    std::string row = fmt17(rho_grid[i]) + "," + fmt17(phi) + "," + fmt17(z);
    for (const double* arr : {are, aim, ere, eim, bre, bim})
      for (int c = 0; c < 3; ++c)
        row += "," + fmt17(arr[c]);
    rows[i] = row + "\n";
  });
  if (err.load())
    return fail(TB_ERROR_INTERNAL, "field-sample");

  OutputSink sink;
  if (sink.open(output))
    return 1;
  beam_provenance(*sink.os, "field-sample", beam, beam_opts);
  *sink.os << "rho_over_lambda,phi,z_over_lambda,"
              "ax_re,ay_re,az_re,ax_im,ay_im,az_im,"
              "ex_re,ey_re,ez_re,ex_im,ey_im,ez_im,"
              "bx_re,by_re,bz_re,bx_im,by_im,bz_im\n";
  for (const auto& r : rows)
    *sink.os << r;
  sink.os->flush();
  return 0;
}

json vec_json(const double v[3]) { return json::array({v[0], v[1], v[2]}); }

int run_force(const BeamOpts& beam_opts, double alpha_re, double alpha_im,
              double rho, double phi, double z, double fd_step, bool decompose,
              const std::string& output) {
  BeamHandle beam;
  if (int rc = beam_opts.make(2, beam); rc != 0)
    return rc;
  double lam = 0, omega = 0, theta = 0;
  tb_beam_props(beam.ptr, &omega, &theta, &lam);
  const double r_a0 = rho * lam, z_a0 = z * lam;

  json out;
  out["params"] = {{"alpha_re", alpha_re},
                   {"alpha_im", alpha_im},
                   {"rho_over_lambda", rho},
                   {"phi", phi},
                   {"z_over_lambda", z},
                   {"m_gamma", beam_opts.m_gamma},
                   {"helicity", beam_opts.lambda},
                   {"pitch", theta},
                   {"k", omega}};
  if (decompose) {
    double total[3], gradient[3], poynting[3], spin_curl[3];
    if (tb_status st =
            tb_force_decomposition(beam.ptr, alpha_re, alpha_im, r_a0, phi,
                                   z_a0, fd_step, total, gradient, poynting,
                                   spin_curl);
        st != TB_OK)
      return fail(st, "force");
    out["total"] = vec_json(total);
    out["gradient"] = vec_json(gradient);
    out["poynting"] = vec_json(poynting);
    out["spin_curl"] = vec_json(spin_curl);
  } else {
    double total[3];
    if (tb_status st = tb_force_dipole(beam.ptr, alpha_re, alpha_im, r_a0, phi,
                                       z_a0, fd_step, total);
        st != TB_OK)
      return fail(st, "force");
    out["total"] = vec_json(total);
  }

  OutputSink sink;
  if (sink.open(output))
    return 1;
  *sink.os << out.dump(2) << "\n";
  sink.os->flush();
  return 0;
}

int run_tractor_check(int lambda, std::vector<double> pitches, double k,
                      double k_scale, double alpha_im,
                      const std::string& output) {
  if (pitches.empty())
    pitches = {0.05, 0.2, 0.5, 1.0};
  if (k <= 0.0) {
    if (tb_status st = tb_physical_wavenumber(2, &k); st != TB_OK)
      return fail(st, "wavenumber");
  }
  k *= k_scale;

  json rows = json::array();
  bool all_pass = true;
  for (double th : pitches) {
    BeamHandle beam;
    if (tb_status st =
            tb_beam_create_pitch(k, th, -lambda, lambda, 1.0, &beam.ptr);
        st != TB_OK)
      return fail(st, "beam parameters");
    double omega = 0;
    tb_beam_props(beam.ptr, &omega, nullptr, nullptr);
    const double sigma = omega * alpha_im;
    double s[3] = {}, i0 = 0;
    double total[3], gradient[3], poynting[3], spin_curl[3];
    if (tb_poynting_closed(beam.ptr, 0.0, s) != TB_OK ||
        tb_mean_e_sq(beam.ptr, 0.0, 0.0, 0.0, &i0) != TB_OK)
      return fail(TB_ERROR_INTERNAL, "tractor-check");
    if (tb_status st =
            tb_force_decomposition(beam.ptr, 0.0, alpha_im, 0.0, 0.0, 0.0,
                                   -1.0, total, gradient, poynting, spin_curl);
        st != TB_OK)
      return fail(st, "tractor-check");
    const double c = std::cos(th);
    const double c2 = std::cos(0.5 * th) * std::cos(0.5 * th);
    const bool ok = s[2] < 0.0 && total[2] > 0.0 &&
                    std::abs(total[2] / (sigma * i0) - c) <= 1e-6 &&
                    std::abs(poynting[2] / (sigma * i0) + 1.0) <= 1e-6 &&
                    std::abs(spin_curl[2] / (sigma * i0) - 2.0 * c2) <= 1e-6;
    all_pass = all_pass && ok;
    rows.push_back({{"pitch", th},
                    {"s_z_on_axis", s[2]},
                    {"f_z_on_axis", total[2]},
                    {"f_z_over_sigma_e2", total[2] / (sigma * i0)},
                    {"cos_pitch", c},
                    {"poynting_term_over_sigma_e2", poynting[2] / (sigma * i0)},
                    {"spin_curl_term_over_sigma_e2",
                     spin_curl[2] / (sigma * i0)},
                    {"pass", ok}});
  }
  json out;
  out["helicity"] = lambda;
  out["m_gamma"] = -lambda;
  out["k"] = k;
  out["pass"] = all_pass;
  out["cases"] = rows;

  OutputSink sink;
  if (sink.open(output))
    return 1;
  *sink.os << out.dump(2) << "\n";
  sink.os->flush();
  return all_pass ? 0 : 1;
}

int run_verify(const std::string& suite, double tol_scale,
               const std::string& output) {
  int passed = 0;
  char* report = nullptr;
  if (tb_status st = tb_verify_suite(suite.c_str(), tol_scale, &passed, &report);
      st != TB_OK)
    return fail(st, "verify");
  OutputSink sink;
  if (sink.open(output)) {
    tb_string_free(report);
    return 1;
  }
  *sink.os << report << "\n";
  sink.os->flush();
  tb_string_free(report);
  return passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted-light Bessel modes: fields, hydrogen photoexcitation "
               "amplitudes, and radiation forces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tb_version());

  std::vector<std::string> args(argv + 1, argv + argc);
  if (int rc = inject_config(args); rc != 0)
    return rc;

  std::string config_path, output;

  // scan-amplitude
  auto* scan = app.add_subcommand(
      "scan-amplitude", "photoexcitation amplitudes vs impact parameter");
  BeamOpts scan_beam;
  QuadOpts scan_quad;
  int n_f = 2, l_f = 1, n_points = 64;
  std::vector<int> m_f_list;
  double b_max = 3.0;
  bool unit_mass = false;
  scan_beam.add_to(scan);
  scan_quad.add_to(scan);
  scan->add_option("--nf", n_f, "final principal quantum number");
  scan->add_option("--lf", l_f, "final orbital quantum number");
  scan->add_option("--mf", m_f_list, "final magnetic quantum number (repeatable)")
      ->required();
  scan->add_option("--b-max", b_max, "largest impact parameter (wavelengths)");
  scan->add_option("--n-points", n_points, "grid points over [0, b-max]")
      ->check(CLI::PositiveNumber);
  scan->add_flag("--unit-mass-factors", unit_mass,
                 "replace the m_p/M factors by 1");
  scan->add_option("--output", output, "output path (default stdout)");
  scan->add_option("--config", config_path, "JSON config file (flags win)");

  // poynting-map
  auto* pmap = app.add_subcommand("poynting-map",
                                  "closed-form Poynting components vs rho");
  BeamOpts pmap_beam;
  double rho_max = 3.0;
  int pmap_points = 256;
  bool report_negative = false;
  pmap_beam.add_to(pmap);
  pmap->add_option("--rho-max", rho_max, "largest radius (wavelengths)");
  pmap->add_option("--n-points", pmap_points, "grid points")
      ->check(CLI::PositiveNumber);
  pmap->add_flag("--report-negative", report_negative,
                 "append the rho-intervals where s_z < 0");
  pmap->add_option("--output", output, "output path (default stdout)");
  pmap->add_option("--config", config_path, "JSON config file (flags win)");

  // field-sample
  auto* fsmp = app.add_subcommand("field-sample",
                                  "A, E, B envelopes at points");
  BeamOpts fsmp_beam;
  double f_rho = 0.0, f_phi = 0.0, f_z = 0.0, f_rho_max = 3.0;
  int f_points = 1;
  fsmp_beam.add_to(fsmp);
  fsmp->add_option("--rho", f_rho, "radius (wavelengths)");
  fsmp->add_option("--phi", f_phi, "azimuth (radians)");
  fsmp->add_option("--z", f_z, "axial position (wavelengths)");
  fsmp->add_option("--rho-max", f_rho_max,
                   "scan limit when --n-points > 1 (wavelengths)");
  fsmp->add_option("--n-points", f_points, "radial scan points")
      ->check(CLI::PositiveNumber);
  fsmp->add_option("--output", output, "output path (default stdout)");
  fsmp->add_option("--config", config_path, "JSON config file (flags win)");

  // force
  auto* force = app.add_subcommand("force", "dipole force on a small particle");
  BeamOpts force_beam;
  double alpha_re = 0.0, alpha_im = 0.0, w_rho = 0.0, w_phi = 0.0, w_z = 0.0,
         fd_step = -1.0;
  bool decompose = false;
  force_beam.add_to(force);
  force->add_option("--alpha-re", alpha_re, "Re(polarizability)");
  force->add_option("--alpha-im", alpha_im, "Im(polarizability), >= 0");
  force->add_option("--rho", w_rho, "radius (wavelengths)");
  force->add_option("--phi", w_phi, "azimuth (radians)");
  force->add_option("--z", w_z, "axial position (wavelengths)");
  force->add_option("--fd-step", fd_step,
                    "finite-difference step in a0 (default: 5e-5 wavelength)");
  force->add_flag("--decompose", decompose,
                  "emit gradient/poynting/spin-curl split");
  force->add_option("--output", output, "output path (default stdout)");
  force->add_option("--config", config_path, "JSON config file (flags win)");

  // tractor-check
  auto* tractor = app.add_subcommand(
      "tractor-check", "on-axis m_gamma = -helicity flux vs force resolution");
  int t_lambda = 1;
  std::vector<double> t_pitches;
  double t_k = -1.0, t_k_scale = 1.0, t_alpha_im = 1.0;
  tractor->add_option("--lambda", t_lambda, "plane-wave helicity (+1 or -1)");
  tractor->add_option("--pitch", t_pitches,
                      "pitch angle(s), repeatable (default 0.05 0.2 0.5 1.0)");
  tractor->add_option("--k", t_k, "photon wavenumber in 1/a0");
  tractor->add_option("--k-scale", t_k_scale, "multiplier applied to k");
  tractor->add_option("--alpha-im", t_alpha_im, "Im(polarizability), >= 0");
  tractor->add_option("--output", output, "output path (default stdout)");
  tractor->add_option("--config", config_path, "JSON config file (flags win)");

  // verify
  auto* verify = app.add_subcommand("verify", "run a self-verification suite");
  std::string suite;
  double tol_scale = 1.0;
  verify->add_option("--suite", suite, "basis | fields | dipole | forces | all")
      ->required();
  verify->add_option("--tol-scale", tol_scale, "tolerance multiplier");
  verify->add_option("--output", output, "output path (default stdout)");
  verify->add_option("--config", config_path, "JSON config file (flags win)");

  // last occurrence wins so config-injected tokens yield to explicit flags
  for (auto* sub : app.get_subcommands({}))
    for (auto* opt : sub->get_options())
      if (opt->get_expected_max() == 1)
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (scan->parsed())
    return run_scan_amplitude(scan_beam, scan_quad, n_f, l_f, m_f_list, b_max,
                              n_points, unit_mass, output);
  if (pmap->parsed())
    return run_poynting_map(pmap_beam, rho_max, pmap_points, report_negative,
                            output);
  if (fsmp->parsed())
    return run_field_sample(fsmp_beam, f_rho, f_phi, f_z, f_rho_max, f_points,
                            output);
  if (force->parsed())
    return run_force(force_beam, alpha_re, alpha_im, w_rho, w_phi, w_z, fd_step,
                     decompose, output);
  if (tractor->parsed())
    return run_tractor_check(t_lambda, t_pitches, t_k, t_k_scale, t_alpha_im,
                             output);
  if (verify->parsed())
    return run_verify(suite, tol_scale, output);
  return 1;
}
