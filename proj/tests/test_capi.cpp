#include <cmath>
#include <cstring>
#include <string>

#include <doctest.h>

#include <twistbeam.h>

namespace {

struct Beam {
  tb_beam* ptr = nullptr;
  ~Beam() { tb_beam_destroy(ptr); }
};

struct CmHandle {
  tb_cm_state* ptr = nullptr;
  ~CmHandle() { tb_cm_destroy(ptr); }
};

} // namespace

TEST_SUITE("capi") {

TEST_CASE("status codes and error messages") {
  double out = 0.0;
  CHECK(tb_bessel_j(0, 0.0, &out) == TB_OK);
  CHECK(out == 1.0);
  CHECK(tb_bessel_j(0, 2e6, &out) == TB_ERROR_DOMAIN);
  CHECK(std::strlen(tb_last_error()) > 0);
  CHECK(tb_hydrogen_radial(2, 2, 1.0, &out) == TB_ERROR_INVALID_ARGUMENT);
  CHECK(tb_bessel_j(0, 1.0, nullptr) == TB_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(tb_version()) == "0.1.0");
}

TEST_CASE("beam lifecycle and fields") {
  Beam beam;
  REQUIRE(tb_beam_create_pitch(2.7365e-3, 0.2, 1, 1, 1.0, &beam.ptr) == TB_OK);
  double omega = 0, theta = 0, lam = 0;
  CHECK(tb_beam_props(beam.ptr, &omega, &theta, &lam) == TB_OK);
  CHECK(omega == doctest::Approx(2.7365e-3));
  CHECK(theta == doctest::Approx(0.2));
  CHECK(lam == doctest::Approx(2 * 3.14159265358979 / 2.7365e-3).epsilon(1e-6));

  double are[3], aim[3], ere[3], eim[3];
  CHECK(tb_vector_potential(beam.ptr, 0.0, 0.0, 0.0, are, aim) == TB_OK);
  CHECK(tb_electric_field(beam.ptr, 0.0, 0.0, 0.0, ere, eim) == TB_OK);
  // E0 = i omega A0 componentwise
  for (int i = 0; i < 3; ++i) {
    CHECK(ere[i] == doctest::Approx(-omega * aim[i]).epsilon(1e-12));
    CHECK(eim[i] == doctest::Approx(omega * are[i]).epsilon(1e-12));
  }

  tb_beam* bad = nullptr;
  CHECK(tb_beam_create(-1.0, 1.0, 0, 1, 1.0, &bad) == TB_ERROR_INVALID_ARGUMENT);
  CHECK(tb_beam_create(1.0, 1.0, 0, 3, 1.0, &bad) == TB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("poynting and intensity") {
  Beam beam;
  REQUIRE(tb_beam_create_pitch(2.7365e-3, 0.2, -1, 1, 1.0, &beam.ptr) == TB_OK);
  double s[3] = {};
  CHECK(tb_poynting_closed(beam.ptr, 0.0, s) == TB_OK);
  CHECK(s[0] == 0.0);
  CHECK(s[2] < 0.0);
  double i0 = 0;
  CHECK(tb_mean_e_sq(beam.ptr, 0.0, 0.0, 0.0, &i0) == TB_OK);
  CHECK(i0 > 0.0);
  CHECK(s[2] == doctest::Approx(-i0).epsilon(1e-12));
}

TEST_CASE("quadrature defaults and atomic factors") {
  tb_quadrature quad;
  REQUIRE(tb_quadrature_default(2, &quad) == TB_OK);
  CHECK(quad.n_radial == 96);
  CHECK(quad.n_angular == 48);
  CHECK(quad.r_max == doctest::Approx(160.0));

  double k = 0;
  REQUIRE(tb_physical_wavenumber(2, &k) == TB_OK);
  Beam beam;
  REQUIRE(tb_beam_create_pitch(k, 0.2, 0, 1, 1.0, &beam.ptr) == TB_OK);
  double re = 0, im = 0;
  CHECK(tb_atomic_factor_g(beam.ptr, 2, 1, 0, 0, 1, &quad, &re, &im) == TB_OK);
  CHECK(std::abs(re - 0.077008) < 1e-4);
  CHECK(std::abs(im) < 1e-10);
  CHECK(tb_atomic_factor_g(beam.ptr, 2, 1, 3, 0, 1, &quad, &re, &im) ==
        TB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("scan layout matches per-point amplitudes") {
  double k = 0;
  REQUIRE(tb_physical_wavenumber(2, &k) == TB_OK);
  Beam beam;
  REQUIRE(tb_beam_create_pitch(k, 0.2, 0, 1, 1.0, &beam.ptr) == TB_OK);
  const int mfs[2] = {0, 1};
  const double lam = 2 * 3.14159265358979 / k;
  const double bs[3] = {0.0, 0.4 * lam, 1.1 * lam};
  double re[6], im[6];
  REQUIRE(tb_scan_amplitude(beam.ptr, 2, 1, mfs, 2, bs, 3, 1, nullptr, re,
                            im) == TB_OK);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      double pre = 0, pim = 0;
      REQUIRE(tb_amplitude_localized(beam.ptr, 2, 1, mfs[i], bs[j], 0.0, 1,
                                     nullptr, &pre, &pim) == TB_OK);
      CHECK(re[3 * i + j] == doctest::Approx(pre).epsilon(1e-12));
      CHECK(im[3 * i + j] == doctest::Approx(pim).epsilon(1e-12));
    }
}

TEST_CASE("cm states via the C surface") {
  double k = 0;
  REQUIRE(tb_physical_wavenumber(2, &k) == TB_OK);
  const double lam = 2 * 3.14159265358979 / k;
  Beam beam;
  REQUIRE(tb_beam_create_pitch(k, 0.2, 1, 1, 1.0, &beam.ptr) == TB_OK);
  CmHandle ring;
  REQUIRE(tb_cm_gaussian_ring(0.5 * lam, 0.02 * lam, 0, &ring.ptr) == TB_OK);
  double re = 0, im = 0;
  CHECK(tb_g_tilde(ring.ptr, ring.ptr, beam.ptr, 0, nullptr, &re, &im) == TB_OK);
  double jref = 0;
  REQUIRE(tb_bessel_j(0, k * std::sin(0.2) * 0.5 * lam, &jref) == TB_OK);
  CHECK(std::abs(re - jref) < 1e-3);

  // selection-rule zero through the C call
  CHECK(tb_amplitude_lz(beam.ptr, 2, 1, 0, 0, 0, ring.ptr, ring.ptr, 1,
                        nullptr, &re, &im) == TB_OK);
  CHECK(re == 0.0);
  CHECK(im == 0.0);

  // custom profile behaves like the built-in ring shape
  struct Ctx {
    double b, w;
  } ctx{0.5 * lam, 0.02 * lam};
  CmHandle custom;
  REQUIRE(tb_cm_custom_profile(
              0,
              [](double r, double z, void* p) {
                const auto* c = static_cast<Ctx*>(p);
                const double dr = (r - c->b) / (2.0 * c->w);
                const double dz = z / (0.2 * c->w);
                return std::exp(-dr * dr - dz * dz) / std::sqrt(r);
              },
              &ctx, ctx.b - 10 * ctx.w, ctx.b + 10 * ctx.w, ctx.w,
              &custom.ptr) == TB_OK);
  double cre = 0, cim = 0;
  CHECK(tb_g_tilde(custom.ptr, custom.ptr, beam.ptr, 0, nullptr, &cre, &cim) ==
        TB_OK);
  CHECK(std::abs(cre - jref) < 1e-3);
}

TEST_CASE("forces through the C surface") {
  double k = 0;
  REQUIRE(tb_physical_wavenumber(2, &k) == TB_OK);
  Beam beam;
  REQUIRE(tb_beam_create_pitch(k, 0.2, -1, 1, 1.0, &beam.ptr) == TB_OK);
  double total[3], gradient[3], poynting[3], spin_curl[3];
  REQUIRE(tb_force_decomposition(beam.ptr, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0,
                                 total, gradient, poynting, spin_curl) == TB_OK);
  CHECK(total[2] > 0.0);
  for (int i = 0; i < 3; ++i)
    CHECK(total[i] ==
          doctest::Approx(gradient[i] + poynting[i] + spin_curl[i])
              .epsilon(1e-8));
  // absorption sign guard surfaces as invalid argument
  CHECK(tb_force_dipole(beam.ptr, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0, total) ==
        TB_ERROR_INVALID_ARGUMENT);

  double t[9];
  REQUIRE(tb_stress_tensor(beam.ptr, 0.0, 0.0, 0.0, t) == TB_OK);
  CHECK(t[8] < 0.0); // T_zz on axis, m_gamma = -lambda
  CHECK(t[1] == doctest::Approx(t[3]).epsilon(1e-14));

  double fz = 0;
  const double lam = 2 * 3.14159265358979 / k;
  REQUIRE(tb_disk_force(beam.ptr, 0.01 * lam, 64, &fz) == TB_OK);
  CHECK(fz > 0.0);
}

TEST_CASE("verify suites through the C surface") {
  int passed = 0;
  char* report = nullptr;
  REQUIRE(tb_verify_suite("basis", 1.0, &passed, &report) == TB_OK);
  CHECK(passed == 1);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"suite\": \"basis\"") != std::string::npos);
  tb_string_free(report);
  CHECK(tb_verify_suite("bogus", 1.0, &passed, nullptr) ==
        TB_ERROR_INVALID_ARGUMENT);
}

} // TEST_SUITE
