#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "twistbeam/beam.hpp"
#include "twistbeam/forces.hpp"
#include "twistbeam/photoexcite.hpp"

using namespace twistbeam;
using namespace twistbeam::forces;
using beam::BeamParams;
using beam::CylPoint;
using beam::Vec3;

namespace {

constexpr double PI = std::numbers::pi;

BeamParams test_beam(int m_gamma, int lambda, double pitch = 0.2) {
  return BeamParams::from_pitch(photo::physical_wavenumber(2), pitch, m_gamma,
                                lambda);
}

double norm3(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

} // namespace

TEST_SUITE("forces") {

TEST_CASE("ParticleResponse guards absorption sign") {
  CHECK_THROWS_AS(ParticleResponse({1.0, -0.1}), std::invalid_argument);
  const ParticleResponse p({0.5, 2.0});
  CHECK(p.sigma(3.0) == doctest::Approx(6.0));
}

TEST_CASE("zero polarizability gives zero force") {
  const BeamParams bp = test_beam(1, 1);
  const ParticleResponse p({0.0, 0.0});
  const Vec3 f = force_dipole(bp, p, {0.3 * bp.wavelength(), 0.4, 0.0},
                              default_fd_step(bp));
  CHECK(f.x == 0.0);
  CHECK(f.y == 0.0);
  CHECK(f.z == 0.0);
}

TEST_CASE("real polarizability: pure radial gradient force") {
  const BeamParams bp = test_beam(1, 1, 0.35);
  const double lam = bp.wavelength();
  const ParticleResponse p({1.7, 0.0});
  for (double rho_lam : {0.2, 0.7, 1.9}) {
    const double phi = 0.83;
    const Vec3 f = force_dipole(bp, p, {rho_lam * lam, phi, 0.2 * lam},
                                default_fd_step(bp));
    // radial direction only
    const double f_rad = f.x * std::cos(phi) + f.y * std::sin(phi);
    const double f_phi = -f.x * std::sin(phi) + f.y * std::cos(phi);
    const double scale = std::max(std::abs(f_rad), 1e-300);
    CHECK(std::abs(f_phi) < 1e-10 * scale);
    CHECK(std::abs(f.z) < 1e-10 * scale);
    // matches (1/4) Re(alpha) d|E0|^2/drho via the analytic Bessel route
    const double expected =
        0.25 * p.alpha.real() * grad_e0sq_radial_analytic(bp, rho_lam * lam);
    CHECK(f_rad == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("on-axis tractor resolution across pitch angles and helicities") {
  for (double th : {0.05, 0.2, 0.5, 1.0}) {
    for (int lambda : {1, -1}) {
      const BeamParams bp = test_beam(-lambda, lambda, th);
      const ParticleResponse p({0.9, 1.3});
      const double sigma = p.sigma(bp.omega());
      const double i0 = beam::mean_e_sq(bp, {0, 0, 0});
      // Poynting flux points backward on axis
      CHECK(beam::poynting_closed(bp, 0.0).s_z < 0.0);
      // but the force is forward, F_z = sigma <E^2> cos(theta_k)
      const auto fb = force_decomposition(bp, p, {0, 0, 0}, default_fd_step(bp));
      CHECK(fb.total.z > 0.0);
      CHECK(fb.total.z / (sigma * i0) ==
            doctest::Approx(std::cos(th)).epsilon(1e-6));
      CHECK(fb.poynting.z / (sigma * i0) == doctest::Approx(-1.0).epsilon(1e-6));
      const double c2 = std::cos(0.5 * th) * std::cos(0.5 * th);
      CHECK(fb.spin_curl.z / (sigma * i0) ==
            doctest::Approx(2.0 * c2).epsilon(1e-6));
      // gradient term vanishes on axis
      CHECK(std::abs(fb.gradient.z) < 1e-9 * sigma * i0);
      // half-angle identity: -1 + 2 cos^2(th/2) = cos(th)
      CHECK(-1.0 + 2.0 * c2 == doctest::Approx(std::cos(th)).epsilon(1e-12));
    }
  }
}

TEST_CASE("plane-wave-like limit of the on-axis force") {
  const BeamParams bp = test_beam(-1, 1, 1e-3);
  const ParticleResponse p({0.0, 1.0});
  const double sigma = p.sigma(bp.omega());
  const double i0 = beam::mean_e_sq(bp, {0, 0, 0});
  const auto fb = force_decomposition(bp, p, {0, 0, 0}, default_fd_step(bp));
  // total -> sigma <E^2> as theta_k -> 0
  CHECK(fb.total.z / (sigma * i0) == doctest::Approx(1.0).epsilon(1e-5));
  // spin-curl z-term -> -2 x poynting z-term
  CHECK(fb.spin_curl.z / fb.poynting.z == doctest::Approx(-2.0).epsilon(1e-5));
}

TEST_CASE("decomposition identity at random off-axis points") {
  std::mt19937 rng(61u);
  std::uniform_real_distribution<double> urho(0.05, 3.0), uphi(-PI, PI),
      uz(-2.0, 2.0), upitch(0.05, 1.2), ure(-2.0, 2.0), uim(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const int m_gamma = static_cast<int>(rng() % 7) - 3;
    const int lambda = (rng() % 2 == 0) ? 1 : -1;
    const BeamParams bp = test_beam(m_gamma, lambda, upitch(rng));
    const double lam = bp.wavelength();
    const ParticleResponse p({ure(rng), uim(rng)});
    const CylPoint at{urho(rng) * lam, uphi(rng), uz(rng) * lam};
    const auto fb = force_decomposition(bp, p, at, default_fd_step(bp));
    const Vec3 sum{fb.gradient.x + fb.poynting.x + fb.spin_curl.x,
                   fb.gradient.y + fb.poynting.y + fb.spin_curl.y,
                   fb.gradient.z + fb.poynting.z + fb.spin_curl.z};
    const Vec3 diff{sum.x - fb.total.x, sum.y - fb.total.y, sum.z - fb.total.z};
    CHECK(norm3(diff) <= 1e-9 * std::max(norm3(fb.total), 1e-300));
  }
}

TEST_CASE("force is independent of z and phi-consistent") {
  const BeamParams bp = test_beam(2, 1, 0.4);
  const double lam = bp.wavelength();
  const ParticleResponse p({0.8, 0.6});
  const double h = default_fd_step(bp);
  const Vec3 f1 = force_dipole(bp, p, {0.9 * lam, 0.3, 0.0}, h);
  const Vec3 f2 = force_dipole(bp, p, {0.9 * lam, 0.3, 11.7 * lam}, h);
  const Vec3 d{f1.x - f2.x, f1.y - f2.y, f1.z - f2.z};
  CHECK(norm3(d) < 1e-10 * norm3(f1));
  // phi-component equals sigma S_phi plus the spin-curl phi-term
  const auto fb = force_decomposition(bp, p, {0.9 * lam, 0.3, 0.0}, h);
  const double fphi_total = -fb.total.x * std::sin(0.3) + fb.total.y * std::cos(0.3);
  const double fphi_sum =
      -(fb.poynting.x + fb.spin_curl.x + fb.gradient.x) * std::sin(0.3) +
      (fb.poynting.y + fb.spin_curl.y + fb.gradient.y) * std::cos(0.3);
  CHECK(fphi_total == doctest::Approx(fphi_sum).epsilon(1e-8));
}

TEST_CASE("finite-difference guard trips on absurd steps") {
  const BeamParams bp = test_beam(1, 1);
  const ParticleResponse p({0.5, 0.5});
  CHECK_THROWS_AS(
      force_dipole(bp, p, {0.5 * bp.wavelength(), 0.0, 0.0},
                   0.5 * bp.wavelength()),
      PrecisionError);
  CHECK_THROWS_AS(
      force_dipole(bp, p, {0.5 * bp.wavelength(), 0.0, 0.0}, -1.0),
      std::invalid_argument);
}

TEST_CASE("stress tensor symmetry and trace identity") {
  std::mt19937 rng(67u);
  std::uniform_real_distribution<double> urho(0.0, 3.0), uphi(-PI, PI);
  const BeamParams bp = test_beam(1, -1, 0.6);
  const double lam = bp.wavelength();
  for (int i = 0; i < 20; ++i) {
    const CylPoint at{urho(rng) * lam, uphi(rng), 0.1 * lam};
    const Mat3 t = stress_tensor_avg(bp, at);
    double scale = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        scale = std::max(scale, std::abs(t.m[a][b]));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(std::abs(t.m[a][b] - t.m[b][a]) <= 1e-14 * scale);
    // tr T = -(1/2) <E^2 + B^2>; here <B^2> = <E^2> for these modes
    const double tr = t.m[0][0] + t.m[1][1] + t.m[2][2];
    const double e2 = beam::mean_e_sq(bp, at);
    CHECK(tr == doctest::Approx(-e2).epsilon(1e-12));
  }
}

TEST_CASE("on-axis T_zz is negative for the counterpropagating mode") {
  const BeamParams bp = test_beam(-1, 1, 0.3);
  const Mat3 t = stress_tensor_avg(bp, {0, 0, 0});
  const double i0 = beam::mean_e_sq(bp, {0, 0, 0});
  CHECK(t.m[2][2] < 0.0);
  CHECK(t.m[2][2] == doctest::Approx(-i0).epsilon(1e-12));
}

TEST_CASE("absorptive disk force: positive, intensity-scaled, linear in area") {
  for (int lambda : {1, -1}) {
    for (int sign : {-1, 1}) {
      const BeamParams bp = test_beam(sign * lambda, lambda, 0.25);
      const double lam = bp.wavelength();
      const double i0 = beam::mean_e_sq(bp, {0, 0, 0});
      const double r_small = 0.01 * lam;
      const double f = force_absorptive_disk(bp, DiskGeometry(r_small), 64);
      CHECK(f > 0.0);
      CHECK(f / (PI * r_small * r_small) == doctest::Approx(i0).epsilon(0.01));
      // halving the radius quarters the force to within 1%
      const double f2 = force_absorptive_disk(bp, DiskGeometry(0.5 * r_small), 64);
      CHECK(f2 / f == doctest::Approx(0.25).epsilon(0.01));
    }
  }
  CHECK_THROWS_AS(DiskGeometry(0.0), std::invalid_argument);
}

TEST_CASE("disk force tends to zero linearly in area") {
  const BeamParams bp = test_beam(-1, 1, 0.3);
  const double lam = bp.wavelength();
  double prev_ratio = -1.0;
  for (double r_lam : {1e-2, 1e-3, 1e-4}) {
    const double r = r_lam * lam;
    const double f = force_absorptive_disk(bp, DiskGeometry(r), 48);
    const double ratio = f / (PI * r * r);
    if (prev_ratio > 0.0)
      CHECK(ratio == doctest::Approx(prev_ratio).epsilon(1e-3));
    prev_ratio = ratio;
  }
}

} // TEST_SUITE
