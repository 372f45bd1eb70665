#include "twistbeam/math_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace twistbeam::math {

void QuadratureSpec::validate() const {
  if (n_radial < 8 || n_angular < 8)
    throw std::invalid_argument("QuadratureSpec: node counts must be >= 8");
  if (!(r_max > 0.0))
    throw std::invalid_argument("QuadratureSpec: r_max must be positive");
}

QuadratureSpec QuadratureSpec::for_final_state(int n_f) {
  if (n_f < 1 || n_f > 6)
    throw std::invalid_argument("QuadratureSpec: n_f out of range [1,6]");
  QuadratureSpec q;
  q.r_max = 40.0 * n_f * n_f;
  return q;
}

namespace {

// Ascending power series, reliable for |x| < 12. Long-double accumulation
// keeps the alternating-sum cancellation below 1e-15 absolute at x ~ 12.
double bessel_j_series(int n, double x) {
  if (x == 0.0)
    return n == 0 ? 1.0 : 0.0;
  const long double half = 0.5L * static_cast<long double>(x);
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k)
    term *= half / k;
  if (term == 0.0L)
    return 0.0;
  long double sum = term;
  const long double h2 = half * half;
  for (int k = 1; k <= 400; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-20L * std::abs(sum) && k > 4)
      break;
  }
  return static_cast<double>(sum);
}

// Miller backward recurrence, normalized with J_0 + 2 sum J_{2k} = 1.
double bessel_j_miller(int n, double x) {
  const double ax = std::abs(x);
  const int start = n + 16 +
                    static_cast<int>(ax + 12.0 * std::cbrt(ax));
  const int m_start = start + (start % 2); // even
  long double jp1 = 0.0L;
  long double j = 1e-300L;
  long double target = 0.0L;
  long double norm = 0.0L;
  for (int k = m_start; k >= 1; --k) {
    const long double jm1 = (2.0L * k / ax) * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == n)
      target = j;
    if ((k - 1) % 2 == 0)
      norm += (k - 1 == 0) ? j : 2.0L * j;
    if (std::abs(j) > 1e280L) {
      j *= 1e-280L;
      jp1 *= 1e-280L;
      target *= 1e-280L;
      norm *= 1e-280L;
    }
  }
  return static_cast<double>(target / norm);
}

} // namespace

double bessel_j(int order, double x) {
  if (!(std::abs(x) < 1e6))
    throw std::domain_error("bessel_j: |x| >= 1e6 outside supported domain");
  double sign = 1.0;
  if (order < 0) { // J_{-n} = (-1)^n J_n
    order = -order;
    if (order % 2 != 0)
      sign = -sign;
  }
  if (x < 0.0) { // J_n(-x) = (-1)^n J_n(x)
    x = -x;
    if (order % 2 != 0)
      sign = -sign;
  }
  const double val = (x < 12.0) ? bessel_j_series(order, x)
                                : bessel_j_miller(order, x);
  return sign * val;
}

double bessel_j_prime(int order, double x) {
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

double sph_harm_phi0(int l, int m, double theta) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("sph_harm_phi0: need 0 <= |m| <= l");
  const int am = std::abs(m);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Normalized associated Legendre P~_l^m with Condon-Shortley phase:
  // Y_{l m}(theta, 0) = P~_l^m(cos theta).
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int k = 1; k <= am; ++k)
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  double y = pmm;
  if (l > am) {
    double pm1 = pmm;
    double p = std::sqrt(2.0 * am + 3.0) * c * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a =
          std::sqrt((4.0 * ll * ll - 1.0) /
                    (static_cast<double>(ll) * ll - static_cast<double>(am) * am));
      const double b =
          std::sqrt(((ll - 1.0) * (ll - 1.0) - static_cast<double>(am) * am) /
                    (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double pnext = a * (c * p - b * pm1);
      pm1 = p;
      p = pnext;
    }
    y = p;
  }
  if (m < 0 && am % 2 != 0) // Y_{l,-m}(theta,0) = (-1)^m Y_{l m}(theta,0)
    y = -y;
  return y;
}

namespace {

void check_hydrogen_qn(int n, int l) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("hydrogen_radial: n out of range [1,6]");
  if (l < 0 || l >= n)
    throw std::invalid_argument("hydrogen_radial: need 0 <= l < n");
}

// Generalized Laguerre L_k^a(x) by the three-term recurrence.
double laguerre(int k, int a, double x) {
  if (k < 0)
    return 0.0;
  double lkm1 = 1.0;
  if (k == 0)
    return lkm1;
  double lk = 1.0 + a - x;
  for (int i = 2; i <= k; ++i) {
    const double lnext = ((2.0 * i - 1.0 + a - x) * lk - (i - 1.0 + a) * lkm1) / i;
    lkm1 = lk;
    lk = lnext;
  }
  return lk;
}

double hydrogen_norm(int n, int l) {
  double fac = 1.0; // (n-l-1)! / (n+l)!
  for (int k = n - l; k <= n + l; ++k)
    fac /= k;
  return std::sqrt(std::pow(2.0 / n, 3) * fac / (2.0 * n));
}

double pow_int(double x, int p) {
  if (p == 0)
    return 1.0;
  double r = 1.0;
  for (int i = 0; i < p; ++i)
    r *= x;
  return r;
}

} // namespace

double hydrogen_radial(int n, int l, double r) {
  check_hydrogen_qn(n, l);
  if (r < 0.0)
    throw std::invalid_argument("hydrogen_radial: r must be >= 0");
  const double rho = 2.0 * r / n;
  return hydrogen_norm(n, l) * std::exp(-r / n) * pow_int(rho, l) *
         laguerre(n - l - 1, 2 * l + 1, rho);
}

double hydrogen_radial_deriv(int n, int l, double r) {
  check_hydrogen_qn(n, l);
  if (r < 0.0)
    throw std::invalid_argument("hydrogen_radial_deriv: r must be >= 0");
  const double rho = 2.0 * r / n;
  const double c = hydrogen_norm(n, l) * std::exp(-r / n);
  const double lag = laguerre(n - l - 1, 2 * l + 1, rho);
  // d/dx L_k^a(x) = -L_{k-1}^{a+1}(x), chain factor 2/n
  double d = -pow_int(rho, l) * lag / n -
             (2.0 / n) * pow_int(rho, l) * laguerre(n - l - 2, 2 * l + 2, rho);
  if (l > 0)
    d += (2.0 * l / n) * pow_int(rho, l - 1) * lag;
  return c * d;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 2)
    throw std::invalid_argument("gauss_legendre: need n >= 2");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate of the i-th root, polished by Newton.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15)
        break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

const GaussLegendre& gauss_legendre_cached(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

MappedRule mapped_rule(int n, double a, double b) {
  const GaussLegendre& gl = gauss_legendre_cached(n);
  MappedRule r;
  r.x.resize(n);
  r.w.resize(n);
  const double mid = 0.5 * (a + b);
  const double halfw = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.x[i] = mid + halfw * gl.nodes[i];
    r.w[i] = halfw * gl.weights[i];
  }
  return r;
}

} // namespace twistbeam::math
