#pragma once

#include <stdexcept>
#include <vector>

namespace twistbeam {

// Thrown when an internal accuracy check fails (quadrature doubling test,
// finite-difference step disagreement, ...).
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace math {

// Node counts and radial cutoff for the (r, cos theta) product quadrature
// used by the matrix-element integrals.
struct QuadratureSpec {
  int n_radial = 96;
  int n_angular = 48;
  double r_max = 160.0; // a0

  void validate() const;

  // r_max = 40 n^2 a0 covers the exponential tail of R_{n l}.
  static QuadratureSpec for_final_state(int n_f);
};

// Cylindrical Bessel function of the first kind, integer order.
// Ascending series for |x| < 12, Miller backward recurrence normalized by
// the closure relation otherwise. Throws std::domain_error for |x| >= 1e6.
double bessel_j(int order, double x);

// d/dx J_n(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2
double bessel_j_prime(int order, double x);

// Real spherical harmonic Y_{l m}(theta, phi = 0), Condon-Shortley phase.
double sph_harm_phi0(int l, int m, double theta);

// Hydrogen radial function R_{n l}(r), r in a0, normalized so that
// int_0^inf r^2 R^2 dr = 1. Supports 1 <= n <= 6, 0 <= l < n.
double hydrogen_radial(int n, int l, double r);

// Analytic dR_{n l}/dr.
double hydrogen_radial_deriv(int n, int l, double r);

struct GaussLegendre {
  std::vector<double> nodes;   // on [-1, 1], ascending
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

// Shared immutable rule, memoized per n.
const GaussLegendre& gauss_legendre_cached(int n);

// Rule mapped onto [a, b].
struct MappedRule {
  std::vector<double> x;
  std::vector<double> w;
};
MappedRule mapped_rule(int n, double a, double b);

} // namespace math
} // namespace twistbeam
