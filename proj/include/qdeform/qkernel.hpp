#pragma once

// Scalar q-arithmetic: brackets [n], q-factorials, the constant lambda and
// the closed-form invariant eigenvalues of the deformed angular momentum
// algebra. Everything here is a pure function of (q, integers).

#include <cmath>
#include <stdexcept>

namespace qdeform {

// default tolerance for identity checks; see also per-check overrides
inline constexpr double kDefaultTolerance = 1e-10;
// |q - 1| below this switches to the analytic q -> 1 branch
inline constexpr double kClassicalEps = 1e-12;

struct Deformation {
  double q = 1.0;
  double lambda = 0.0;  // q - 1/q
  bool is_classical = true;

  static Deformation make(double q) {
    if (!(q > 0.0))
      throw std::domain_error("deformation parameter q must be positive");
    Deformation d;
    d.q = q;
    d.lambda = q - 1.0 / q;
    d.is_classical = std::abs(q - 1.0) < kClassicalEps;
    return d;
  }
};

// Bracket value of a (possibly non-integer) number n.
using QValue = double;

// [n] = (q^n - q^-n) / (q - q^-1); the analytic limit n is used at q = 1.
// Symmetric under q <-> 1/q and odd in n.
inline QValue qnum(const Deformation& d, double n) {
  if (d.is_classical) return n;
  return (std::pow(d.q, n) - std::pow(d.q, -n)) / d.lambda;
}

// Bracket evaluated with q replaced by q^base_exponent.  Supports
// half-integer n so rewrites like [n] = [2] [n/2]_{q^2} are checkable.
inline QValue qnum_base(const Deformation& d, double n, int base_exponent) {
  if (base_exponent != 1 && base_exponent != 2)
    throw std::domain_error("qnum_base: base exponent must be 1 or 2");
  if (d.is_classical) return n;
  const double qb = std::pow(d.q, base_exponent);
  return (std::pow(qb, n) - std::pow(qb, -n)) / (qb - 1.0 / qb);
}

// [n]! = [n][n-1]...[1], with [0]! = 1.
inline QValue qfactorial(const Deformation& d, int n) {
  if (n < 0) throw std::domain_error("qfactorial: n must be >= 0");
  double acc = 1.0;
  for (int k = 2; k <= n; ++k) acc *= qnum(d, k);
  return acc;
}

// [n]!! = [n][n-2]..., with [0]!! = [-1]!! = 1 so that the harmonic
// normalization ratios are defined at m = l and m = l - 1.
inline QValue qdoublefactorial(const Deformation& d, int n) {
  if (n < -1) throw std::domain_error("qdoublefactorial: n must be >= -1");
  double acc = 1.0;
  for (int k = n; k >= 2; k -= 2) acc *= qnum(d, k);
  return acc;
}

// One-sided geometric bracket sum_{j=0}^{n-1} q^{s*2j}; equals
// (1 - q^{2sn}) / (1 - q^{2s}) without cancellation and is exact at q = 1.
// This is the coefficient produced by the q-difference operator on x^n.
inline double qgeom(const Deformation& d, int n, int sign) {
  double acc = 0.0;
  const double step = std::pow(d.q, 2.0 * sign);
  double term = 1.0;
  for (int j = 0; j < n; ++j) {
    acc += term;
    term *= step;
  }
  return acc;
}

// Casimir eigenvalue C_l = [l][l+1] on the (2l+1)-dimensional block.
inline double casimir_eig(const Deformation& d, int l) {
  if (l < 0) throw std::domain_error("casimir_eig: l must be >= 0");
  return qnum(d, l) * qnum(d, l + 1);
}

// Square of the vector invariant, C'_l = [2l]/[2] * [2l+2]/[2].
inline double cprime_eig(const Deformation& d, int l) {
  if (l < 0) throw std::domain_error("cprime_eig: l must be >= 0");
  const double two = qnum(d, 2);
  return qnum(d, 2 * l) / two * qnum(d, 2 * l + 2) / two;
}

// Central invariant c_l = (q^{2l+1} + q^{-2l-1}) / [2]; equals 1 at q = 1
// and exceeds 1 for every l >= 1, q != 1.  The denominator uses the closed
// form q + 1/q so that c_0 = 1 holds exactly in floating point.
inline double c_eig(const Deformation& d, int l) {
  if (l < 0) throw std::domain_error("c_eig: l must be >= 0");
  return (std::pow(d.q, 2 * l + 1) + std::pow(d.q, -2 * l - 1)) /
         (d.q + 1.0 / d.q);
}

}  // namespace qdeform
