#pragma once

// Jackson-type q-integration on (0,1), its parity extension to (-1,1), and
// exact closed-form integration of polynomials under the same measure.  The
// node set is geometric, x_k = q_eff^k with q_eff = min(q, 1/q); the bracket
// symmetry q <-> 1/q makes this the consistent choice for q > 1.  On the
// classical branch the measure degenerates to the Riemann integral, which is
// evaluated by Gauss-Legendre quadrature on a sine-transformed variable so
// square-root endpoint factors stay smooth.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qdeform/polynomial.hpp"
#include "qdeform/qkernel.hpp"

namespace qdeform {

struct QuadratureRule {
  double q_eff = 0.0;  // in (0,1); 1 marks the classical branch
  int K = 0;           // truncation depth (node pairs)

  double tail_bound() const {
    return q_eff >= 1.0 ? 0.0 : std::pow(q_eff, 2.0 * K);
  }

  static QuadratureRule for_tolerance(const Deformation& d, double tail) {
    QuadratureRule r;
    r.q_eff = std::min(d.q, 1.0 / d.q);
    if (d.is_classical) {
      r.q_eff = 1.0;
      r.K = 1;
      return r;
    }
    if (!(tail > 0.0)) throw std::domain_error("tail bound must be positive");
    r.K = static_cast<int>(
              std::ceil(std::log(tail) / (2.0 * std::log(r.q_eff)))) +
          1;
    return r;
  }
};

namespace detail {

// 64-point Gauss-Legendre nodes/weights on (-1,1), computed once
inline const std::vector<std::pair<double, double>>& gauss_legendre_64() {
  static const std::vector<std::pair<double, double>> table = [] {
    const int n = 64;
    std::vector<std::pair<double, double>> t(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      t[i] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
    }
    return t;
  }();
  return table;
}

// classical integral over (0,1) via x = sin(t); exact to machine precision
// for polynomials and for sqrt(1 - x^2)-type endpoint factors
inline double classical_positive(const std::function<double(double)>& f) {
  double acc = 0.0;
  for (const auto& [u, w] : gauss_legendre_64()) {
    const double t = (u + 1.0) * (M_PI / 4.0);
    acc += w * f(std::sin(t)) * std::cos(t);
  }
  return acc * (M_PI / 4.0);
}

}  // namespace detail

// truncated node sum over (0,1): sum_k f(x_{2k+1}) (x_{2k} - x_{2k+2})
inline double jackson_positive(const Deformation& d,
                               const std::function<double(double)>& f,
                               int K) {
  if (K <= 0) throw std::domain_error("jackson_positive: K must be positive");
  if (d.is_classical) return detail::classical_positive(f);
  const double qe = std::min(d.q, 1.0 / d.q);
  const double e = qe * qe;
  double p = 1.0;  // q_eff^{2k}
  double acc = 0.0;
  for (int k = 0; k < K; ++k) {
    acc += f(qe * p) * p * (1.0 - e);
    p *= e;
  }
  return acc;
}

inline double jackson_positive(const Deformation& d,
                               const std::function<double(double)>& f,
                               const QuadratureRule& rule) {
  return jackson_positive(d, f, rule.K);
}

// full-interval integral as the parity extension: integral of f(x) + f(-x)
// over (0,1); odd integrands vanish identically
inline double jackson_symmetric(const Deformation& d,
                                const std::function<double(double)>& f,
                                int K) {
  return jackson_positive(
      d, [&f](double x) { return f(x) + f(-x); }, K);
}

// exact values of the measure on monomials: 1/[n+1] on (0,1)
inline double jackson_monomial_positive(const Deformation& d, int n) {
  if (n < 0) throw std::domain_error("monomial degree must be >= 0");
  return 1.0 / qnum(d, n + 1);
}

inline double jackson_monomial_symmetric(const Deformation& d, int n) {
  if (n < 0) throw std::domain_error("monomial degree must be >= 0");
  return n % 2 == 0 ? 2.0 / qnum(d, n + 1) : 0.0;
}

// closed-form symmetric integral of a polynomial (the K -> infinity limit)
inline double integrate_poly_symmetric(const Deformation& d,
                                       const Polynomial& p) {
  double acc = 0.0;
  for (size_t n = 0; n < p.size(); ++n)
    if (n % 2 == 0) acc += p[n] * 2.0 / qnum(d, static_cast<int>(n) + 1);
  return acc;
}

// orthonormality summary for a family of functions
struct GramReport {
  double q = 1.0;
  int lmax = 0;
  int K = 0;
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
  bool refit = false;  // set when normalizations were refit from the diagonal
};

}  // namespace qdeform
