#pragma once

// Minimal dense real polynomials in x0, ascending coefficient order.
// Enough arithmetic for harmonic profiles and exact Jackson integration.

#include <vector>

#include "qdeform/qkernel.hpp"

namespace qdeform {

using Polynomial = std::vector<double>;  // p[k] multiplies x0^k

inline double poly_eval(const Polynomial& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline Polynomial poly_scale(Polynomial a, double s) {
  for (double& v : a) v *= s;
  return a;
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// p(x) -> p(s x)
inline Polynomial poly_rescale_argument(Polynomial p, double s) {
  double f = 1.0;
  for (double& v : p) {
    v *= f;
    f *= s;
  }
  return p;
}

// q-difference (p(x) - p(q^{2 sign} x)) / ((1 - q^{2 sign}) x) on monomials:
// x^n -> (sum_{j<n} q^{2 sign j}) x^{n-1}; exact at q = 1 (plain derivative).
inline Polynomial poly_qdiff(const Polynomial& p, const Deformation& d,
                             int sign) {
  if (p.size() <= 1) return {};
  Polynomial r(p.size() - 1, 0.0);
  for (size_t n = 1; n < p.size(); ++n)
    r[n - 1] = p[n] * qgeom(d, static_cast<int>(n), sign);
  return r;
}

}  // namespace qdeform
