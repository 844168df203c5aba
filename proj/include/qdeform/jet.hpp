#pragma once

// Truncated Taylor jets around a real evaluation point.  Radial profiles in
// the function realization are closures returning jets, so the classical
// branch of the q-difference operator (a plain derivative) stays exact under
// arbitrarily deep operator nesting.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qdeform {

class Jet {
 public:
  explicit Jet(int order) : c_(static_cast<size_t>(order) + 1, 0.0) {
    if (order < 0) throw std::invalid_argument("Jet: negative order");
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double& operator[](int k) { return c_[static_cast<size_t>(k)]; }
  double operator[](int k) const { return c_[static_cast<size_t>(k)]; }

  // the identity function x at point x0
  static Jet variable(double x0, int order) {
    Jet j(order);
    j[0] = x0;
    if (order >= 1) j[1] = 1.0;
    return j;
  }

  static Jet constant(double v, int order) {
    Jet j(order);
    j[0] = v;
    return j;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= std::min(order(), o.order()); ++k) c_[k] += o[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= std::min(order(), o.order()); ++k) c_[k] -= o[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = std::min(a.order(), b.order());
    Jet r(n);
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= k; ++j) r[k] += a[j] * b[k - j];
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    const int n = std::min(a.order(), b.order());
    if (b[0] == 0.0) throw std::domain_error("Jet division by zero value");
    Jet r(n);
    for (int k = 0; k <= n; ++k) {
      double s = (k <= a.order()) ? a[k] : 0.0;
      for (int j = 1; j <= k; ++j) s -= b[j] * r[k - j];
      r[k] = s / b[0];
    }
    return r;
  }

  // principal square root; the value must be positive (zero is allowed only
  // for order-0 jets, where no derivative is requested)
  friend Jet jet_sqrt(const Jet& a) {
    if (a[0] < 0.0)
      throw std::domain_error("jet_sqrt: negative argument (outside domain)");
    Jet r(a.order());
    if (a[0] == 0.0) {
      if (a.order() > 0)
        throw std::domain_error("jet_sqrt: derivative at branch point");
      return r;
    }
    r[0] = std::sqrt(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
      double s = a[k];
      for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
      r[k] = s / (2.0 * r[0]);
    }
    return r;
  }

  // jet of f(s*x) given the jet of f at s*x: rescale the k-th coefficient
  Jet rescaled_argument(double s) const {
    Jet r(order());
    double p = 1.0;
    for (int k = 0; k <= order(); ++k) {
      r[k] = c_[k] * p;
      p *= s;
    }
    return r;
  }

  // drop one derivative: jet of f' from the jet of f (needs order >= 1)
  Jet derivative() const {
    if (order() < 1) throw std::logic_error("Jet::derivative: order too low");
    Jet r(order() - 1);
    for (int k = 1; k <= order(); ++k) r[k - 1] = c_[k] * k;
    return r;
  }

 private:
  std::vector<double> c_;
};

// polynomial sum c[0] + c[1] x + ... evaluated on a jet (Horner)
inline Jet jet_polyval(const std::vector<double>& coeffs, const Jet& x) {
  Jet acc = Jet::constant(0.0, x.order());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + Jet::constant(*it, x.order());
  return acc;
}

}  // namespace qdeform
