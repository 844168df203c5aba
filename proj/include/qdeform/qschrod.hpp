#pragma once

// Deformed radial problem: the effective angular momentum from the
// centrifugal coefficient, closed-form spectra for the Coulomb and
// oscillator potentials, a finite-difference eigensolver as an independent
// cross-check, and the angular deformation observable <x0^2>.
//
// Natural units throughout (hbar = mass = 1), kinetic prefactor 1/2.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdeform/qint.hpp"
#include "qdeform/qkernel.hpp"

namespace qdeform {

// centrifugal coefficient [2l]/[2] [2l+2]/[2] + c_l^2 - c_l of the kinetic
// operator on the (2l+1)-dimensional block; reduces to l(l+1) classically
inline double angular_coefficient(const Deformation& d, int l) {
  if (l < 0) throw std::domain_error("angular_coefficient: l must be >= 0");
  const double two = qnum(d, 2);
  const double cl = c_eig(d, l);
  return qnum(d, 2 * l) / two * qnum(d, 2 * l + 2) / two + cl * cl - cl;
}

// unique nonnegative root of L(L+1) = angular_coefficient; equals l at q = 1
inline double effective_L(const Deformation& d, int l) {
  const double x = angular_coefficient(d, l);
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * x));
}

inline double coulomb_energy(const Deformation& d, int n, int l) {
  if (n < 0 || l < 0) throw std::domain_error("coulomb_energy: n, l >= 0");
  const double L = effective_L(d, l);
  return -0.5 / ((n + L + 1.0) * (n + L + 1.0));
}

inline double oscillator_energy(const Deformation& d, int n, int l) {
  if (n < 0 || l < 0) throw std::domain_error("oscillator_energy: n, l >= 0");
  return 2.0 * n + effective_L(d, l) + 1.5;
}

enum class Potential { coulomb, oscillator };

inline const char* potential_name(Potential p) {
  return p == Potential::coulomb ? "coulomb" : "oscillator";
}

struct RadialProblem {
  Potential potential = Potential::coulomb;
  Deformation d;
  int l = 0;
  double r_max = 0.0;  // 0 selects an automatic box size
  int points = 2400;
  int n_states = 3;
};

enum class SpectrumSource { closed_form, numerical };

struct SpectrumRow {
  Potential potential = Potential::coulomb;
  double q = 1.0;
  int n = 0;
  int l = 0;
  double L_eff = 0.0;
  double E_closed = std::numeric_limits<double>::quiet_NaN();
  double E_numeric = std::numeric_limits<double>::quiet_NaN();
  double abs_diff = std::numeric_limits<double>::quiet_NaN();
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
};

namespace detail {

// number of eigenvalues of the symmetric tridiagonal (diag, off) below x
inline int sturm_count_below(const std::vector<double>& diag,
                             const std::vector<double>& off, double x) {
  int count = 0;
  double dprev = 1.0;
  for (size_t i = 0; i < diag.size(); ++i) {
    double di = diag[i] - x;
    if (i > 0) di -= off[i - 1] * off[i - 1] / dprev;
    if (di == 0.0) di = -1e-300;
    if (di < 0.0) ++count;
    dprev = di;
  }
  return count;
}

inline std::vector<double> tridiag_lowest_eigenvalues(
    const std::vector<double>& diag, const std::vector<double>& off,
    int count) {
  double lo = diag[0], hi = diag[0];
  for (size_t i = 0; i < diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  std::vector<double> eigs;
  for (int j = 0; j < count; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a));
         ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count_below(diag, off, mid) >= j + 1)
        b = mid;
      else
        a = mid;
    }
    eigs.push_back(0.5 * (a + b));
  }
  return eigs;
}

// one inverse-iteration eigenvector for the shifted tridiagonal
inline std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                               const std::vector<double>& off,
                                               double eig) {
  const size_t n = diag.size();
  std::vector<double> v(n, 1.0);
  const double shift = eig + 1e-10 * (1.0 + std::abs(eig));
  for (int pass = 0; pass < 3; ++pass) {
    // Thomas solve (A - shift) w = v
    std::vector<double> c(n), z(n);
    double denom = diag[0] - shift;
    if (std::abs(denom) < 1e-300) denom = 1e-300;
    c[0] = off.empty() ? 0.0 : off[0] / denom;
    z[0] = v[0] / denom;
    for (size_t i = 1; i < n; ++i) {
      denom = diag[i] - shift - off[i - 1] * c[i - 1];
      if (std::abs(denom) < 1e-300) denom = 1e-300;
      c[i] = (i + 1 < n) ? off[i] / denom : 0.0;
      z[i] = (v[i] - off[i - 1] * z[i - 1]) / denom;
    }
    v[n - 1] = z[n - 1];
    for (size_t i = n - 1; i-- > 0;) v[i] = z[i] - c[i] * v[i + 1];
    double norm = 0.0;
    for (double w : v) norm += w * w;
    norm = std::sqrt(norm);
    for (double& w : v) w /= norm;
  }
  return v;
}

struct OscillatorGrid {
  double h = 0.0;
  std::vector<double> r, diag, off;
};

inline OscillatorGrid oscillator_grid(double L, double rmax, int n) {
  OscillatorGrid g;
  g.h = rmax / n;
  for (int i = 1; i < n; ++i) {
    const double r = i * g.h;
    g.r.push_back(r);
    g.diag.push_back(1.0 / (g.h * g.h) + 0.5 * L * (L + 1.0) / (r * r) +
                     0.5 * r * r);
  }
  g.off.assign(g.r.size() - 1, -0.5 / (g.h * g.h));
  return g;
}

inline std::vector<double> solve_oscillator(double L, double rmax, int n,
                                            int count) {
  const auto g = oscillator_grid(L, rmax, n);
  return tridiag_lowest_eigenvalues(g.diag, g.off, count);
}

// Coulomb on a log grid: r = e^t, the radial factor r^L peeled off and the
// first-derivative term removed, leaving a symmetric-definite problem that
// is reduced by the diagonal congruence to a standard tridiagonal one.
inline std::vector<double> solve_coulomb(double L, double rmin, double rmax,
                                         int n, int count) {
  const double tmin = std::log(rmin), tmax = std::log(rmax);
  const double h = (tmax - tmin) / n;
  const double alpha = 2.0 * L + 1.0;
  std::vector<double> diag, off;
  std::vector<double> t;
  for (int i = 1; i < n; ++i) t.push_back(tmin + i * h);
  for (size_t i = 0; i < t.size(); ++i) {
    const double di = 0.25 * alpha * alpha - 2.0 * std::exp(t[i]);
    diag.push_back((2.0 / (h * h) + di) * std::exp(-2.0 * t[i]));
    if (i + 1 < t.size())
      off.push_back(-std::exp(-(t[i] + t[i + 1])) / (h * h));
  }
  const auto eigs = tridiag_lowest_eigenvalues(diag, off, count);
  std::vector<double> out;
  for (double e : eigs) out.push_back(0.5 * e);
  return out;
}

inline double auto_rmax(const RadialProblem& p, double L) {
  if (p.r_max > 0.0) return p.r_max;
  if (p.potential == Potential::coulomb)
    return 30.0 * (p.n_states + L + 1.0);
  const double emax = 2.0 * (p.n_states - 1) + L + 1.5;
  return 3.0 * std::sqrt(2.0 * emax) + 4.0;
}

}  // namespace detail

// Lowest eigenvalues on two nested grids with Richardson extrapolation.
// Throws when the two-grid estimate says the requested accuracy is not met.
inline SpectrumTable radial_eigensolve(const RadialProblem& p,
                                       double accuracy = 1e-3) {
  if (p.l < 0 || p.n_states < 1)
    throw std::domain_error("radial_eigensolve: bad quantum numbers");
  if (p.points < 200)
    throw std::domain_error("radial_eigensolve: need at least 200 points");
  const double L = effective_L(p.d, p.l);
  const double rmax = detail::auto_rmax(p, L);

  auto solve = [&](int n) {
    return p.potential == Potential::coulomb
               ? detail::solve_coulomb(L, 1e-5, rmax, n, p.n_states)
               : detail::solve_oscillator(L, rmax, n, p.n_states);
  };
  const auto coarse = solve(p.points);
  const auto fine = solve(2 * p.points);

  SpectrumTable table;
  for (int n = 0; n < p.n_states; ++n) {
    const double gap = std::abs(fine[n] - coarse[n]) / 3.0;
    if (gap > accuracy)
      throw std::runtime_error(
          "radial_eigensolve: grid not converged, two-grid estimate " +
          std::to_string(gap) + " for state " + std::to_string(n));
    SpectrumRow row;
    row.potential = p.potential;
    row.q = p.d.q;
    row.n = n;
    row.l = p.l;
    row.L_eff = L;
    row.E_numeric = (4.0 * fine[n] - coarse[n]) / 3.0;
    table.rows.push_back(row);
  }
  return table;
}

// full (n, l) table; "both" carries closed and numeric values side by side
enum class SpectrumMode { closed, numeric, both };

inline SpectrumTable spectrum_table(const Deformation& d, Potential pot,
                                    int n_max, int l_max, SpectrumMode mode,
                                    int points = 2400) {
  if (n_max < 0 || l_max < 0)
    throw std::domain_error("spectrum_table: bounds must be >= 0");
  SpectrumTable table;
  for (int l = 0; l <= l_max; ++l) {
    SpectrumTable numeric;
    if (mode != SpectrumMode::closed) {
      RadialProblem p;
      p.potential = pot;
      p.d = d;
      p.l = l;
      p.points = points;
      p.n_states = n_max + 1;
      numeric = radial_eigensolve(p);
    }
    for (int n = 0; n <= n_max; ++n) {
      SpectrumRow row;
      row.potential = pot;
      row.q = d.q;
      row.n = n;
      row.l = l;
      row.L_eff = effective_L(d, l);
      if (mode != SpectrumMode::numeric)
        row.E_closed = pot == Potential::coulomb ? coulomb_energy(d, n, l)
                                                 : oscillator_energy(d, n, l);
      if (mode != SpectrumMode::closed)
        row.E_numeric = numeric.rows[n].E_numeric;
      if (mode == SpectrumMode::both)
        row.abs_diff = std::abs(row.E_closed - row.E_numeric);
      table.rows.push_back(row);
    }
  }
  return table;
}

// angular expectation <x0^2> of an angle-independent state, evaluated as the
// quadrature ratio; the closed form is 1/[3]
inline double mean_x0_squared(const Deformation& d) {
  const auto rule = QuadratureRule::for_tolerance(d, 1e-18);
  const double num =
      jackson_symmetric(d, [](double x) { return x * x; }, rule.K);
  const double den = jackson_symmetric(d, [](double) { return 1.0; }, rule.K);
  return num / den;
}

inline double mean_x0_squared_closed(const Deformation& d) {
  return 1.0 / qnum(d, 3);
}

// The angular factor and the radial scale are reported separately: the
// radial mean square is taken from the numeric ground state, so the product
// <r^2>/[3] is available without guessing what sets the radial scale.
struct X0SquaredReport {
  double angular_factor = 0.0;  // quadrature value of <x0^2>
  double closed_form = 0.0;     // 1/[3]
  double radial_mean_r2 = 0.0;  // <r^2> of the l = 0 numeric ground state
  double product = 0.0;         // <r^2> * angular factor
};

inline X0SquaredReport observable_x0_squared(const Deformation& d,
                                             Potential pot,
                                             int points = 2000) {
  X0SquaredReport rep;
  rep.angular_factor = mean_x0_squared(d);
  rep.closed_form = mean_x0_squared_closed(d);

  RadialProblem p;
  p.potential = pot;
  p.d = d;
  p.l = 0;
  p.points = points;
  p.n_states = 1;
  const double L = effective_L(d, 0);
  const double rmax = detail::auto_rmax(p, L);
  if (pot == Potential::oscillator) {
    const auto g = detail::oscillator_grid(L, rmax, points);
    const auto eigs = detail::tridiag_lowest_eigenvalues(g.diag, g.off, 1);
    const auto u = detail::tridiag_eigenvector(g.diag, g.off, eigs[0]);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
      num += u[i] * u[i] * g.r[i] * g.r[i];
      den += u[i] * u[i];
    }
    rep.radial_mean_r2 = num / den;
  } else {
    // log grid: with r = e^t and the symmetrized variable v the radial
    // moments are integrals of v^2 e^{2kt}
    const double tmin = std::log(1e-5), tmax = std::log(rmax);
    const double h = (tmax - tmin) / points;
    const double alpha = 2.0 * L + 1.0;
    std::vector<double> diag, off, t;
    for (int i = 1; i < points; ++i) t.push_back(tmin + i * h);
    for (size_t i = 0; i < t.size(); ++i) {
      const double di = 0.25 * alpha * alpha - 2.0 * std::exp(t[i]);
      diag.push_back((2.0 / (h * h) + di) * std::exp(-2.0 * t[i]));
      if (i + 1 < t.size())
        off.push_back(-std::exp(-(t[i] + t[i + 1])) / (h * h));
    }
    const auto eigs = detail::tridiag_lowest_eigenvalues(diag, off, 1);
    // the congruence variable is u = e^t v, so moments of v pick up e^{-2t}
    const auto u = detail::tridiag_eigenvector(diag, off, eigs[0]);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
      num += u[i] * u[i] * std::exp(2.0 * t[i]);
      den += u[i] * u[i];
    }
    rep.radial_mean_r2 = num / den;
  }
  rep.product = rep.radial_mean_r2 * rep.angular_factor;
  return rep;
}

}  // namespace qdeform
