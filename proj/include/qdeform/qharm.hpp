#pragma once

// Deformed spherical harmonics: recursion coefficients, terminating
// q-hypergeometric closed forms, normalization, ladder identities, and the
// product/commutation relations with the position components.  Profiles are
// polynomial cores under a sector prefactor; negative m is built by the
// lowering ladder and normalized against the quadrature diagonal.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdeform/polynomial.hpp"
#include "qdeform/qfunc.hpp"
#include "qdeform/qint.hpp"
#include "qdeform/qkernel.hpp"

namespace qdeform {

struct HarmonicSpec {
  int l = 0;
  int m = 0;                // negative m: core built by the lowering ladder
  Polynomial coeffs;        // polynomial core under the |m|-fold prefactor
  double norm = 1.0;        // normalization constant (magnitude)
  int sign = +1;            // overall phase
};

// Series coefficients of the unnormalized eigenfunction for 0 <= m <= l:
// a_{k+2} = -q^{-2m} [l-m-k][l+m+k+1] / ([k+1][k+2]) a_k, a_parity = 1.
inline HarmonicSpec phi_coeffs(const Deformation& d, int l, int m) {
  if (l < 0 || m < 0 || m > l)
    throw std::domain_error("phi_coeffs: need 0 <= m <= l");
  HarmonicSpec spec;
  spec.l = l;
  spec.m = m;
  spec.coeffs.assign(static_cast<size_t>(l - m) + 1, 0.0);
  const int start = (l - m) % 2;  // series parity matches l - m
  // leading term of the series in the variable (q^{-m} x0)
  spec.coeffs[start] = start == 0 ? 1.0 : std::pow(d.q, -m);
  const double qm2 = std::pow(d.q, -2.0 * m);
  for (int k = start; k + 2 <= l - m; k += 2) {
    spec.coeffs[k + 2] = -qm2 * qnum(d, l - m - k) * qnum(d, l + m + k + 1) /
                         (qnum(d, k + 1) * qnum(d, k + 2)) * spec.coeffs[k];
  }
  return spec;
}

// Terminating basic hypergeometric sum; all brackets are taken in the base
// carried by `dbase` (the callers pass the square of the deformation).
// Parameters must terminate through a or b; anything else is rejected.
inline double q_hypergeometric(const Deformation& dbase, double a, double b,
                               double c, double z) {
  constexpr int kMaxTerms = 256;
  double term = 1.0;
  double acc = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double na = qnum(dbase, a + k);
    const double nb = qnum(dbase, b + k);
    if (std::abs(na) < 1e-14 || std::abs(nb) < 1e-14) return acc;
    const double nc = qnum(dbase, c + k);
    if (std::abs(nc) < 1e-14)
      throw std::domain_error("q_hypergeometric: lower parameter vanishes");
    term *= na * nb / (nc * qnum(dbase, k + 1)) * z;
    acc += term;
  }
  throw std::domain_error("q_hypergeometric: series does not terminate");
}

// Printed normalization constant: sign and magnitude per the parity of l-m.
inline HarmonicSpec normalize(const Deformation& d, HarmonicSpec spec) {
  const int l = spec.l, m = spec.m;
  if (m < 0) throw std::domain_error("normalize: printed form needs m >= 0");
  const int s = l - m;
  double ratio;
  if (s % 2 == 0) {
    spec.sign = (s / 2) % 2 == 0 ? +1 : -1;
    ratio = qdoublefactorial(d, l - m - 1) / qdoublefactorial(d, l - m) *
            qdoublefactorial(d, l + m - 1) / qdoublefactorial(d, l + m);
  } else {
    spec.sign = ((s - 1) / 2) % 2 == 0 ? +1 : -1;
    ratio = qdoublefactorial(d, l - m) / qdoublefactorial(d, l - m - 1) *
            qdoublefactorial(d, l + m) / qdoublefactorial(d, l + m - 1);
  }
  spec.norm = std::sqrt(qnum(d, 2 * l + 1) / (4.0 * M_PI)) * std::sqrt(ratio) *
              std::pow(qnum(d, 2), 0.5 * m);
  return spec;
}

// multiplication operator of the harmonic in the noncommutative algebra:
// core multiplication first, then the |m|-fold prefactor, then the phase
inline AngularOperator to_operator(const Deformation& d,
                                   const HarmonicSpec& spec) {
  AngularOperator op(d);
  op.push(MultiplyPoly{spec.coeffs});
  if (spec.m != 0)
    op.push(XTildePower{spec.m > 0 ? +1 : -1, 0, std::abs(spec.m)});
  op.push(MultiplyConst{spec.sign * spec.norm});
  op.push(PhaseShift{spec.m});
  return op;
}

inline AngularFunction to_function(const Deformation& d,
                                   const HarmonicSpec& spec) {
  return to_operator(d, spec).apply(AngularFunction::constant(1.0));
}

// direct evaluation by the prefactor recursion; equals to_function pointwise
inline double evaluate_harmonic(const Deformation& d, const HarmonicSpec& spec,
                                double x0) {
  const int j = std::abs(spec.m);
  const double dil = std::pow(d.q, spec.m > 0 ? 2.0 : -2.0);
  const double two = qnum(d, 2);
  const double cpref = spec.m >= 0 ? -std::sqrt(d.q / two)
                                   : std::sqrt(1.0 / (d.q * two));
  const double csq = spec.m >= 0 ? d.q * d.q : 1.0 / (d.q * d.q);
  double val = 1.0;
  double x = x0;
  for (int i = 0; i < j; ++i) {
    const double arg = 1.0 - csq * x * x;
    if (arg < 0.0)
      throw std::domain_error("evaluate_harmonic: outside the safe domain");
    val *= cpref * std::sqrt(arg);
    x *= dil;
  }
  return spec.sign * spec.norm * val * poly_eval(spec.coeffs, x);
}

inline std::complex<double> evaluate_harmonic(const Deformation& d,
                                              const HarmonicSpec& spec,
                                              double x0, double phi) {
  return std::polar(1.0, spec.m * phi) * evaluate_harmonic(d, spec, x0);
}

// x0-integrand of conj(a) * b with the winding phases already integrated
// out; the paired prefactors combine into a polynomial, so the result is
// exact for every q (the dilation-safe evaluation scheme)
inline Polynomial paired_integrand(const Deformation& d,
                                   const HarmonicSpec& a,
                                   const HarmonicSpec& b) {
  if (a.m != b.m)
    throw std::domain_error("paired_integrand: winding sectors differ");
  const int j = std::abs(a.m);
  const double dil = std::pow(d.q, a.m > 0 ? 2.0 : -2.0);
  const double csq0 = a.m >= 0 ? d.q * d.q : 1.0 / (d.q * d.q);
  const double cpref2 =
      a.m >= 0 ? d.q / qnum(d, 2) : 1.0 / (d.q * qnum(d, 2));

  Polynomial p = {a.sign * a.norm * b.sign * b.norm};
  double c = csq0;
  for (int i = 0; i < j; ++i) {
    p = poly_mul(p, Polynomial{cpref2, 0.0, -cpref2 * c});
    c *= dil * dil;  // factor constants advance as q^{+-(4i+2)}
  }
  const double arg = std::pow(dil, j);
  p = poly_mul(p, poly_rescale_argument(a.coeffs, arg));
  p = poly_mul(p, poly_rescale_argument(b.coeffs, arg));
  return p;
}

// <a, b> under the deformed measure: 2 pi delta on the winding times the
// symmetric x0 integral.  Pointwise node quadrature is used when every node
// is inside both safe radii; otherwise the paired polynomial form.
inline double inner_product(const Deformation& d, const HarmonicSpec& a,
                            const HarmonicSpec& b, double tail = 1e-18) {
  if (a.m != b.m) return 0.0;
  const auto rule = QuadratureRule::for_tolerance(d, tail);
  const AngularFunction fa = to_function(d, a);
  const AngularFunction fb = to_function(d, b);
  const double reach = d.is_classical ? 1.0 : rule.q_eff;
  if (std::min(fa.safe_radius, fb.safe_radius) >= reach - 1e-12) {
    auto prod = [&](double x) {
      return fa.profile(x, 0).value() * fb.profile(x, 0).value();
    };
    return 2.0 * M_PI * jackson_symmetric(d, prod, rule.K);
  }
  return 2.0 * M_PI * integrate_poly_symmetric(d, paired_integrand(d, a, b));
}

// literal non-conjugated pairing (winding delta on m' = -m); reported once
// in the verification suite, never used for normalization
inline double inner_product_literal(const Deformation& d,
                                    const HarmonicSpec& a,
                                    const HarmonicSpec& b) {
  if (a.m + b.m != 0) return 0.0;
  HarmonicSpec bm = b;  // profiles are real: reuse the conjugated pairing
  bm.m = a.m;
  return 2.0 * M_PI *
         integrate_poly_symmetric(d, paired_integrand(d, a, bm));
}

// fully normalized harmonic for any |m| <= l; negative m descends from
// m = 0 with the realized lowering operator and is normalized against the
// quadrature diagonal (the printed prefactor form only covers m >= 0)
inline HarmonicSpec harmonic(const Deformation& d, int l, int m) {
  if (l < 0 || std::abs(m) > l)
    throw std::domain_error("harmonic: need |m| <= l");
  if (m >= 0) return normalize(d, phi_coeffs(d, l, m));

  HarmonicSpec base = normalize(d, phi_coeffs(d, l, 0));
  Polynomial core = poly_scale(base.coeffs, base.sign * base.norm);
  const double s2 = std::sqrt(qnum(d, 2));
  for (int i = 0; i < -m; ++i) {
    // lowering step on sector -i: strip prefactor, q-difference, rebuild
    core = poly_scale(poly_qdiff(core, d, +1), s2 * std::pow(d.q, -i));
  }
  HarmonicSpec spec;
  spec.l = l;
  spec.m = m;
  spec.coeffs = core;
  spec.norm = 1.0;
  spec.sign = +1;
  const double n2 = inner_product(d, spec, spec);
  if (!(n2 > 0.0))
    throw std::domain_error("harmonic: lowering ladder annihilated the state");
  spec.coeffs = poly_scale(spec.coeffs, 1.0 / std::sqrt(n2));
  return spec;
}

// refit mode: replace the printed constant by the quadrature diagonal
inline HarmonicSpec normalize_refit(const Deformation& d, HarmonicSpec spec) {
  const double n2 = inner_product(d, spec, spec);
  spec.norm /= std::sqrt(n2);
  return spec;
}

// Gram matrix over {(l, m): l <= lmax, 0 <= m <= l}
inline GramReport build_gram(const Deformation& d, int lmax,
                             bool refit = false, double tail = 1e-18) {
  std::vector<HarmonicSpec> family;
  for (int l = 0; l <= lmax; ++l)
    for (int m = 0; m <= l; ++m) {
      HarmonicSpec s = normalize(d, phi_coeffs(d, l, m));
      if (refit) s = normalize_refit(d, s);
      family.push_back(std::move(s));
    }
  GramReport rep;
  rep.q = d.q;
  rep.lmax = lmax;
  rep.K = QuadratureRule::for_tolerance(d, tail).K;
  rep.refit = refit;
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i; j < family.size(); ++j) {
      const double g = inner_product(d, family[i], family[j], tail);
      if (i == j)
        rep.max_diag_dev = std::max(rep.max_diag_dev, std::abs(g - 1.0));
      else
        rep.max_offdiag = std::max(rep.max_offdiag, std::abs(g));
    }
  return rep;
}

// ---------------------------------------------------------------------------
// ladder identity (raising by one unit of m through the q-difference)

struct LadderCheck {
  double factor_even;        // multiple claimed for even l - m
  double residual_printed;   // even -> -[l-m][l+m+1], odd -> plain
  double residual_swapped;   // the opposite assignment
  bool printed_holds;
};

inline LadderCheck ladder_check(const Deformation& d, int l, int m) {
  if (!(0 <= m && m < l)) throw std::domain_error("ladder_check: need m < l");
  AngularOperator op(d);
  op.push(QDifference{+1});
  op = realize_x(d, +1).after(op);

  const AngularFunction lhs = op.apply(to_function(d, phi_coeffs(d, l, m)));
  const AngularFunction target = to_function(d, phi_coeffs(d, l, m + 1));
  const double factor = -qnum(d, l - m) * qnum(d, l + m + 1);

  const double radius = std::min(lhs.safe_radius, target.safe_radius);
  const auto xs = safe_samples(radius);
  const bool even = (l - m) % 2 == 0;
  const double r_scaled =
      pointwise_residual(lhs, af_scale(target, factor), xs);
  const double r_plain = pointwise_residual(lhs, target, xs);

  LadderCheck chk;
  chk.factor_even = factor;
  chk.residual_printed = even ? r_scaled : r_plain;
  chk.residual_swapped = even ? r_plain : r_scaled;
  chk.printed_holds = chk.residual_printed <= chk.residual_swapped;
  return chk;
}

// ---------------------------------------------------------------------------
// products x_k Y_lm = c_up Y_{l+1, m+k} + c_down Y_{l-1, m+k}

struct ProductExpansion {
  double coeff_up = 0.0;      // arbitrated closed form
  double coeff_down = 0.0;
  double printed_up = 0.0;    // as printed (differs for k = -1)
  double printed_down = 0.0;  // as printed (differs in sign for k = 0)
  double oracle_up = 0.0;     // pointwise least-squares fit
  double oracle_down = 0.0;
  double fit_residual = 0.0;
  bool has_down = false;
};

// Closed-form coefficients, fixed against the adjoint relations among the
// three components (and confirmed by the pointwise oracle).  Two printed
// forms disagree: the k = 0 lower coefficient carries a sign that breaks
// self-adjointness and the classical limit, and the k = -1 upper exponent
// reads l - m where the adjoint of the k = +1 lower entry forces -l - m.
inline ProductExpansion product_coefficients(const Deformation& d, int k,
                                             int l, int m) {
  const double two = qnum(d, 2);
  ProductExpansion r;
  auto B = [&](int n) { return qnum(d, n); };
  if (k == +1) {
    r.coeff_up = std::pow(d.q, l - m) *
                 std::sqrt(B(l + m + 1) * B(l + m + 2) /
                           (two * B(2 * l + 1) * B(2 * l + 3)));
    if (l >= 1 && std::abs(m + 1) <= l - 1)
      r.coeff_down = -std::pow(d.q, -l - m - 1) *
                     std::sqrt(B(l - m) * B(l - m - 1) /
                               (two * B(2 * l + 1) * B(2 * l - 1)));
    r.printed_up = r.coeff_up;
    r.printed_down = r.coeff_down;
  } else if (k == 0) {
    r.coeff_up = std::pow(d.q, -m) *
                 std::sqrt(B(l - m + 1) * B(l + m + 1) /
                           (B(2 * l + 1) * B(2 * l + 3)));
    if (l >= 1 && std::abs(m) <= l - 1)
      r.coeff_down = std::pow(d.q, -m) *
                     std::sqrt(B(l - m) * B(l + m) /
                               (B(2 * l + 1) * B(2 * l - 1)));
    r.printed_up = r.coeff_up;
    r.printed_down = -r.coeff_down;
  } else if (k == -1) {
    r.coeff_up = std::pow(d.q, -l - m) *
                 std::sqrt(B(l - m + 1) * B(l - m + 2) /
                           (two * B(2 * l + 1) * B(2 * l + 3)));
    if (l >= 1 && std::abs(m - 1) <= l - 1)
      r.coeff_down = -std::pow(d.q, l - m + 1) *
                     std::sqrt(B(l + m) * B(l + m - 1) /
                               (two * B(2 * l + 1) * B(2 * l - 1)));
    r.printed_up = std::pow(d.q, 2 * l) * r.coeff_up;
    r.printed_down = r.coeff_down;
  } else {
    throw std::domain_error("product_coefficients: k must be -1, 0 or +1");
  }
  r.has_down = r.coeff_down != 0.0;
  return r;
}

inline ProductExpansion x_times_Y(const Deformation& d, int k, int l, int m) {
  ProductExpansion r = product_coefficients(d, k, l, m);

  const AngularFunction g =
      realize_x(d, k).apply(to_function(d, harmonic(d, l, m)));
  const AngularFunction up = to_function(d, harmonic(d, l + 1, m + k));
  const bool has_down = l >= 1 && std::abs(m + k) <= l - 1;
  double radius = std::min(g.safe_radius, up.safe_radius);

  AngularFunction down = AngularFunction::constant(0.0);
  if (has_down) {
    down = to_function(d, harmonic(d, l - 1, m + k));
    radius = std::min(radius, down.safe_radius);
  }

  // least-squares fit of g against the one- or two-term expansion
  const auto xs = safe_samples(radius);
  double suu = 0, sdd = 0, sud = 0, sgu = 0, sgd = 0;
  for (double x : xs) {
    const double vg = g.profile(x, 0).value();
    const double vu = up.profile(x, 0).value();
    const double vd = has_down ? down.profile(x, 0).value() : 0.0;
    suu += vu * vu;
    sdd += vd * vd;
    sud += vu * vd;
    sgu += vg * vu;
    sgd += vg * vd;
  }
  if (has_down) {
    const double det = suu * sdd - sud * sud;
    r.oracle_up = (sgu * sdd - sgd * sud) / det;
    r.oracle_down = (sgd * suu - sgu * sud) / det;
  } else {
    r.oracle_up = sgu / suu;
    r.oracle_down = 0.0;
  }
  double res = 0.0;
  for (double x : xs) {
    const double vfit =
        r.oracle_up * up.profile(x, 0).value() +
        (has_down ? r.oracle_down * down.profile(x, 0).value() : 0.0);
    res = std::max(res, std::abs(g.profile(x, 0).value() - vfit));
  }
  r.fit_residual = res;
  return r;
}

// ---------------------------------------------------------------------------
// commutation of x_k with the harmonic as a multiplication operator

inline double commute_x_Y(const Deformation& d, int k, int l, int m) {
  const AngularOperator xk = realize_x(d, k);
  const AngularOperator x0op = realize_x(d, 0);
  const AngularOperator yop = to_operator(d, harmonic(d, l, m));
  const AngularOperator lhs = xk.after(yop);          // x_k Y
  const AngularOperator rhs_main = yop.after(xk);     // Y x_k

  double corr = 0.0;
  AngularOperator corr_op(d);
  if (k == +1 && m + 1 <= l) {
    corr = d.lambda / std::sqrt(qnum(d, 2)) * std::pow(d.q, -m - 1) *
           std::sqrt(qnum(d, l - m) * qnum(d, l + m + 1));
    corr_op = to_operator(d, harmonic(d, l, m + 1)).after(x0op);
  } else if (k == -1 && m - 1 >= -l) {
    corr = -d.lambda / std::sqrt(qnum(d, 2)) * std::pow(d.q, -m + 1) *
           std::sqrt(qnum(d, l + m) * qnum(d, l - m + 1));
    corr_op = to_operator(d, harmonic(d, l, m - 1)).after(x0op);
  }
  const double scale = k == 0 ? std::pow(d.q, -2.0 * m) : 1.0;

  double res = 0.0;
  const std::vector<AngularFunction> tests = {
      AngularFunction::constant(1.0),
      AngularFunction::polynomial(0, {0.0, 1.0}),
      AngularFunction::polynomial(0, {0.0, 0.0, 1.0}),
      AngularFunction::polynomial(0, {0.5, 0.0, 0.0, 1.0})};
  for (const auto& f : tests) {
    const AngularFunction a = lhs.apply(f);
    AngularFunction b = af_scale(rhs_main.apply(f), scale);
    if (corr != 0.0) b = af_lincomb(1.0, b, corr, corr_op.apply(f));
    const double radius = std::min(a.safe_radius, b.safe_radius);
    res = std::max(res, pointwise_residual(a, b, safe_samples(radius)));
  }
  return res;
}

}  // namespace qdeform
