#pragma once

// Finite-dimensional matrix representations on the truncated basis
// {|l,m> : l <= lmax}: the deformed generators, the vector operator built
// from them, the central invariants, the position unit vector and the
// transverse derivative, plus the brute-force oracles that arbitrate the
// internally inconsistent printed matrix-element formulas.
//
// Truncation rule: the position components couple l to l+-1, so the top
// shell of any identity involving them is corrupt.  All such identities are
// asserted on the interior block l, l' <= lmax-1 only.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qdeform/qharm.hpp"
#include "qdeform/qkernel.hpp"

namespace qdeform {

struct BasisLabel {
  int l = 0;
  int m = 0;
};

inline int basis_dim(int lmax) { return (lmax + 1) * (lmax + 1); }
inline int basis_index(int l, int m) { return l * l + l + m; }

inline std::vector<BasisLabel> basis_labels(int lmax) {
  std::vector<BasisLabel> labels;
  labels.reserve(basis_dim(lmax));
  for (int l = 0; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) labels.push_back({l, m});
  return labels;
}

struct OperatorMatrix {
  int lmax = 0;
  Eigen::MatrixXcd mat;

  static OperatorMatrix zero(int lmax) {
    return {lmax, Eigen::MatrixXcd::Zero(basis_dim(lmax), basis_dim(lmax))};
  }
  std::complex<double>& at(int l2, int m2, int l1, int m1) {
    return mat(basis_index(l2, m2), basis_index(l1, m1));
  }
  std::complex<double> at(int l2, int m2, int l1, int m1) const {
    return mat(basis_index(l2, m2), basis_index(l1, m1));
  }
};

struct Generators {
  OperatorMatrix l0, plus, minus;
};

struct VectorTriple {
  OperatorMatrix plus, zero, minus;  // components k = +1, 0, -1
  const OperatorMatrix& component(int k) const {
    return k > 0 ? plus : (k < 0 ? minus : zero);
  }
};

inline double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

// max |entry| over the interior block l, l' <= keep
inline double interior_max_abs(const Eigen::MatrixXcd& m, int lmax, int keep) {
  double r = 0.0;
  const auto labels = basis_labels(lmax);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (labels[i].l <= keep && labels[j].l <= keep)
        r = std::max(r, std::abs(m(i, j)));
  return r;
}

// ---------------------------------------------------------------------------
// builders

// Ladder matrix elements sqrt([l-+m][l+-m+1]) are the unique positive
// solution of the commutation relations with the raising/lowering weight
// structure; the phase is fixed classically.
inline Generators build_generators(const Deformation& d, int lmax) {
  if (lmax < 0) throw std::domain_error("build_generators: lmax must be >= 0");
  Generators g{OperatorMatrix::zero(lmax), OperatorMatrix::zero(lmax),
               OperatorMatrix::zero(lmax)};
  for (int l = 0; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m) {
      g.l0.at(l, m, l, m) = m;
      if (m < l)
        g.plus.at(l, m + 1, l, m) =
            std::sqrt(qnum(d, l - m) * qnum(d, l + m + 1));
      if (m > -l)
        g.minus.at(l, m - 1, l, m) =
            std::sqrt(qnum(d, l + m) * qnum(d, l - m + 1));
    }
  return g;
}

inline Eigen::MatrixXcd diag_qpower_l0(const Deformation& d, int lmax,
                                       double exponent) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis_dim(lmax), basis_dim(lmax));
  for (const auto& b : basis_labels(lmax))
    m(basis_index(b.l, b.m), basis_index(b.l, b.m)) =
        std::pow(d.q, exponent * b.m);
  return m;
}

// vector operator assembled from the generators
inline VectorTriple build_lambda(const Deformation& d, const Generators& g) {
  const int lmax = g.l0.lmax;
  const double two = qnum(d, 2);
  VectorTriple v{OperatorMatrix::zero(lmax), OperatorMatrix::zero(lmax),
                 OperatorMatrix::zero(lmax)};
  const Eigen::MatrixXcd qinv = diag_qpower_l0(d, lmax, -1.0);
  v.plus.mat = -(1.0 / std::sqrt(two)) * qinv * g.plus.mat;
  v.minus.mat = (1.0 / std::sqrt(two)) * qinv * g.minus.mat;
  v.zero.mat = (1.0 / two) * (d.q * g.plus.mat * g.minus.mat -
                              (1.0 / d.q) * g.minus.mat * g.plus.mat);
  return v;
}

// Casimir element: L- L+ + [L0][L0+1].  (The printed form carries a minus
// sign, which is neither central nor consistent with the block eigenvalue
// [l][l+1]; the plus sign is.)
inline OperatorMatrix build_casimir(const Deformation& d,
                                    const Generators& g) {
  OperatorMatrix c = OperatorMatrix::zero(g.l0.lmax);
  c.mat = g.minus.mat * g.plus.mat;
  for (const auto& b : basis_labels(g.l0.lmax))
    c.mat(basis_index(b.l, b.m), basis_index(b.l, b.m)) +=
        qnum(d, b.m) * qnum(d, b.m + 1);
  return c;
}

// central invariant q^{-2 L0} + lambda Lambda0
inline OperatorMatrix build_c_matrix(const Deformation& d,
                                     const Generators& g,
                                     const VectorTriple& lambda) {
  OperatorMatrix c = OperatorMatrix::zero(g.l0.lmax);
  c.mat = diag_qpower_l0(d, g.l0.lmax, -2.0) + d.lambda * lambda.zero.mat;
  return c;
}

// scalar built from two vectors: -(1/q) u_{+1} v_{-1} + u_0 v_0 - q u_{-1} v_{+1}
inline OperatorMatrix scalar_product(const Deformation& d,
                                     const VectorTriple& u,
                                     const VectorTriple& v) {
  if (u.zero.lmax != v.zero.lmax)
    throw std::domain_error("scalar_product: dimension mismatch");
  OperatorMatrix s = OperatorMatrix::zero(u.zero.lmax);
  s.mat = -(1.0 / d.q) * u.plus.mat * v.minus.mat + u.zero.mat * v.zero.mat -
          d.q * u.minus.mat * v.plus.mat;
  return s;
}

// position unit vector from the arbitrated product coefficients
inline VectorTriple build_x(const Deformation& d, int lmax) {
  if (lmax < 1) throw std::domain_error("build_x: lmax must be >= 1");
  VectorTriple x{OperatorMatrix::zero(lmax), OperatorMatrix::zero(lmax),
                 OperatorMatrix::zero(lmax)};
  for (int k : {-1, 0, +1}) {
    OperatorMatrix& xk = k > 0 ? x.plus : (k < 0 ? x.minus : x.zero);
    for (int l = 0; l <= lmax; ++l)
      for (int m = -l; m <= l; ++m) {
        const auto pc = product_coefficients(d, k, l, m);
        if (l + 1 <= lmax && std::abs(m + k) <= l + 1)
          xk.at(l + 1, m + k, l, m) = pc.coeff_up;
        if (l - 1 >= 0 && std::abs(m + k) <= l - 1)
          xk.at(l - 1, m + k, l, m) = pc.coeff_down;
      }
  }
  return x;
}

// transverse derivative assembled from x, Lambda and the central invariant
inline VectorTriple build_partial(const Deformation& d, const VectorTriple& x,
                                  const VectorTriple& lambda,
                                  const OperatorMatrix& c) {
  const int lmax = x.zero.lmax;
  VectorTriple p{OperatorMatrix::zero(lmax), OperatorMatrix::zero(lmax),
                 OperatorMatrix::zero(lmax)};
  const double q = d.q;
  p.plus.mat = (1.0 / q) * x.plus.mat * lambda.zero.mat -
               q * x.zero.mat * lambda.plus.mat + x.plus.mat * c.mat;
  p.zero.mat = x.plus.mat * lambda.minus.mat -
               d.lambda * x.zero.mat * lambda.zero.mat -
               x.minus.mat * lambda.plus.mat + x.zero.mat * c.mat;
  p.minus.mat = -q * x.minus.mat * lambda.zero.mat +
                (1.0 / q) * x.zero.mat * lambda.minus.mat +
                x.minus.mat * c.mat;
  return p;
}

// ---------------------------------------------------------------------------
// verification

struct RelationCheck {
  std::string id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VectorCheckReport {
  std::vector<RelationCheck> relations;
  bool all_pass() const {
    for (const auto& r : relations)
      if (!r.pass) return false;
    return true;
  }
  double max_residual() const {
    double v = 0.0;
    for (const auto& r : relations) v = std::max(v, r.residual);
    return v;
  }
};

// weight and ladder conditions for a candidate vector triple; identities are
// evaluated on the interior block l, l' <= keep
inline VectorCheckReport check_vector(const Deformation& d,
                                      const VectorTriple& v,
                                      const Generators& g, int keep,
                                      double tol = 1e-10) {
  const int lmax = g.l0.lmax;
  const double s2 = std::sqrt(qnum(d, 2));
  const Eigen::MatrixXcd qpow = diag_qpower_l0(d, lmax, +1.0);
  VectorCheckReport rep;
  auto push = [&](const std::string& id, const Eigen::MatrixXcd& resmat) {
    const double res = interior_max_abs(resmat, lmax, keep);
    rep.relations.push_back({id, res, tol, res < tol});
  };
  for (int k = -1; k <= 1; ++k) {
    const Eigen::MatrixXcd& vk = v.component(k).mat;
    const std::string suffix =
        k < 0 ? "minus" : (k > 0 ? "plus" : "zero");
    push("vector_weight_" + suffix,
         g.l0.mat * vk - vk * g.l0.mat - double(k) * vk);
    for (int dir : {+1, -1}) {
      const Eigen::MatrixXcd& ladder = (dir > 0 ? g.plus : g.minus).mat;
      Eigen::MatrixXcd rhs =
          Eigen::MatrixXcd::Zero(basis_dim(lmax), basis_dim(lmax));
      if (std::abs(k + dir) <= 1) rhs = s2 * v.component(k + dir).mat;
      push(std::string("vector_") + (dir > 0 ? "raise_" : "lower_") + suffix,
           (ladder * vk - std::pow(d.q, k) * vk * ladder) * qpow - rhs);
    }
  }
  return rep;
}

// Ratios of derivative to position matrix elements per l-transition, the
// derivative-square diagonal, and the commutator identity that generates
// them.  The printed closed forms disagree with the matrices; both are
// reported and the matrices win.
struct PartialRatioRow {
  int l = 0;
  double ratio_up = 0.0;          // computed from the matrices
  double ratio_up_printed = 0.0;  // [2l+2]/[2l]
  double ratio_up_commutator = 0.0;
  double ratio_down = 0.0;           // computed; 0 when l = 0
  double ratio_down_printed = -1.0;  // -[2l]/[2l]
  double ratio_down_commutator = 0.0;
  double constancy_dev = 0.0;  // max deviation of the ratio over the block
  double dsq = 0.0;            // diagonal of the derivative square
  double dsq_printed = 0.0;    // -[2l][2l+1]/[2]^2 - c_l^2
  double dsq_adjusted = 0.0;   // -[2l][2l+2]/[2]^2 - c_l^2
  double dsq_m_dev = 0.0;      // m-dependence of the diagonal (should be 0)
};

struct PartialRatioReport {
  bool classical_degenerate = false;  // the commutator route needs lambda != 0
  double commutator_residual = 0.0;   // derivative vs lambda^{-2} [c, x]
  std::vector<PartialRatioRow> rows;
};

inline PartialRatioReport partial_ratio_oracle(const Deformation& d,
                                               int lmax) {
  const auto g = build_generators(d, lmax);
  const auto lam = build_lambda(d, g);
  const auto c = build_c_matrix(d, g, lam);
  const auto x = build_x(d, lmax);
  const auto p = build_partial(d, x, lam, c);

  PartialRatioReport rep;
  rep.classical_degenerate = d.is_classical;
  if (!d.is_classical) {
    const double il2 = 1.0 / (d.lambda * d.lambda);
    double res = 0.0;
    for (int k : {-1, 0, +1}) {
      const Eigen::MatrixXcd comm =
          il2 * (c.mat * x.component(k).mat - x.component(k).mat * c.mat);
      res = std::max(res, interior_max_abs(comm - p.component(k).mat,
                                           lmax, lmax - 1));
    }
    rep.commutator_residual = res;
  }

  const auto psq = scalar_product(d, p, p);
  for (int l = 0; l <= lmax - 1; ++l) {
    PartialRatioRow row;
    row.l = l;
    const double two = qnum(d, 2);
    row.ratio_up_printed =
        l >= 1 ? qnum(d, 2 * l + 2) / qnum(d, 2 * l) : 0.0;
    row.ratio_down_printed = l >= 1 ? -1.0 : 0.0;
    if (!d.is_classical) {
      const double il2 = 1.0 / (d.lambda * d.lambda);
      row.ratio_up_commutator = (c_eig(d, l + 1) - c_eig(d, l)) * il2;
      if (l >= 1)
        row.ratio_down_commutator = (c_eig(d, l - 1) - c_eig(d, l)) * il2;
    } else {
      row.ratio_up_commutator = l + 1.0;
      row.ratio_down_commutator = -static_cast<double>(l);
    }
    // ratios read off the matrices, checked for constancy over the block
    double up_ref = 0.0, dn_ref = 0.0;
    bool up_set = false, dn_set = false;
    // single-operator entries into the top shell are stored exactly, so the
    // ratios may be read up to l+1 = lmax; only products need the mask
    for (int k : {-1, 0, +1})
      for (int m = -l; m <= l; ++m) {
        if (std::abs(m + k) <= l + 1 && l + 1 <= lmax) {
          const auto xe = x.component(k).at(l + 1, m + k, l, m);
          const auto pe = p.component(k).at(l + 1, m + k, l, m);
          if (std::abs(xe) > 1e-12) {
            const double r = (pe / xe).real();
            if (!up_set) {
              up_ref = r;
              up_set = true;
            }
            row.constancy_dev = std::max(row.constancy_dev,
                                         std::abs(r - up_ref));
          }
        }
        if (l >= 1 && std::abs(m + k) <= l - 1) {
          const auto xe = x.component(k).at(l - 1, m + k, l, m);
          const auto pe = p.component(k).at(l - 1, m + k, l, m);
          if (std::abs(xe) > 1e-12) {
            const double r = (pe / xe).real();
            if (!dn_set) {
              dn_ref = r;
              dn_set = true;
            }
            row.constancy_dev = std::max(row.constancy_dev,
                                         std::abs(r - dn_ref));
          }
        }
      }
    row.ratio_up = up_ref;
    row.ratio_down = dn_ref;

    const double cl = c_eig(d, l);
    row.dsq_printed =
        -qnum(d, 2 * l) / two * qnum(d, 2 * l + 1) / two - cl * cl;
    row.dsq_adjusted =
        -qnum(d, 2 * l) / two * qnum(d, 2 * l + 2) / two - cl * cl;
    double diag_ref = psq.at(l, -l, l, -l).real();
    for (int m = -l; m <= l; ++m)
      row.dsq_m_dev = std::max(
          row.dsq_m_dev, std::abs(psq.at(l, m, l, m).real() - diag_ref));
    row.dsq = diag_ref;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace qdeform
