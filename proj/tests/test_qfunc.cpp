#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qdeform/qfunc.hpp"
#include "qdeform/qharm.hpp"
#include "qdeform/qint.hpp"

using namespace qdeform;

namespace {

const std::vector<double> kTestQ = {0.8, 0.9, 1.0, 1.1};

std::vector<AngularFunction> basic_profiles() {
  return {AngularFunction::constant(1.0),
          AngularFunction::polynomial(0, {0.0, 1.0}),
          AngularFunction::polynomial(0, {0.0, 0.0, 0.0, 1.0})};
}

double max_residual_over(const AngularOperator& lhs, const AngularOperator& rhs,
                         const std::vector<AngularFunction>& fns) {
  double r = 0.0;
  for (const auto& f : fns) r = std::max(r, operator_residual(lhs, rhs, f));
  return r;
}

}  // namespace

TEST_CASE("position components satisfy the defining relations", "[qfunc]") {
  for (double q : kTestQ) {
    auto d = Deformation::make(q);
    const auto x1 = realize_x(d, +1);
    const auto x0 = realize_x(d, 0);
    const auto xm = realize_x(d, -1);

    SECTION("x0 is plain multiplication (q = " + std::to_string(q) + ")") {
      auto f = AngularFunction::constant(1.0);
      CHECK(x0.apply(f).eval(0.3) == Catch::Approx(0.3).margin(1e-15));
    }

    // x0 x_{+-1} = q^{-+2} x_{+-1} x0
    {
      AngularOperator lhs = x0.after(x1);
      AngularOperator rhs = x1.after(x0);
      double res = 0.0;
      for (const auto& f : basic_profiles()) {
        auto a = lhs.apply(f);
        auto b = af_scale(rhs.apply(f), std::pow(q, -2.0));
        res = std::max(res, pointwise_residual(
                                a, b,
                                safe_samples(std::min(a.safe_radius,
                                                      b.safe_radius))));
      }
      CHECK(res < 1e-12);
    }
    {
      AngularOperator lhs = x0.after(xm);
      AngularOperator rhs = xm.after(x0);
      double res = 0.0;
      for (const auto& f : basic_profiles()) {
        auto a = lhs.apply(f);
        auto b = af_scale(rhs.apply(f), std::pow(q, +2.0));
        res = std::max(res, pointwise_residual(
                                a, b,
                                safe_samples(std::min(a.safe_radius,
                                                      b.safe_radius))));
      }
      CHECK(res < 1e-12);
    }

    // x_{+1} x_{-1} - x_{-1} x_{+1} = lambda x0^2
    {
      double res = 0.0;
      for (const auto& f : basic_profiles()) {
        auto a = af_lincomb(1.0, x1.after(xm).apply(f), -1.0,
                            xm.after(x1).apply(f));
        auto b = af_scale(x0.after(x0).apply(f), d.lambda);
        res = std::max(res, pointwise_residual(
                                a, b,
                                safe_samples(std::min(a.safe_radius,
                                                      b.safe_radius))));
      }
      CHECK(res < 1e-12);
    }

    // unit norm: -(1/q) x1 x-1 + x0^2 - q x-1 x1 = 1
    {
      double res = 0.0;
      for (const auto& f : basic_profiles()) {
        auto t1 = af_scale(x1.after(xm).apply(f), -1.0 / q);
        auto t2 = x0.after(x0).apply(f);
        auto t3 = af_scale(xm.after(x1).apply(f), -q);
        auto s = af_lincomb(1.0, af_lincomb(1.0, t1, 1.0, t2), 1.0, t3);
        const double rad = s.safe_radius;
        for (double x : safe_samples(rad))
          res = std::max(res,
                         std::abs(s.profile(x, 0).value() -
                                  f.profile(x, 0).value()));
      }
      CHECK(res < 1e-12);
    }
  }
}

TEST_CASE("dropping the dilatation factor breaks the relations", "[qfunc]") {
  auto d = Deformation::make(0.9);
  // x1 assembled without its dilatation: mutation must be caught
  AngularOperator broken(d);
  broken.push(MultiplySqrtFactor{d.q * d.q, +1});
  broken.push(MultiplyConst{-std::sqrt(d.q / qnum(d, 2))});
  broken.push(PhaseShift{+1});
  const auto x0 = realize_x(d, 0);

  double res = 0.0;
  for (const auto& f : basic_profiles()) {
    auto a = x0.after(broken).apply(f);
    auto b = af_scale(broken.after(x0).apply(f), std::pow(d.q, -2.0));
    res = std::max(
        res, pointwise_residual(
                 a, b, safe_samples(std::min(a.safe_radius, b.safe_radius))));
  }
  CHECK(res > 1e-3);
}

TEST_CASE("realized ladder operators act correctly on eigenfunctions",
          "[qfunc]") {
  for (double q : {0.9, 1.0, 1.1}) {
    auto d = Deformation::make(q);
    const auto gen = realize_generators(d);

    SECTION("raising the l=1 series (q = " + std::to_string(q) + ")") {
      const auto phi10 = to_function(d, phi_coeffs(d, 1, 0));
      const auto phi11 = to_function(d, phi_coeffs(d, 1, 1));
      const auto lifted = gen.plus.apply(phi10);
      CHECK(lifted.winding == 1);
      const auto expect = af_scale(phi11, std::sqrt(qnum(d, 2)));
      const double rad = std::min(lifted.safe_radius, expect.safe_radius);
      CHECK(pointwise_residual(lifted, expect, safe_samples(rad)) < 1e-12);
    }

    SECTION("annihilation of the constant (q = " + std::to_string(q) + ")") {
      const auto lifted = gen.plus.apply(AngularFunction::constant(1.0));
      for (double x : safe_samples(lifted.safe_radius))
        CHECK(std::abs(lifted.profile(x, 0).value()) < 1e-13);
    }
  }
}

TEST_CASE("commutators of the realized algebra on eigenfunctions", "[qfunc]") {
  for (double q : kTestQ) {
    auto d = Deformation::make(q);
    const auto gen = realize_generators(d);
    double res_comm = 0.0;
    double res_eig = 0.0;
    for (int l = 0; l <= 3; ++l)
      for (int m = 0; m <= l; ++m) {
        const auto phi = to_function(d, phi_coeffs(d, l, m));
        // [L+, L-] phi = [2 L0] phi
        {
          auto a = af_lincomb(1.0, gen.plus.apply(gen.minus.apply(phi)), -1.0,
                              gen.minus.apply(gen.plus.apply(phi)));
          auto b = af_scale(phi, qnum(d, 2 * m));
          const double rad = std::min(a.safe_radius, b.safe_radius);
          res_comm =
              std::max(res_comm, pointwise_residual(a, b, safe_samples(rad)));
        }
        // L+ L- phi = [l+m][l-m+1] phi
        {
          auto a = gen.plus.apply(gen.minus.apply(phi));
          auto b = af_scale(phi, qnum(d, l + m) * qnum(d, l - m + 1));
          const double rad = std::min(a.safe_radius, b.safe_radius);
          res_eig =
              std::max(res_eig, pointwise_residual(a, b, safe_samples(rad)));
        }
      }
    CHECK(res_comm < 1e-9);
    CHECK(res_eig < 1e-9);
  }
}

TEST_CASE("realized position passes the vector-operator conditions",
          "[qfunc]") {
  for (double q : {0.9, 1.0, 1.2}) {
    auto d = Deformation::make(q);
    const auto gen = realize_generators(d);
    std::vector<AngularFunction> fns = basic_profiles();
    fns.push_back(to_function(d, phi_coeffs(d, 2, 1)));  // sector-1 profile
    const auto checks = check_vector_pointwise(
        d, realize_x(d, +1), realize_x(d, 0), realize_x(d, -1), gen, fns,
        1e-9);
    for (const auto& c : checks) {
      INFO(c.id << " residual " << c.residual << " at q = " << q);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("winding bookkeeping is structural", "[qfunc]") {
  auto d = Deformation::make(1.2);
  const auto gen = realize_generators(d);
  CHECK(realize_x(d, +1).winding_delta() == 1);
  CHECK(realize_x(d, 0).winding_delta() == 0);
  CHECK(realize_x(d, -1).winding_delta() == -1);
  CHECK(gen.plus.winding_delta() == 1);
  CHECK(gen.minus.winding_delta() == -1);

  // composed operator: delta adds; applied function: input + delta
  const auto op = realize_x(d, +1).after(gen.plus);
  CHECK(op.winding_delta() == 2);
  const auto out = op.apply(to_function(d, phi_coeffs(d, 2, 1)));
  CHECK(out.winding == 1 + 2);
}

TEST_CASE("hermiticity of the position components under the node measure",
          "[qfunc]") {
  // <f, x1 g> = <-(1/q) x-1 f, g> with f in the winding sector of x1 g
  for (double q : {0.8, 0.9, 1.0, 1.1}) {
    auto d = Deformation::make(q);
    const auto rule = QuadratureRule::for_tolerance(d, 1e-18);
    const auto x1 = realize_x(d, +1);
    const auto xm = realize_x(d, -1);
    const Polynomial fps[] = {{1.0}, {0.0, 1.0}, {0.5, 0.0, 1.0}};
    const Polynomial gps[] = {{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}};
    for (const auto& fp : fps)
      for (const auto& gp : gps) {
        const auto f = AngularFunction::polynomial(1, fp);
        const auto g = AngularFunction::polynomial(0, gp);
        const auto x1g = x1.apply(g);
        const auto xmf = xm.apply(f);
        const double lhs = jackson_symmetric(
            d,
            [&](double x) {
              return f.profile(x, 0).value() * x1g.profile(x, 0).value();
            },
            rule.K);
        const double rhs = jackson_symmetric(
            d,
            [&](double x) {
              return (-1.0 / q) * xmf.profile(x, 0).value() *
                     g.profile(x, 0).value();
            },
            rule.K);
        CHECK(lhs == Catch::Approx(rhs).margin(1e-12));
      }
  }
}

TEST_CASE("dilatation-generator hermiticity probe reports its residual",
          "[qfunc]") {
  auto d = Deformation::make(0.9);
  // f = 1, g = x0: both sides vanish by parity
  CHECK(apply_N0_hermiticity_check(d, {1.0}, {0.0, 1.0}) ==
        Catch::Approx(0.0).margin(1e-15));
  // f = g = x0^n: sides are n I and -(n+1) I, so the gap is (2n+1) I
  for (int n : {1, 2, 3}) {
    Polynomial mono(n + 1, 0.0);
    mono[n] = 1.0;
    const double gap =
        (2.0 * n + 1.0) * 2.0 / qnum(d, 2 * n + 1);
    CHECK(apply_N0_hermiticity_check(d, mono, mono) ==
          Catch::Approx(gap).margin(1e-12));
  }
  // classical spot value
  auto d1 = Deformation::make(1.0);
  CHECK(apply_N0_hermiticity_check(d1, {1.0}, {1.0}) ==
        Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("prefactor-divisibility singularity probe", "[qfunc]") {
  SECTION("positive sector, q < 1: pole at x0 = q") {
    auto d = Deformation::make(0.9);
    const auto good = to_function(d, phi_coeffs(d, 2, 1));
    const AngularFunction bogus = AngularFunction::polynomial(1, {1.0, 0.5});
    CHECK(sector_prefactor_divisible(d, good));
    CHECK_FALSE(sector_prefactor_divisible(d, bogus));
  }
  SECTION("negative sector, q > 1: pole at x0 = 1/q") {
    auto d = Deformation::make(1.1);
    const auto good = to_function(d, harmonic(d, 1, -1));
    const AngularFunction bogus = AngularFunction::polynomial(-1, {1.0, 0.5});
    CHECK(sector_prefactor_divisible(d, good));
    CHECK_FALSE(sector_prefactor_divisible(d, bogus));
  }
  SECTION("winding zero is trivially divisible") {
    auto d = Deformation::make(1.2);
    CHECK(sector_prefactor_divisible(d, AngularFunction::constant(1.0)));
  }
}
