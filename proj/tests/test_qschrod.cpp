#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qdeform/qrep.hpp"
#include "qdeform/qschrod.hpp"

using namespace qdeform;

namespace {
double bracket_raw(double q, double n) {
  if (q == 1.0) return n;
  return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}
}  // namespace

TEST_CASE("centrifugal coefficient", "[qschrod]") {
  SECTION("classical reduction to l(l+1)") {
    auto d = Deformation::make(1.0);
    CHECK(angular_coefficient(d, 2) == Catch::Approx(6.0).margin(1e-14));
    CHECK(angular_coefficient(d, 5) == Catch::Approx(30.0).margin(1e-14));
  }
  SECTION("l = 0 vanishes for any q") {
    for (double q : {0.5, 0.9, 1.7})
      CHECK(angular_coefficient(Deformation::make(q), 0) ==
            Catch::Approx(0.0).margin(1e-14));
  }
  SECTION("frozen value at q = 1.1, l = 1") {
    auto d = Deformation::make(1.1);
    const double expect = bracket_raw(1.1, 2) * bracket_raw(1.1, 4) /
                              (bracket_raw(1.1, 2) * bracket_raw(1.1, 2)) +
                          std::pow((std::pow(1.1, 3) + std::pow(1.1, -3)) /
                                       bracket_raw(1.1, 2),
                                   2) -
                          (std::pow(1.1, 3) + std::pow(1.1, -3)) /
                              bracket_raw(1.1, 2);
    CHECK(expect == Catch::Approx(2.0742).margin(2e-4));
    CHECK(angular_coefficient(d, 1) == Catch::Approx(expect).margin(1e-13));
  }
  SECTION("matches the matrix diagonal of the angular kinetic operator") {
    // arbitration: -(partial.partial + c) block-diagonal value
    for (double q : {0.9, 1.1}) {
      auto d = Deformation::make(q);
      const int lmax = 4;
      const auto g = build_generators(d, lmax);
      const auto lam = build_lambda(d, g);
      const auto c = build_c_matrix(d, g, lam);
      const auto x = build_x(d, lmax);
      const auto p = build_partial(d, x, lam, c);
      const auto psq = scalar_product(d, p, p);
      for (int l = 0; l <= lmax - 1; ++l)
        for (int m = -l; m <= l; ++m) {
          const double a = -(psq.at(l, m, l, m).real() +
                             c.at(l, m, l, m).real());
          CHECK(a == Catch::Approx(angular_coefficient(d, l)).margin(1e-9));
        }
    }
  }
}

TEST_CASE("effective angular momentum", "[qschrod]") {
  SECTION("classical identity L = l, exact") {
    auto d = Deformation::make(1.0);
    for (int l = 0; l <= 6; ++l) CHECK(effective_L(d, l) == double(l));
  }
  SECTION("l = 0 undeformed") {
    for (double q : {0.6, 1.4}) {
      CHECK(effective_L(Deformation::make(q), 0) == 0.0);
    }
  }
  SECTION("frozen value at q = 1.1, l = 1") {
    auto d = Deformation::make(1.1);
    const double x = angular_coefficient(d, 1);
    const double expect = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * x));
    CHECK(effective_L(d, 1) == Catch::Approx(expect).margin(1e-14));
    CHECK(effective_L(d, 1) == Catch::Approx(1.02453).margin(2e-5));
  }
  SECTION("symmetric under q <-> 1/q") {
    for (double q : {0.5, 0.8, 1.3, 2.0}) {
      auto d = Deformation::make(q);
      auto dinv = Deformation::make(1.0 / q);
      for (int l = 0; l <= 6; ++l)
        CHECK(effective_L(d, l) ==
              Catch::Approx(effective_L(dinv, l)).margin(1e-11));
    }
  }
  SECTION("L >= l with equality only classically (l >= 1)") {
    for (double q : {0.5, 0.7, 0.9, 1.1, 1.5, 2.0}) {
      auto d = Deformation::make(q);
      for (int l = 1; l <= 6; ++l) CHECK(effective_L(d, l) > l);
    }
    auto d1 = Deformation::make(1.0);
    for (int l = 1; l <= 6; ++l) CHECK(effective_L(d1, l) == double(l));
  }
}

TEST_CASE("closed-form spectra", "[qschrod]") {
  SECTION("classical ground states") {
    auto d = Deformation::make(1.0);
    CHECK(coulomb_energy(d, 0, 0) == Catch::Approx(-0.5).margin(1e-14));
    CHECK(oscillator_energy(d, 0, 0) == Catch::Approx(1.5).margin(1e-14));
  }
  SECTION("deformed value from the effective root") {
    auto d = Deformation::make(1.1);
    const double L = effective_L(d, 1);
    CHECK(coulomb_energy(d, 0, 1) ==
          Catch::Approx(-0.5 / ((L + 1.0) * (L + 1.0))).margin(1e-14));
    CHECK(coulomb_energy(d, 0, 1) == Catch::Approx(-0.12199).margin(2e-5));
    CHECK(oscillator_energy(d, 0, 1) ==
          Catch::Approx(L + 1.5).margin(1e-14));
  }
  SECTION("classical shell degeneracy and its lifting") {
    auto d1 = Deformation::make(1.0);
    CHECK(coulomb_energy(d1, 1, 0) ==
          Catch::Approx(coulomb_energy(d1, 0, 1)).margin(1e-14));
    CHECK(coulomb_energy(d1, 1, 0) == Catch::Approx(-0.125).margin(1e-14));
    auto d = Deformation::make(1.1);
    CHECK(std::abs(coulomb_energy(d, 1, 0) - coulomb_energy(d, 0, 1)) >
          1e-4);
  }
  SECTION("domain errors") {
    auto d = Deformation::make(1.1);
    CHECK_THROWS_AS(coulomb_energy(d, -1, 0), std::domain_error);
    CHECK_THROWS_AS(oscillator_energy(d, 0, -1), std::domain_error);
  }
}

TEST_CASE("radial eigensolver against the closed forms", "[qschrod]") {
  for (double q : {1.0, 0.9, 1.1}) {
    auto d = Deformation::make(q);
    for (Potential pot : {Potential::coulomb, Potential::oscillator}) {
      for (int l = 0; l <= 2; ++l) {
        RadialProblem p;
        p.potential = pot;
        p.d = d;
        p.l = l;
        p.n_states = 3;
        const auto table = radial_eigensolve(p);
        for (const auto& row : table.rows) {
          const double closed = pot == Potential::coulomb
                                    ? coulomb_energy(d, row.n, l)
                                    : oscillator_energy(d, row.n, l);
          INFO("q " << q << " pot " << potential_name(pot) << " l " << l
                    << " n " << row.n << " numeric " << row.E_numeric
                    << " closed " << closed);
          CHECK(std::abs(row.E_numeric - closed) < 1e-3);
        }
        // monotone in n within fixed l
        for (size_t i = 1; i < table.rows.size(); ++i)
          CHECK(table.rows[i].E_numeric > table.rows[i - 1].E_numeric);
      }
    }
  }
  SECTION("grid validation") {
    RadialProblem p;
    p.d = Deformation::make(1.0);
    p.points = 100;
    CHECK_THROWS_AS(radial_eigensolve(p), std::domain_error);
    p.points = 2400;
    p.n_states = 0;
    CHECK_THROWS_AS(radial_eigensolve(p), std::domain_error);
  }
}

TEST_CASE("spectrum tables", "[qschrod]") {
  SECTION("classical shell structure, both routes") {
    auto d = Deformation::make(1.0);
    const auto t =
        spectrum_table(d, Potential::coulomb, 1, 1, SpectrumMode::both);
    REQUIRE(t.rows.size() == 4);
    for (const auto& row : t.rows) {
      CHECK(row.E_closed ==
            Catch::Approx(-0.5 / std::pow(row.n + row.l + 1.0, 2))
                .margin(1e-12));
      CHECK(row.abs_diff < 1e-3);
    }
  }
  SECTION("deformed oscillator table is monotone in n per l") {
    auto d = Deformation::make(1.1);
    const auto t =
        spectrum_table(d, Potential::oscillator, 2, 2, SpectrumMode::closed);
    REQUIRE(t.rows.size() == 9);
    for (size_t i = 0; i < t.rows.size(); ++i) {
      const auto& row = t.rows[i];
      CHECK(row.E_closed ==
            Catch::Approx(2.0 * row.n + effective_L(d, row.l) + 1.5)
                .margin(1e-12));
    }
  }
  SECTION("bounds validated") {
    auto d = Deformation::make(1.1);
    CHECK_THROWS_AS(
        spectrum_table(d, Potential::coulomb, -1, 0, SpectrumMode::closed),
        std::domain_error);
  }
}

TEST_CASE("angular kinetic operator is magnetically degenerate", "[qschrod]") {
  // the angular block commutes with the weight operator and the Casimir
  for (double q : {0.9, 1.2}) {
    auto d = Deformation::make(q);
    const int lmax = 4;
    const auto g = build_generators(d, lmax);
    const auto lam = build_lambda(d, g);
    const auto c = build_c_matrix(d, g, lam);
    const auto x = build_x(d, lmax);
    const auto p = build_partial(d, x, lam, c);
    Eigen::MatrixXcd a = -(scalar_product(d, p, p).mat + c.mat);
    const auto cas = build_casimir(d, g);
    CHECK(interior_max_abs(a * g.l0.mat - g.l0.mat * a, lmax, lmax - 1) <
          1e-10);
    CHECK(interior_max_abs(a * cas.mat - cas.mat * a, lmax, lmax - 1) <
          1e-10);
  }
}

TEST_CASE("deformation observable", "[qschrod]") {
  SECTION("classical value 1/3") {
    CHECK(mean_x0_squared(Deformation::make(1.0)) ==
          Catch::Approx(1.0 / 3.0).margin(1e-12));
  }
  SECTION("deformed closed form 1/[3]") {
    for (double q : {0.9, 1.1}) {
      auto d = Deformation::make(q);
      CHECK(mean_x0_squared(d) ==
            Catch::Approx(1.0 / bracket_raw(q, 3)).margin(1e-13));
      CHECK(mean_x0_squared_closed(d) ==
            Catch::Approx(1.0 / bracket_raw(q, 3)).margin(1e-15));
    }
    auto d9 = Deformation::make(0.9);
    CHECK(mean_x0_squared(d9) == Catch::Approx(0.3284536).margin(5e-7));
  }
  SECTION("strictly below the spherical value away from q = 1") {
    for (double q : {0.7, 0.9, 1.1, 1.4})
      CHECK(mean_x0_squared(Deformation::make(q)) < 1.0 / 3.0);
  }
  SECTION("separated radial factor") {
    auto d = Deformation::make(1.1);
    const auto rep = observable_x0_squared(d, Potential::oscillator);
    CHECK(rep.angular_factor ==
          Catch::Approx(rep.closed_form).margin(1e-12));
    // l = 0 oscillator ground state has <r^2> = 3/2 (undeformed sector)
    CHECK(rep.radial_mean_r2 == Catch::Approx(1.5).margin(1e-2));
    CHECK(rep.product ==
          Catch::Approx(rep.radial_mean_r2 * rep.closed_form).margin(1e-10));

    const auto repc = observable_x0_squared(d, Potential::coulomb);
    // hydrogenic l = 0 ground state has <r^2> = 3 for any q
    CHECK(repc.radial_mean_r2 == Catch::Approx(3.0).margin(2e-2));
  }
}
