// Command-line front end: identity verification reports, spectrum tables,
// harmonic coefficients, node-rule integrals and the effective angular
// momentum, in machine-readable (json, csv) or human-readable form.
//
// Exit codes: 0 success / all checks pass, 1 failed check or solver
// non-convergence, 2 usage or domain error.  Output is deterministic:
// identical invocations produce byte-identical bytes.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdeform/qharm.hpp"
#include "qdeform/qschrod.hpp"
#include "qdeform/verify.hpp"

namespace {

using nlohmann::json;
using namespace qdeform;

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

int cmd_verify(double q, int lmax, double tol, const std::string& format) {
  const auto rep = run_verify(Deformation::make(q), lmax, tol);
  if (format == "json") {
    std::cout << rep.to_json().dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "id,residual,tolerance,status,detail\n";
    for (const auto& e : rep.entries)
      std::cout << e.id << "," << num(e.residual) << "," << num(e.tolerance)
                << "," << to_string(e.status) << "," << csv_quote(e.detail)
                << "\n";
  } else {
    std::printf("verification at q = %s, lmax = %d, tolerance = %s\n",
                num(q).c_str(), lmax, num(tol).c_str());
    for (const auto& e : rep.entries) {
      std::printf("[%s] %-38s residual %-12s", to_string(e.status),
                  e.id.c_str(), num(e.residual).c_str());
      if (!e.detail.empty()) std::printf("  %s", e.detail.c_str());
      std::printf("\n");
    }
    std::printf("summary: %d pass, %d fail, %d informational\n",
                rep.count(CheckEntry::Status::pass),
                rep.count(CheckEntry::Status::fail),
                rep.count(CheckEntry::Status::info));
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_spectrum(const std::string& pot_name, double q, int nmax, int lmax,
                 const std::string& mode_name, const std::string& format) {
  const Potential pot =
      pot_name == "coulomb" ? Potential::coulomb : Potential::oscillator;
  const SpectrumMode mode = mode_name == "closed"
                                ? SpectrumMode::closed
                                : (mode_name == "numeric"
                                       ? SpectrumMode::numeric
                                       : SpectrumMode::both);
  const auto table =
      spectrum_table(Deformation::make(q), pot, nmax, lmax, mode);
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : table.rows) {
      json row = {{"potential", potential_name(r.potential)},
                  {"q", r.q},
                  {"n", r.n},
                  {"l", r.l},
                  {"L_eff", r.L_eff}};
      if (!std::isnan(r.E_closed)) row["E_closed"] = r.E_closed;
      if (!std::isnan(r.E_numeric)) row["E_numeric"] = r.E_numeric;
      if (!std::isnan(r.abs_diff)) row["abs_diff"] = r.abs_diff;
      rows.push_back(row);
    }
    std::cout << json{{"schema_version", 1},
                      {"potential", pot_name},
                      {"q", q},
                      {"mode", mode_name},
                      {"rows", rows}}
                     .dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "potential,q,n,l,L_eff,E_closed,E_numeric,abs_diff\n";
    for (const auto& r : table.rows)
      std::cout << potential_name(r.potential) << "," << num(r.q) << ","
                << r.n << "," << r.l << "," << num(r.L_eff) << ","
                << num(r.E_closed) << "," << num(r.E_numeric) << ","
                << num(r.abs_diff) << "\n";
  } else {
    std::printf("%-11s %-6s %-3s %-3s %-14s %-14s %-14s %s\n", "potential",
                "q", "n", "l", "L_eff", "E_closed", "E_numeric", "abs_diff");
    for (const auto& r : table.rows)
      std::printf("%-11s %-6s %-3d %-3d %-14s %-14s %-14s %s\n",
                  potential_name(r.potential), num(r.q).c_str(), r.n, r.l,
                  num(r.L_eff).c_str(), num(r.E_closed).c_str(),
                  num(r.E_numeric).c_str(), num(r.abs_diff).c_str());
  }
  return 0;
}

int cmd_harmonics(int l, int m, double q, const std::string& format) {
  const auto d = Deformation::make(q);
  if (m < 0 || m > l) throw std::domain_error("harmonics: need 0 <= m <= l");
  const auto spec = normalize(d, phi_coeffs(d, l, m));
  if (format == "json") {
    std::cout << json{{"schema_version", 1},
                      {"l", spec.l},
                      {"m", spec.m},
                      {"q", q},
                      {"coeffs", spec.coeffs},
                      {"norm", spec.norm},
                      {"sign", spec.sign}}
                     .dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "l,m,q,k,coeff,norm,sign\n";
    for (size_t k = 0; k < spec.coeffs.size(); ++k)
      std::cout << l << "," << m << "," << num(q) << "," << k << ","
                << num(spec.coeffs[k]) << "," << num(spec.norm) << ","
                << spec.sign << "\n";
  } else {
    std::printf("harmonic l = %d, m = %d at q = %s\n", l, m, num(q).c_str());
    std::printf("  normalization: %s, sign %+d\n", num(spec.norm).c_str(),
                spec.sign);
    for (size_t k = 0; k < spec.coeffs.size(); ++k)
      if (spec.coeffs[k] != 0.0)
        std::printf("  a_%zu = %s\n", k, num(spec.coeffs[k]).c_str());
  }
  return 0;
}

int cmd_integrate(int n, double q, const std::string& format) {
  const auto d = Deformation::make(q);
  if (n < 0) throw std::domain_error("integrate: need n >= 0");
  const auto rule = QuadratureRule::for_tolerance(d, 1e-16);
  const double value = jackson_positive(
      d, [n](double x) { return std::pow(x, n); }, rule.K);
  const double closed = 1.0 / qnum(d, n + 1);
  if (format == "json") {
    std::cout << json{{"schema_version", 1},
                      {"q", q},
                      {"n", n},
                      {"value", value},
                      {"closed_form", closed},
                      {"K", rule.K},
                      {"tail_bound", rule.tail_bound()}}
                     .dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "q,n,value,closed_form,K,tail_bound\n";
    std::cout << num(q) << "," << n << "," << num(value) << ","
              << num(closed) << "," << rule.K << "," << num(rule.tail_bound())
              << "\n";
  } else {
    std::printf("integral of x0^%d over (0,1): %s\n", n, num(value).c_str());
    std::printf("closed form 1/[%d] = %s (depth K = %d, tail %s)\n", n + 1,
                num(closed).c_str(), rule.K, num(rule.tail_bound()).c_str());
  }
  return 0;
}

int cmd_effective_l(double q, int lmax, const std::string& format) {
  const auto d = Deformation::make(q);
  if (format == "json") {
    json rows = json::array();
    for (int l = 0; l <= lmax; ++l)
      rows.push_back({{"l", l},
                      {"angular_coefficient", angular_coefficient(d, l)},
                      {"L_eff", effective_L(d, l)}});
    std::cout << json{{"schema_version", 1}, {"q", q}, {"rows", rows}}.dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "q,l,angular_coefficient,L_eff\n";
    for (int l = 0; l <= lmax; ++l)
      std::cout << num(q) << "," << l << ","
                << num(angular_coefficient(d, l)) << ","
                << num(effective_L(d, l)) << "\n";
  } else {
    std::printf("%-6s %-3s %-16s %s\n", "q", "l", "angular_coeff", "L_eff");
    for (int l = 0; l <= lmax; ++l)
      std::printf("%-6s %-3d %-16s %s\n", num(q).c_str(), l,
                  num(angular_coefficient(d, l)).c_str(),
                  num(effective_L(d, l)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed angular algebra toolkit"};
  app.require_subcommand(1);

  double q = 1.1;
  int lmax = 4;
  int nmax = 2;
  int l = 0, m = 0, n = 0;
  double tolerance = 1e-9;
  std::string format = "pretty";
  std::string potential = "coulomb";
  std::string mode = "closed";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", q, "deformation parameter (positive)");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
  };

  auto* verify = app.add_subcommand("verify", "run the identity suite");
  add_common(verify);
  verify->add_option("--lmax", lmax, "largest block");
  verify->add_option("--tolerance", tolerance, "pass threshold");

  auto* spectrum = app.add_subcommand("spectrum", "energy tables");
  add_common(spectrum);
  spectrum->add_option("--potential", potential, "potential")
      ->check(CLI::IsMember({"coulomb", "oscillator"}));
  spectrum->add_option("--nmax", nmax, "largest radial quantum number");
  spectrum->add_option("--lmax", lmax, "largest angular momentum");
  spectrum->add_option("--mode", mode, "closed, numeric or both")
      ->check(CLI::IsMember({"closed", "numeric", "both"}));

  auto* harmonics =
      app.add_subcommand("harmonics", "series coefficients and norm");
  add_common(harmonics);
  harmonics->add_option("--l", l, "angular momentum")->required();
  harmonics->add_option("--m", m, "magnetic quantum number")->required();

  auto* integrate =
      app.add_subcommand("integrate", "node-rule monomial integral");
  add_common(integrate);
  integrate->add_option("--n", n, "monomial degree")->required();

  auto* effl =
      app.add_subcommand("effective-l", "effective angular momentum table");
  add_common(effl);
  effl->add_option("--lmax", lmax, "largest angular momentum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(q, lmax, tolerance, format);
    if (spectrum->parsed())
      return cmd_spectrum(potential, q, nmax, lmax, mode, format);
    if (harmonics->parsed()) return cmd_harmonics(l, m, q, format);
    if (integrate->parsed()) return cmd_integrate(n, q, format);
    if (effl->parsed()) return cmd_effective_l(q, lmax, format);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
