#pragma once

// Structured verification records and their JSON form.  Informational
// entries carry computed-vs-printed comparisons for the coefficient
// conventions that are internally inconsistent in the source formulas; they
// never affect the pass/fail outcome.

#include <string>
#include <vector>

#include "json.hpp"

namespace qdeform {

struct CheckEntry {
  enum class Status { pass, fail, info };

  std::string id;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::pass;
  std::string detail;

  static CheckEntry checked(std::string id, double residual, double tol,
                            std::string detail = {}) {
    CheckEntry e;
    e.id = std::move(id);
    e.residual = residual;
    e.tolerance = tol;
    e.status = residual < tol ? Status::pass : Status::fail;
    e.detail = std::move(detail);
    return e;
  }
  static CheckEntry informational(std::string id, double gap,
                                  std::string detail) {
    CheckEntry e;
    e.id = std::move(id);
    e.residual = gap;
    e.status = Status::info;
    e.detail = std::move(detail);
    return e;
  }
};

inline const char* to_string(CheckEntry::Status s) {
  switch (s) {
    case CheckEntry::Status::pass: return "pass";
    case CheckEntry::Status::fail: return "fail";
    default: return "info";
  }
}

struct VerifyReport {
  double q = 1.0;
  int lmax = 0;
  double tolerance = 0.0;
  std::vector<CheckEntry> entries;

  int count(CheckEntry::Status s) const {
    int n = 0;
    for (const auto& e : entries)
      if (e.status == s) ++n;
    return n;
  }
  bool all_pass() const { return count(CheckEntry::Status::fail) == 0; }

  nlohmann::json to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& e : entries)
      checks.push_back({{"id", e.id},
                        {"residual", e.residual},
                        {"tolerance", e.tolerance},
                        {"status", to_string(e.status)},
                        {"detail", e.detail}});
    return {{"schema_version", 1},
            {"q", q},
            {"lmax", lmax},
            {"tolerance", tolerance},
            {"checks", checks},
            {"summary",
             {{"pass", count(CheckEntry::Status::pass)},
              {"fail", count(CheckEntry::Status::fail)},
              {"info", count(CheckEntry::Status::info)}}},
            {"all_pass", all_pass()}};
  }
};

}  // namespace qdeform
