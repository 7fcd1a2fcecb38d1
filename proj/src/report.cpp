#include "grpd/report.hpp"

#include <algorithm>

#include "grpd/error.hpp"

namespace grpd {

bool has_violation(const ValidationReport& report, const std::string& name) {
  return std::any_of(report.begin(), report.end(),
                     [&](const Violation& v) { return v.name == name; });
}

std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) {
    if (!out.empty()) out += "; ";
    out += v.name + " (" + v.witness + ")";
  }
  return out;
}

void require_valid(const ValidationReport& report, const std::string& what) {
  if (!report.empty()) {
    throw PreconditionError(what + " is invalid: " + describe(report));
  }
}

void CheckReport::add(std::string name, bool pass, std::optional<std::string> witness) {
  checks_.push_back(Check{std::move(name), pass, std::move(witness)});
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    checks_.push_back(Check{prefix + c.name, c.pass, c.witness});
  }
}

bool CheckReport::all_passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; }));
}

}  // namespace grpd
