#pragma once

#include <optional>
#include <string>
#include <vector>

namespace grpd {

/// A named invariant violation together with the offending elements.
struct Violation {
  std::string name;
  std::string witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty means valid.
using ValidationReport = std::vector<Violation>;

bool has_violation(const ValidationReport& report, const std::string& name);
std::string describe(const ValidationReport& report);

/// Throws PreconditionError listing the violations when the report is not
/// empty. `what` names the object being checked.
void require_valid(const ValidationReport& report, const std::string& what);

struct Check {
  std::string name;
  bool pass = false;
  std::optional<std::string> witness;
};

/// Ordered list of named checks; order is the order checks were added.
class CheckReport {
 public:
  void add(std::string name, bool pass, std::optional<std::string> witness = std::nullopt);
  void append(const CheckReport& other, const std::string& prefix = {});

  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t failures() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace grpd
