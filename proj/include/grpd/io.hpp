#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grpd/bibundle.hpp"
#include "grpd/convolution.hpp"
#include "grpd/error.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/matrix.hpp"
#include "grpd/module.hpp"
#include "grpd/report.hpp"
#include "grpd/representation.hpp"

namespace grpd::io {

using Json = nlohmann::ordered_json;

/// A reference to an object that was never loaded.
class UnknownNameError : public ParseError {
 public:
  using ParseError::ParseError;
};

Scalar scalar_from_json(const Json& j);
Json to_json(const Scalar& s);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
Json to_json(const Matrix& m);

/// Accepts either explicit tables or {"standard": {...}}.
GroupoidTables groupoid_tables_from_json(const Json& j);
GroupoidPtr groupoid_from_json(const Json& j);
Json to_json(const FiniteGroupoid& g);

Json to_json(const Representation& e);
Json to_json(const CModule& m);
Json to_json(const PrincipalBibundle& p);
Json to_json(const GroupoidFunctor& f);
Json to_json(const AlgebraElement& a, const std::string& name);
Json to_json(const CheckReport& report);
Json to_json(const ValidationReport& report);

/// Standard groupoids by name: "point", "zN" (cyclic), "sN" (symmetric,
/// N <= 5), "pairN" and "unitN" (objects "0".."N-1") and "swap" (Z/2 on
/// {0,1}).
std::optional<GroupoidPtr> builtin_groupoid(const std::string& name);

struct LoadedEntry {
  std::string kind;
  std::string name;
  ValidationReport violations;
};

/// Named registry of loaded objects. Documents must name their parents by
/// the names of previously loaded documents.
class Workspace {
 public:
  /// Loads a single document or a {"members": [...]} workspace file, whose
  /// paths are relative to the file.
  void load_file(const std::filesystem::path& path);
  void load_document(const Json& j, const std::string& fallback_name = {});

  void add(GroupoidPtr g);
  void add(const Representation& e);
  void add(const CModule& m);
  void add(const PrincipalBibundle& p);
  void add(const GroupoidFunctor& f);
  void add(const std::string& name, const AlgebraElement& a);

  /// Loaded groupoids shadow the built-in names.
  [[nodiscard]] GroupoidPtr groupoid(const std::string& name) const;
  [[nodiscard]] const Representation& rep(const std::string& name) const;
  [[nodiscard]] const CModule& module(const std::string& name) const;
  [[nodiscard]] const PrincipalBibundle& bibundle(const std::string& name) const;
  [[nodiscard]] const GroupoidFunctor& functor(const std::string& name) const;
  [[nodiscard]] const AlgebraElement& element(const std::string& name) const;

  [[nodiscard]] bool has_rep(const std::string& name) const { return reps_.count(name) > 0; }

  /// Every document loaded so far with its validation outcome.
  [[nodiscard]] const std::vector<LoadedEntry>& entries() const { return entries_; }

 private:
  void record(std::string kind, std::string name, ValidationReport violations);
  void claim(const std::string& name);

  std::map<std::string, GroupoidPtr> groupoids_;
  std::map<std::string, Representation> reps_;
  std::map<std::string, CModule> modules_;
  std::map<std::string, PrincipalBibundle> bibundles_;
  std::map<std::string, GroupoidFunctor> functors_;
  std::map<std::string, AlgebraElement> elements_;
  std::map<std::string, std::string> invalid_;
  std::vector<LoadedEntry> entries_;
};

/// Parses a JSON file; malformed JSON raises ParseError.
Json read_json(const std::filesystem::path& path);

}  // namespace grpd::io
