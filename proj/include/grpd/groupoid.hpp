#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grpd/report.hpp"

namespace grpd {

/// Index of an object in the canonical (lexicographic) object order.
using Obj = std::size_t;
/// Index of an arrow in the canonical (lexicographic) arrow order.
using Arrow = std::size_t;

struct ArrowSpec {
  std::string id;
  std::string src;
  std::string tgt;
};

/// Raw, string-keyed groupoid data as read from a file. May be inconsistent;
/// `validate_groupoid` reports what is wrong with it.
struct GroupoidTables {
  std::string name;
  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  /// (g', g'', g'g'') where g'g'' means "g' after g''".
  std::vector<std::array<std::string, 3>> compose;
  std::map<std::string, std::string> identity;
  std::map<std::string, std::string> inverse;
};

/// Empty iff the tables describe a groupoid. Witnesses name the offending
/// identifiers.
ValidationReport validate_groupoid(const GroupoidTables& tables);

/// A validated finite groupoid. Objects and arrows are indexed in
/// lexicographic order of their identifiers; every matrix layout in the
/// library follows that order.
class FiniteGroupoid {
 public:
  /// Throws PreconditionError carrying the violations when invalid.
  static std::shared_ptr<const FiniteGroupoid> create(const GroupoidTables& tables);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t object_count() const { return objects_.size(); }
  [[nodiscard]] std::size_t arrow_count() const { return arrow_ids_.size(); }

  [[nodiscard]] const std::string& object_id(Obj x) const { return objects_.at(x); }
  [[nodiscard]] const std::string& arrow_id(Arrow g) const { return arrow_ids_.at(g); }
  [[nodiscard]] const std::vector<std::string>& object_ids() const { return objects_; }
  [[nodiscard]] const std::vector<std::string>& arrow_ids() const { return arrow_ids_; }

  /// Throws PreconditionError for unknown identifiers.
  [[nodiscard]] Obj object(const std::string& id) const;
  [[nodiscard]] Arrow arrow(const std::string& id) const;
  [[nodiscard]] std::optional<Obj> find_object(const std::string& id) const;
  [[nodiscard]] std::optional<Arrow> find_arrow(const std::string& id) const;

  [[nodiscard]] Obj src(Arrow g) const { return src_[g]; }
  [[nodiscard]] Obj tgt(Arrow g) const { return tgt_[g]; }
  [[nodiscard]] bool composable(Arrow after, Arrow before) const { return src_[after] == tgt_[before]; }
  /// `after` composed with `before`; nullopt when src(after) != tgt(before).
  [[nodiscard]] std::optional<Arrow> compose(Arrow after, Arrow before) const;
  [[nodiscard]] Arrow identity(Obj x) const { return identity_[x]; }
  [[nodiscard]] Arrow inverse(Arrow g) const { return inverse_[g]; }
  [[nodiscard]] bool is_identity(Arrow g) const { return identity_[src_[g]] == g; }

  /// G(x, y): arrows with source x and target y.
  [[nodiscard]] std::vector<Arrow> hom(Obj x, Obj y) const;

  /// Canonically ordered tables; `create(tables())` reproduces this groupoid.
  [[nodiscard]] GroupoidTables tables() const;

  /// Same objects, arrows and structure maps (names are ignored).
  [[nodiscard]] bool same_structure(const FiniteGroupoid& other) const;

 private:
  FiniteGroupoid() = default;

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> arrow_ids_;
  std::map<std::string, Obj> object_index_;
  std::map<std::string, Arrow> arrow_index_;
  std::vector<Obj> src_;
  std::vector<Obj> tgt_;
  std::vector<std::optional<Arrow>> compose_;  // [after * n + before]
  std::vector<Arrow> identity_;
  std::vector<Arrow> inverse_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// True when both pointers denote the same groupoid (identical or
/// structurally equal).
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

/// A finite group given by its multiplication table; table[a][b] = a*b.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table;
};

/// Throws PreconditionError ("non-group multiplication table") unless the
/// table is closed, associative, unital and has inverses.
void validate_group(const FiniteGroup& group);
std::size_t group_identity(const FiniteGroup& group);

FiniteGroup cyclic_group(std::size_t n);
/// Permutations of {0..n-1} in one-line notation ("012", "102", ...);
/// (a*b)(k) = a(b(k)).
FiniteGroup symmetric_group(std::size_t n);

enum class StandardKind { unit, pair, group, action };

struct StandardParams {
  StandardKind kind = StandardKind::unit;
  std::string name;
  std::vector<std::string> objects;  // unit, pair, action
  FiniteGroup group;                 // group, action
  /// action[gamma][x] = index of gamma . x in `objects`.
  std::vector<std::vector<std::size_t>> action;
};

/// The unit, pair, point (group) and translation (action) groupoids.
/// Arrow identifiers: unit "1_x"; pair "(i,j)" from j to i; group the
/// element names over the single object "*"; action "(gamma,x)" from x to
/// gamma . x.
GroupoidPtr build_standard(const StandardParams& params);

GroupoidPtr unit_groupoid(std::vector<std::string> objects, std::string name = "unit");
GroupoidPtr pair_groupoid(std::vector<std::string> objects, std::string name = "pair");
GroupoidPtr group_groupoid(FiniteGroup group, std::string name = "group");
GroupoidPtr action_groupoid(FiniteGroup group, std::vector<std::string> objects,
                            std::vector<std::vector<std::size_t>> action,
                            std::string name = "action");

/// Object names "0", "1", ..., "n-1".
std::vector<std::string> numbered_objects(std::size_t n);

struct HomSet {
  Obj source = 0;
  Obj target = 0;
  std::vector<Arrow> arrows;
};

/// The isotropy group G(x, x); verified closed under composition and
/// inverses. Throws PreconditionError for an unknown object.
HomSet isotropy(const FiniteGroupoid& g, Obj x);
HomSet isotropy(const FiniteGroupoid& g, const std::string& x);

/// Classes of objects connected by an arrow, each sorted, ordered by least
/// member.
std::vector<std::vector<Obj>> orbit_partition(const FiniteGroupoid& g);

/// A functor between finite groupoids given on objects and arrows.
struct GroupoidFunctor {
  std::string name;
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<Obj> on_objects;
  std::vector<Arrow> on_arrows;
};

/// Checks that the maps preserve source, target, identities and composition.
ValidationReport validate_functor(const GroupoidFunctor& f);

GroupoidFunctor identity_functor(const GroupoidPtr& g);

}  // namespace grpd
