#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/report.hpp"
#include "grpd/representation.hpp"

namespace grpd {

/// Index of a point in the canonical (lexicographic) point order.
using Point = std::size_t;

/// String-keyed bibundle data as read from a file.
struct BibundleTables {
  std::string name;
  std::vector<std::string> points;
  std::map<std::string, std::string> pi;
  std::map<std::string, std::string> phi;
  /// (g, p, g.p)
  std::vector<std::array<std::string, 3>> lact;
  /// (p, h, p.h)
  std::vector<std::array<std::string, 3>> ract;
};

/// A set P with anchors pi: P -> M (objects of G) and phi: P -> N (objects
/// of H), a partial left G-action defined when s(g) = pi(p) and a partial
/// right H-action defined when phi(p) = t(h). Construction only checks that
/// the data is well formed; `validate_bibundle` checks the axioms.
class PrincipalBibundle {
 public:
  /// Throws PreconditionError for duplicate or unknown identifiers, missing
  /// anchors, or an action listed twice for the same pair.
  PrincipalBibundle(GroupoidPtr left, GroupoidPtr right, const BibundleTables& tables);

  /// Indexed form; `lact[g * n + p]` and `ract[p * |H| + h]` with n = number
  /// of points, indices referring to the order of `points`, which need not
  /// be sorted.
  PrincipalBibundle(GroupoidPtr left, GroupoidPtr right, std::string name, std::vector<std::string> points,
                    std::vector<Obj> pi, std::vector<Obj> phi, std::vector<std::optional<Point>> lact,
                    std::vector<std::optional<Point>> ract);

  [[nodiscard]] const GroupoidPtr& left() const { return left_; }
  [[nodiscard]] const GroupoidPtr& right() const { return right_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] PrincipalBibundle renamed(std::string name) const;

  [[nodiscard]] std::size_t point_count() const { return points_.size(); }
  [[nodiscard]] const std::string& point_id(Point p) const { return points_.at(p); }
  [[nodiscard]] const std::vector<std::string>& point_ids() const { return points_; }
  [[nodiscard]] Point point(const std::string& id) const;
  [[nodiscard]] std::optional<Point> find_point(const std::string& id) const;

  [[nodiscard]] Obj pi(Point p) const { return pi_[p]; }
  [[nodiscard]] Obj phi(Point p) const { return phi_[p]; }
  [[nodiscard]] std::optional<Point> act_left(Arrow g, Point p) const { return lact_[g * points_.size() + p]; }
  [[nodiscard]] std::optional<Point> act_right(Point p, Arrow h) const { return ract_[p * right_->arrow_count() + h]; }

  /// Points over x (resp. y), in canonical order.
  [[nodiscard]] std::vector<Point> pi_fiber(Obj x) const;
  [[nodiscard]] std::vector<Point> phi_fiber(Obj y) const;

  /// Canonically ordered tables; reconstructing from them gives an equal bundle.
  [[nodiscard]] BibundleTables tables() const;

  friend bool operator==(const PrincipalBibundle& a, const PrincipalBibundle& b);

 private:
  GroupoidPtr left_;
  GroupoidPtr right_;
  std::string name_;
  std::vector<std::string> points_;
  std::map<std::string, Point> index_;
  std::vector<Obj> pi_;
  std::vector<Obj> phi_;
  std::vector<std::optional<Point>> lact_;
  std::vector<std::optional<Point>> ract_;
};

/// Violations: "left action domain", "right action domain" (action missing
/// or present on a non-composable pair), "left action anchor",
/// "right action anchor", "left unit", "right unit", "left associativity",
/// "right associativity", "invariance", "commutation", "pi surjective",
/// "principality" (a pi-fiber pair (p, q) not joined by exactly one h).
ValidationReport validate_bibundle(const PrincipalBibundle& p);

/// G over itself: points are arrows, pi = t, phi = s, both actions by
/// composition.
PrincipalBibundle identity_bibundle(const GroupoidPtr& g);

/// The unique h with p.h = q. Throws PreconditionError when p and q lie in
/// different pi-fibers or no such h exists.
Arrow division(const PrincipalBibundle& bundle, Point p, Point q);

/// A map of bibundles with the same G and H.
struct EquivariantMap {
  PrincipalBibundle source;
  PrincipalBibundle target;
  std::vector<Point> map;

  friend bool operator==(const EquivariantMap&, const EquivariantMap&) = default;
};

/// Violations: "anchors", "left equivariance", "right equivariance",
/// "bijectivity".
ValidationReport validate_equivariant_map(const EquivariantMap& f);
EquivariantMap identity_map(const PrincipalBibundle& p);
EquivariantMap compose(const EquivariantMap& after, const EquivariantMap& before);

/// P (x)_H Q with the bookkeeping needed to name its points.
struct TensorProduct {
  PrincipalBibundle bundle;
  /// Least fibered pair (p, q) of each class, indexed by class point.
  std::vector<std::pair<Point, Point>> representative;
  /// Class of every fibered pair.
  std::map<std::pair<Point, Point>, Point> class_of;

  [[nodiscard]] Point cls(Point p, Point q) const;
};

/// Orbits of (p.h, q) ~ (p, h.q) on {(p, q) : phi(p) = pi(q)}. The class of
/// (p, q) is named "[p,q]" after its least representative. Throws
/// PreconditionError on a groupoid mismatch or invalid input.
TensorProduct tensor(const PrincipalBibundle& p, const PrincipalBibundle& q);
PrincipalBibundle compose_bibundles(const PrincipalBibundle& p, const PrincipalBibundle& q);

/// l_P: G (x) P -> P, [g, p] -> g.p
EquivariantMap left_unitor(const PrincipalBibundle& p);
/// r_P: P (x) H -> P, [p, h] -> p.h
EquivariantMap right_unitor(const PrincipalBibundle& p);
/// a_{P,Q,R}: (P (x) Q) (x) R -> P (x) (Q (x) R), [[p,q],r] -> [p,[q,r]]; checked
/// to be independent of representatives.
EquivariantMap associator(const PrincipalBibundle& p, const PrincipalBibundle& q, const PrincipalBibundle& r);
/// f (x) g: [p, q] -> [f p, g q]
EquivariantMap tensor_maps(const EquivariantMap& f, const EquivariantMap& g);

/// Both rebracketings ((PQ)R)S -> P(Q(RS)) agree as point maps.
CheckReport check_pentagon(const PrincipalBibundle& p, const PrincipalBibundle& q, const PrincipalBibundle& r,
                           const PrincipalBibundle& s);
/// (r_P (x) id_Q) = (id_P (x) l_Q) a_{P,H,Q}.
CheckReport check_triangle(const PrincipalBibundle& p, const PrincipalBibundle& q);

/// The H-G bundle with the anchors swapped, h.~p = ~(p.h^-1) and
/// ~p.g = ~(g^-1.p). Points are renamed "~p".
PrincipalBibundle opposite(const PrincipalBibundle& p);

struct MoritaCertificate {
  bool is_equivalence = false;
  std::optional<std::string> witness;
  std::optional<PrincipalBibundle> inverse;
  /// P (x) P~ -> G, [p, ~q] -> the g with g.q = p
  std::optional<EquivariantMap> left_unit;
  /// P~ (x) P -> H, [~p, q] -> division(p, q)
  std::optional<EquivariantMap> right_unit;
};

/// True iff G acts freely and transitively on every (nonempty) phi-fiber;
/// the certificate maps are validated before being returned.
MoritaCertificate is_morita_equivalence(const PrincipalBibundle& p);

/// P(psi) = {(x, h) : psi(x) = t(h)} with g.(x,h) = (t g, psi(g) h) and
/// (x,h).h' = (x, h h'). Throws PreconditionError unless psi is a functor.
PrincipalBibundle bundle_from_functor(const GroupoidFunctor& psi);

/// The least point of each pi-fiber.
std::vector<Point> canonical_section(const PrincipalBibundle& p);

/// Rep(P)(E): fiber at x is E at phi(p_x), rho(g) = rho_E(division(p_{t g},
/// g.p_{s g})). `section` defaults to the canonical one.
Representation pullback_rep(const PrincipalBibundle& p, const Representation& e,
                            const std::optional<std::vector<Point>>& section = std::nullopt);
/// phi'(x) = phi(phi(p_x)).
RepMorphism pullback_rep_mor(const PrincipalBibundle& p, const RepMorphism& phi,
                             const std::optional<std::vector<Point>>& section = std::nullopt);

/// psi*E: rho(g) = rho_E(psi(g)).
Representation functor_pullback(const GroupoidFunctor& psi, const Representation& e);
/// The natural iso Rep(P(psi))(E) -> psi*E, x -> rho_E(h_x) where p_x = (x, h_x).
RepMorphism functor_pullback_comparison(const GroupoidFunctor& psi, const Representation& e);

}  // namespace grpd
