#include <doctest.h>

#include <algorithm>

#include "grpd/bibundle.hpp"
#include "grpd/error.hpp"
#include "grpd/generators.hpp"
#include "test_support.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

/// Functor from unit2 into pair2 including the objects.
GroupoidFunctor unit_into_pair() {
  const auto u = unit_n(2);
  const auto p = pair_n(2);
  return {"incl", u, p, {0, 1}, {p->arrow("(0,0)"), p->arrow("(1,1)")}};
}

std::vector<PrincipalBibundle> sample_bundles() {
  const auto pair2 = pair_n(2);
  const PrincipalBibundle p = point_vs_pair();
  return {p, opposite(p), identity_bibundle(pair2), bundle_from_functor(pair_to_z2(pair2, z2())),
          identity_bibundle(s3()), bundle_from_functor(unit_into_pair())};
}

}  // namespace

TEST_CASE("validation examples") {
  for (const auto& b : sample_bundles()) {
    CAPTURE(b.name());
    CHECK(validate_bibundle(b).empty());
  }
  const PrincipalBibundle p = point_vs_pair();
  BibundleTables t = p.tables();
  t.ract.erase(std::find(t.ract.begin(), t.ract.end(), std::array<std::string, 3>{"p0", "(0,1)", "p1"}));
  const PrincipalBibundle broken(p.left(), p.right(), t);
  CHECK(has_violation(validate_bibundle(broken), "principality"));
}

TEST_CASE("division") {
  const PrincipalBibundle p = point_vs_pair();
  const Point p0 = p.point("p0");
  const Point p1 = p.point("p1");
  CHECK(division(p, p0, p0) == p.right()->identity(p.phi(p0)));
  CHECK(p.right()->arrow_id(division(p, p0, p1)) == "(0,1)");

  const PrincipalBibundle id = identity_bibundle(pair_n(2));
  CHECK_THROWS_AS(division(id, id.point("(0,0)"), id.point("(1,1)")), PreconditionError);
}

TEST_CASE("division inverts the principality bijection") {
  for (const auto& b : sample_bundles()) {
    for (Point p = 0; p < b.point_count(); ++p) {
      for (Arrow h = 0; h < b.right()->arrow_count(); ++h) {
        auto ph = b.act_right(p, h);
        if (ph) CHECK(division(b, p, *ph) == h);
      }
      for (auto q : b.pi_fiber(b.pi(p))) CHECK(b.act_right(p, division(b, p, q)) == q);
    }
  }
}

TEST_CASE("composition examples") {
  const PrincipalBibundle p = point_vs_pair();
  const TensorProduct pp = tensor(p, opposite(p));
  CHECK(pp.bundle.point_count() == 1);
  CHECK(validate_bibundle(pp.bundle).empty());
  CHECK(validate_equivariant_map(right_unitor(p)).empty());
  CHECK(validate_equivariant_map(left_unitor(p)).empty());
  CHECK(compose_bibundles(p, identity_bibundle(p.right())).point_count() == p.point_count());
  CHECK_THROWS_AS(compose_bibundles(p, p), PreconditionError);
}

TEST_CASE("composites of valid bundles are valid") {
  const auto bundles = sample_bundles();
  for (const auto& a : bundles) {
    for (const auto& b : bundles) {
      if (!same_groupoid(a.right(), b.left())) continue;
      CAPTURE(a.name());
      CAPTURE(b.name());
      const TensorProduct t = tensor(a, b);
      CHECK(validate_bibundle(t.bundle).empty());
      // Every fibered pair is classified, representatives classify to themselves.
      for (Point c = 0; c < t.bundle.point_count(); ++c) {
        CHECK(t.cls(t.representative[c].first, t.representative[c].second) == c);
      }
    }
  }
}

TEST_CASE("bundles from functors") {
  const auto pair2 = pair_n(2);
  const PrincipalBibundle from_identity = bundle_from_functor(identity_functor(pair2));
  const PrincipalBibundle id = identity_bibundle(pair2);
  CHECK(from_identity.point_count() == id.point_count());
  // (x, h) -> h is an equivariant bijection onto the identity bundle.
  std::vector<Point> map;
  for (Point p = 0; p < from_identity.point_count(); ++p) {
    for (Point q = 0; q < id.point_count(); ++q) {
      if (from_identity.point_id(p) == "(" + pair2->object_id(pair2->tgt(pair2->arrow(id.point_id(q)))) + "," + id.point_id(q) + ")") {
        map.push_back(q);
      }
    }
  }
  REQUIRE(map.size() == id.point_count());
  CHECK(validate_equivariant_map({from_identity, id, map}).empty());

  CHECK(bundle_from_functor(unit_into_pair()).point_count() == 4);

  const auto z = z2();
  const auto trivial = point();
  const GroupoidFunctor collapse{"collapse", z, trivial, {0}, {0, 0}};
  CHECK(bundle_from_functor(collapse).point_count() == 1);

  GroupoidFunctor broken = pair_to_z2(pair2, z);
  broken.on_arrows[pair2->arrow("(0,1)")] = z->arrow("e");
  CHECK_THROWS_AS(bundle_from_functor(broken), PreconditionError);
}

TEST_CASE("coherence on sample chains") {
  const PrincipalBibundle p = point_vs_pair();
  const PrincipalBibundle q = opposite(p);
  const PrincipalBibundle s = bundle_from_functor(pair_to_z2(pair_n(2), z2()));
  CHECK(check_pentagon(p, q, p, s).all_passed());
  CHECK(check_triangle(p, q).all_passed());
  CHECK(check_triangle(q, p).all_passed());
  CHECK(check_triangle(p, s).all_passed());

  const PrincipalBibundle id = identity_bibundle(s3());
  const EquivariantMap a = associator(id, id, id);
  CHECK(validate_equivariant_map(a).empty());
  // For identity bundles the associator sends [[g,h],k] to [g,[h,k]] and
  // both sides are indexed by the same composable triples.
  CHECK(a.map.size() == id.point_count());
  CHECK(validate_equivariant_map(associator(p, q, p)).empty());
  CHECK(check_pentagon(id, id, id, id).all_passed());
}

TEST_CASE("Morita equivalence") {
  const PrincipalBibundle id = identity_bibundle(s3());
  CHECK(is_morita_equivalence(id).is_equivalence);

  const MoritaCertificate cert = is_morita_equivalence(point_vs_pair(3));
  REQUIRE(cert.is_equivalence);
  CHECK(validate_bibundle(*cert.inverse).empty());
  CHECK(validate_equivariant_map(*cert.left_unit).empty());
  CHECK(validate_equivariant_map(*cert.right_unit).empty());

  // One object included into a groupoid with two orbits.
  const auto two = unit_groupoid({"a", "b"}, "two");
  const GroupoidFunctor incl{"incl", point(), two, {0}, {two->arrow("1_a")}};
  const MoritaCertificate no = is_morita_equivalence(bundle_from_functor(incl));
  CHECK_FALSE(no.is_equivalence);
  REQUIRE(no.witness);
  CHECK(no.witness->find("over b") != std::string::npos);
}

TEST_CASE("pullback examples") {
  const auto pair2 = pair_n(2);
  Rng rng(10);
  const Representation e = random_rep(pair2, 2, rng, "e");
  const PrincipalBibundle id = identity_bibundle(pair2);
  const auto back = find_isomorphism(pullback_rep(id, e), e);
  CHECK(back.has_value());

  const Representation down = pullback_rep(point_vs_pair(), e);
  CHECK(down.rank() == 2);
  CHECK(down.groupoid()->arrow_count() == 1);
  CHECK(down.rho(0) == Matrix::identity(2));

  const auto z = z2();
  const Representation sign = sign_rep(z, cyclic_group(2));
  CHECK(pullback_rep(bundle_from_functor(identity_functor(z)), sign).rhos() == sign.rhos());
}

TEST_CASE("pullback of morphisms") {
  const auto pair2 = pair_n(2);
  const PrincipalBibundle p = point_vs_pair();
  const Representation trivial = Representation::trivial(pair2, 1, "trivial");
  const Representation cocycle = cocycle_pair2(pair2);
  CHECK(pullback_rep_mor(p, identity_morphism(cocycle)) == identity_morphism(pullback_rep(p, cocycle)));
  CHECK(pullback_rep_mor(p, zero_morphism(trivial, cocycle)).at(0).is_zero());
  const RepMorphism iso(trivial, cocycle, {scalar1(1), scalar1(2)});
  const RepMorphism down = pullback_rep_mor(p, iso);
  CHECK(down.at(0) == scalar1(1));
  CHECK(is_isomorphism(down));
}

TEST_CASE("different sections give isomorphic pullbacks") {
  Rng rng(77);
  const auto swap = swap_action();
  const Representation e = random_rep(swap, 2, rng, "e");
  const PrincipalBibundle id = identity_bibundle(swap);
  const auto canonical = canonical_section(id);
  std::vector<Point> other;
  for (Obj x = 0; x < swap->object_count(); ++x) other.push_back(id.pi_fiber(x).back());
  REQUIRE(other != canonical);
  const Representation a = pullback_rep(id, e, canonical);
  const Representation b = pullback_rep(id, e, other);
  // Explicit comparison: p'_x = p_x . d_x, so v -> rho_E(d_x) v.
  std::vector<Matrix> phi;
  for (Obj x = 0; x < swap->object_count(); ++x) phi.push_back(e.rho(division(id, canonical[x], other[x])));
  const RepMorphism change(b, a, phi);
  CHECK(validate_rep_morphism(change).empty());
  CHECK(is_isomorphism(change));
  CHECK(find_isomorphism(a, b).has_value());
}

TEST_CASE("pullback is compatible with composition of bundles") {
  Rng rng(42);
  const auto pair2 = pair_n(2);
  const PrincipalBibundle p = point_vs_pair();
  const PrincipalBibundle q = opposite(p);
  const PrincipalBibundle s = bundle_from_functor(pair_to_z2(pair2, z2()));
  const Representation e = random_rep(z2(), 2, rng, "e");
  const Representation via_composite = pullback_rep(compose_bibundles(p, s), e);
  const Representation stepwise = pullback_rep(p, pullback_rep(s, e));
  CHECK(find_isomorphism(via_composite, stepwise).has_value());

  const Representation f = random_rep(pair2, 1, rng, "f");
  CHECK(find_isomorphism(pullback_rep(compose_bibundles(p, q), pullback_rep(p, f)),
                         pullback_rep(p, pullback_rep(q, pullback_rep(p, f))))
            .has_value());
}

TEST_CASE("trivial bundles recover the classical pullback") {
  Rng rng(3);
  const auto pair2 = pair_n(2);
  const GroupoidFunctor psi = pair_to_z2(pair2, z2());
  const Representation e = random_rep(z2(), 2, rng, "e");
  const RepMorphism f = functor_pullback_comparison(psi, e);
  CHECK(validate_rep_morphism(f).empty());
  CHECK(is_isomorphism(f));
}

TEST_CASE("Morita pullback preserves Hom dimensions") {
  Rng rng(9);
  const PrincipalBibundle p = point_vs_pair(3);
  std::vector<Representation> witnesses{Representation::trivial(p.right(), 1), random_rep(p.right(), 2, rng)};
  for (const auto& e : witnesses) {
    for (const auto& f : witnesses) {
      CHECK(intertwiner_space(e, f).size() == intertwiner_space(pullback_rep(p, e), pullback_rep(p, f)).size());
    }
  }
}

TEST_CASE("equivariant map violations") {
  const PrincipalBibundle id = identity_bibundle(z2());
  EquivariantMap f = identity_map(id);
  CHECK(validate_equivariant_map(f).empty());
  f.map = {0, 0};
  const auto report = validate_equivariant_map(f);
  CHECK(has_violation(report, "bijectivity"));
  CHECK(has_violation(report, "left equivariance"));
}
