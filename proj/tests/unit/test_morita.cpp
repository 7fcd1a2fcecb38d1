#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "grpd/error.hpp"
#include "grpd/generators.hpp"
#include "grpd/module.hpp"
#include "grpd/morita.hpp"
#include "test_support.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

GroupoidFunctor unit_into_pair() {
  const auto u = unit_n(2);
  const auto p = pair_n(2);
  return {"incl", u, p, {0, 1}, {p->arrow("(0,0)"), p->arrow("(1,1)")}};
}

/// Number of classes of fibered pairs, by union-find over the balancing moves.
std::size_t orbit_count(const PrincipalBibundle& p, const PrincipalBibundle& q) {
  std::vector<std::pair<Point, Point>> pairs;
  for (Point a = 0; a < p.point_count(); ++a) {
    for (Point b = 0; b < q.point_count(); ++b) {
      if (p.phi(a) == q.pi(b)) pairs.emplace_back(a, b);
    }
  }
  std::vector<std::size_t> parent(pairs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto index = [&](Point a, Point b) {
    return static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), std::pair{a, b}) - pairs.begin());
  };
  const auto& H = *p.right();
  for (Point a = 0; a < p.point_count(); ++a) {
    for (Point b = 0; b < q.point_count(); ++b) {
      for (Arrow h = 0; h < H.arrow_count(); ++h) {
        // (a.h, b) ~ (a, h.b)
        auto ah = p.act_right(a, h);
        auto hb = q.act_left(h, b);
        if (ah && hb) parent[find(index(*ah, b))] = find(index(a, *hb));
      }
    }
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) roots += find(i) == i ? 1 : 0;
  return roots;
}

struct Fixture {
  GroupoidPtr pair2 = pair_n(2);
  GroupoidPtr z = z2();
  PrincipalBibundle p = point_vs_pair();
  PrincipalBibundle q = opposite(p);
  PrincipalBibundle s = bundle_from_functor(pair_to_z2(pair2, z));
};

}  // namespace

TEST_CASE("bimodules of bundles") {
  const Fixture f;
  const Bimodule c = bimodule_of(identity_bibundle(s3()));
  CHECK(c.dim == 6);
  CHECK(validate_bimodule(c).empty());
  CHECK(bimodule_of(f.p).dim == 2);
  const Bimodule incl = bimodule_of(bundle_from_functor(unit_into_pair()));
  CHECK(incl.dim == 4);
  CHECK(validate_bimodule(incl).empty());
  for (const auto& b : {f.p, f.q, f.s}) CHECK(validate_bimodule(bimodule_of(b)).empty());

  Bimodule broken = bimodule_of(f.p);
  std::swap(broken.right_act[0], broken.right_act[1]);
  CHECK_FALSE(validate_bimodule(broken).empty());
}

TEST_CASE("bimodule right action is an anti-homomorphism") {
  const Bimodule c = bimodule_of(identity_bibundle(s3()));
  const auto& G = *c.right;
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    for (Arrow b = 0; b < G.arrow_count(); ++b) {
      CHECK(c.right_act[*G.compose(a, b)] == c.right_act[b] * c.right_act[a]);
    }
  }
}

TEST_CASE("balanced tensor examples") {
  const Fixture f;
  const auto s = s3();
  Rng rng(5);
  const Representation e = random_rep(s, 2, rng, "e");
  const BalancedTensor unit = balanced_tensor(bimodule_of(identity_bibundle(s)), gamma(e));
  CHECK(unit.dim == 2);
  CHECK(unit.unreduced_dim == 12);
  CHECK(unit.projection * unit.section == Matrix::identity(unit.dim));
  CHECK((unit.projection * unit.relations).is_zero());

  const BalancedTensor one = balanced_tensor(bimodule_of(f.p), gamma(Representation::trivial(f.pair2, 1)));
  CHECK(one.dim == 1);
  CHECK(one.unreduced_dim == 4);

  CHECK(balanced_tensor(bimodule_of(f.p), CModule::zero(f.pair2)).dim == 0);
  CHECK_THROWS_AS(balanced_tensor(bimodule_of(f.p), gamma(e)), PreconditionError);
}

TEST_CASE("balanced tensor of bundle bimodules counts orbits") {
  const Fixture f;
  const std::vector<PrincipalBibundle> bundles{f.p, f.q, f.s, identity_bibundle(f.pair2),
                                               bundle_from_functor(unit_into_pair())};
  for (const auto& a : bundles) {
    for (const auto& b : bundles) {
      if (!same_groupoid(a.right(), b.left())) continue;
      CAPTURE(a.name());
      CAPTURE(b.name());
      const BalancedTensor t = balanced_tensor(bimodule_of(a), bimodule_of(b));
      CHECK(t.dim == orbit_count(a, b));
      CHECK(check_omega(a, b).all_passed());
    }
  }
}

TEST_CASE("Omega coherence") {
  const Fixture f;
  CHECK(check_omega_associativity(f.p, f.q, f.p).all_passed());
  CHECK(check_omega_associativity(f.q, f.p, f.s).all_passed());
  for (const auto& b : {f.p, f.q, f.s}) CHECK(check_omega_units(b).all_passed());
  const Omega o = omega(f.p, f.q);
  CHECK(o.target.dim == 1);
  CHECK(o.map.rows() == 1);
}

TEST_CASE("Mod functor examples") {
  const Fixture f;
  const CModule down = mod_functor(f.p, gamma(Representation::trivial(f.pair2, 1, "trivial")));
  CHECK(down.dim() == 1);
  CHECK(down.groupoid()->arrow_count() == 1);
  CHECK(validate_module(down).empty());

  const CModule up = mod_functor(f.q, gamma(Representation::trivial(point(), 3)));
  CHECK(up.dim() == 6);
  CHECK(reconstruct(up).rank() == 3);

  const auto unit2 = unit_groupoid({"x0", "x1"}, "unit2");
  Matrix e0(3, 3);
  e0(0, 0) = 1;
  Matrix e1(3, 3);
  e1(1, 1) = 1;
  e1(2, 2) = 1;
  const CModule blocks(unit2, 3, {e0, e1}, "block12");
  CHECK_THROWS_AS(mod_functor(identity_bibundle(unit2), blocks), PreconditionError);
}

TEST_CASE("Mod functor on morphisms") {
  const Fixture f;
  const Representation trivial = Representation::trivial(f.pair2, 1, "trivial");
  const Representation cocycle = cocycle_pair2(f.pair2);
  const RepMorphism iso(trivial, cocycle, {scalar1(1), scalar1(2)});
  const ModuleMorphism m = mod_functor_mor(f.p, gamma_mor(iso));
  CHECK(validate_module_morphism(m).empty());
  CHECK(is_isomorphism(m));
  const ModuleMorphism id = mod_functor_mor(f.p, identity_module_morphism(gamma(cocycle)));
  CHECK(id.map() == Matrix::identity(id.source().dim()));
}

TEST_CASE("Mod composition") {
  const Fixture f;
  Rng rng(21);
  CHECK(check_mod_composition(f.p, f.q, gamma(random_rep(point(), 2, rng, "a"))).all_passed());
  CHECK(check_mod_composition(f.q, f.p, gamma(random_rep(f.pair2, 2, rng, "b"))).all_passed());
  CHECK(check_mod_composition(f.p, f.s, gamma(random_rep(f.z, 2, rng, "c"))).all_passed());
  CHECK(check_mod_composition(f.q, f.p, regular_module(f.pair2, "reg")).all_passed());
}

TEST_CASE("sigma is a natural isomorphism") {
  const Fixture f;
  Rng rng(13);
  const Representation over_pair = random_rep(f.pair2, 2, rng, "e");
  const Representation over_z = random_rep(f.z, 2, rng, "z");
  CHECK(check_sigma(f.p, over_pair).all_passed());
  CHECK(check_sigma(f.q, random_rep(point(), 2, rng, "v")).all_passed());
  CHECK(check_sigma(f.s, over_z).all_passed());
  CHECK(check_sigma(f.s, sign_rep(f.z, cyclic_group(2))).all_passed());
  CHECK(check_sigma(identity_bibundle(s3()), random_rep(s3(), 2, rng, "w")).all_passed());

  const ModuleMorphism sg = sigma(f.p, over_pair);
  CHECK(sg.target() == gamma(pullback_rep(f.p, over_pair)));
}

TEST_CASE("sigma for trivial bundles matches the classical pullback") {
  Rng rng(8);
  const auto pair2 = pair_n(2);
  const GroupoidFunctor psi = pair_to_z2(pair2, z2());
  for (const auto& e : {random_rep(z2(), 2, rng, "e"), sign_rep(z2(), cyclic_group(2))}) {
    const ModuleMorphism direct = functor_sigma(psi, e);
    const ModuleMorphism via = compose(gamma_mor(functor_pullback_comparison(psi, e)), sigma(bundle_from_functor(psi), e));
    CHECK(direct.map() == via.map());
    CHECK(is_isomorphism(direct));
  }
  const GroupoidFunctor incl = unit_into_pair();
  const Representation c = cocycle_pair2(pair2);
  CHECK(functor_sigma(incl, c).map() ==
        compose(gamma_mor(functor_pullback_comparison(incl, c)), sigma(bundle_from_functor(incl), c)).map());
}

TEST_CASE("natural squares") {
  const Fixture f;
  Rng rng(4);
  const Representation a = random_rep(f.pair2, 2, rng, "a");
  const Representation b = random_rep(f.pair2, 2, rng, "b");
  const Representation trivial = Representation::trivial(f.pair2, 1, "trivial");
  CHECK(check_natural_square(f.p, identity_morphism(a)).all_passed());
  CHECK(check_natural_square(f.p, zero_morphism(a, trivial)).all_passed());
  for (const auto& phi : intertwiner_space(a, b)) CHECK(check_natural_square(f.p, phi).all_passed());
  for (const auto& phi : intertwiner_space(trivial, a)) CHECK(check_natural_square(f.p, phi).all_passed());

  const Representation sign = sign_rep(f.z, cyclic_group(2));
  const Representation za = random_rep(f.z, 2, rng, "za");
  for (const auto& phi : intertwiner_space(sign, za)) CHECK(check_natural_square(f.s, phi).all_passed());
}
