#include <doctest.h>

#include "grpd/convolution.hpp"
#include "grpd/error.hpp"
#include "grpd/generators.hpp"
#include "grpd/module.hpp"
#include "test_support.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

CModule block12() {
  const auto g = unit_groupoid({"x0", "x1"}, "unit2");
  Matrix e0(3, 3);
  e0(0, 0) = 1;
  Matrix e1(3, 3);
  e1(1, 1) = 1;
  e1(2, 2) = 1;
  return {g, 3, {e0, e1}, "block12"};
}

/// A module isomorphic to Gamma(E) but written in a scrambled basis.
CModule scrambled(const CModule& m, Rng& rng) {
  const Matrix c = random_invertible(m.dim(), rng);
  const Matrix ci = invert(c);
  std::vector<Matrix> act;
  for (const auto& a : m.acts()) act.push_back(c * a * ci);
  return {m.groupoid(), m.dim(), act, m.name() + "'"};
}

}  // namespace

TEST_CASE("gamma examples") {
  const auto z = z2();
  const CModule sign = gamma(sign_rep(z, cyclic_group(2)));
  CHECK(sign.dim() == 1);
  CHECK(sign.act(z->arrow("s")) == mat({{-1}}));

  const auto pair = pair_n(2);
  const CModule columns = gamma(Representation::trivial(pair, 1));
  CHECK(columns.dim() == 2);
  const auto units = matrix_unit_model(*pair);
  for (Arrow a = 0; a < pair->arrow_count(); ++a) CHECK(columns.act(a) == units[a]);

  CHECK(gamma(Representation::trivial(pair, 0)).dim() == 0);
}

TEST_CASE("gamma satisfies the module axioms and has constant rank") {
  Rng rng(8);
  for (const auto& g : {unit_n(3), pair_n(3), z2(), s3(), swap_action()}) {
    for (std::size_t k = 0; k <= 2; ++k) {
      const Representation e = random_rep(g, k, rng);
      const CModule m = gamma(e);
      CHECK(validate_module(m).empty());
      const RankReport r = is_finite_type_constant_rank(m);
      CHECK(r.finite_type);
      CHECK(r.constant_rank);
      for (auto x : r.rank_function) CHECK(x == k);
      // The action of a general element is the sum of basis actions.
      const AlgebraElement a(g, std::vector<Scalar>(g->arrow_count(), Scalar(1, 3)));
      Matrix sum(m.dim(), m.dim());
      for (Arrow b = 0; b < g->arrow_count(); ++b) sum = sum + Scalar(1, 3) * m.act(b);
      CHECK(m.act(a) == sum);
    }
  }
}

TEST_CASE("fibers") {
  const auto unit = unit_n(3);
  const CModule m = gamma(Representation::trivial(unit, 2));
  for (Obj x = 0; x < 3; ++x) CHECK(fiber(m, x).dim == 2);

  const auto z = z2();
  const CModule reg = regular_module(z);
  CHECK(fiber(reg, 0).dim == 2);

  const CModule blocks = block12();
  CHECK(fiber(blocks, 0).dim == 1);
  CHECK(fiber(blocks, 1).dim == 2);

  CModule degenerate(z, 1, {mat({{0}}), mat({{0}})}, "degenerate");
  CHECK(has_violation(validate_module(degenerate), "nondegeneracy"));
  CHECK_THROWS_AS(fiber(degenerate, 0), PreconditionError);
}

TEST_CASE("image fibers agree with the quotient by the ideal") {
  Rng rng(12);
  for (const auto& g : {unit_n(3), pair_n(3), swap_action()}) {
    const CModule m = scrambled(gamma(random_rep(g, 2, rng)), rng);
    for (Obj x = 0; x < g->object_count(); ++x) CHECK(fiber(m, x).dim == quotient_fiber_dim(m, x));
  }
  const CModule blocks = block12();
  CHECK(quotient_fiber_dim(blocks, 0) == 1);
  CHECK(quotient_fiber_dim(blocks, 1) == 2);
}

TEST_CASE("rank gatekeeping") {
  const CModule blocks = block12();
  const RankReport r = is_finite_type_constant_rank(blocks);
  CHECK(r.finite_type);
  CHECK_FALSE(r.constant_rank);
  CHECK(r.rank_function == std::vector<std::size_t>{1, 2});
  CHECK(r.embedding_rank == 2);
  CHECK(rank(r.embedding) == 3);
  try {
    reconstruct(blocks);
    FAIL("expected NonConstantRankError");
  } catch (const NonConstantRankError& e) {
    CHECK(e.rank_function == std::vector<std::size_t>{1, 2});
    CHECK(std::string(e.what()).find("{x0:1, x1:2}") != std::string::npos);
  }
  const CModule zero = CModule::zero(unit_n(2));
  CHECK(is_finite_type_constant_rank(zero).constant_rank);
  CHECK(reconstruct(zero).rank() == 0);
}

TEST_CASE("reconstruct examples") {
  const auto z = z2();
  const Representation sign = sign_rep(z, cyclic_group(2));
  CHECK(reconstruct(gamma(sign)).rhos() == sign.rhos());

  const Representation reg = reconstruct(regular_module(z));
  CHECK(reg.rho(z->arrow("s")) == mat({{0, 1}, {1, 0}}));

  // delta_e + delta_s is central, so it acts as a module endomorphism.
  const CModule m = regular_module(z);
  const Matrix central = m.act(AlgebraElement(z, {Scalar(1), Scalar(1)}));
  const ModuleMorphism f(m, m, central);
  CHECK(validate_module_morphism(f).empty());
  CHECK(reconstruct_mor(f).at(0) == mat({{1, 1}, {1, 1}}));
  CHECK(reconstruct_mor(identity_module_morphism(m)).at(0) == Matrix::identity(2));
  CHECK(reconstruct_mor(ModuleMorphism(m, m, Matrix(2, 2))).at(0).is_zero());
}

TEST_CASE("gamma_mor examples") {
  const auto pair = pair_n(2);
  const Representation trivial = Representation::trivial(pair, 1);
  const Representation cocycle = cocycle_pair2(pair);
  CHECK(gamma_mor(identity_morphism(cocycle)).map() == Matrix::identity(2));
  CHECK(gamma_mor(zero_morphism(trivial, cocycle)).map().is_zero());
  const RepMorphism iso(trivial, cocycle, {scalar1(1), scalar1(2)});
  REQUIRE(validate_rep_morphism(iso).empty());
  const ModuleMorphism m = gamma_mor(iso);
  CHECK(m.map() == mat({{1, 0}, {0, 2}}));
  CHECK(validate_module_morphism(m).empty());
}

TEST_CASE("epsilon and eta") {
  const auto z = z2();
  const CModule reg = regular_module(z);
  const ModuleMorphism e = epsilon(reg);
  CHECK(is_isomorphism(e));
  CHECK(validate_module_morphism(e).empty());
  CHECK(epsilon(CModule::zero(z)).map().rows() == 0);

  CHECK(eta(Representation::trivial(pair_n(2), 1)).at(0) == Matrix::identity(1));
  CHECK(eta(sign_rep(z, cyclic_group(2))).at(0) == Matrix::identity(1));
  Rng rng(21);
  const Representation r = random_rep(swap_action(), 2, rng);
  const RepMorphism h = eta(r);
  CHECK(is_isomorphism(h));
  CHECK(validate_rep_morphism(h).empty());
}

TEST_CASE("naturality of eta and epsilon") {
  Rng rng(5);
  for (const auto& g : {pair_n(3), s3(), swap_action()}) {
    const Representation e = random_rep(g, 2, rng, "e");
    const Representation f = direct_sum(e, Representation::trivial(g, 1));
    for (const auto& phi : intertwiner_space(e, f)) {
      CHECK(compose(phi, eta(e)) == compose(eta(f), reconstruct_mor(gamma_mor(phi))));
    }
    const CModule m = scrambled(gamma(e), rng);
    const CModule n = scrambled(gamma(f), rng);
    for (const auto& big_phi : module_hom_space(m, n)) {
      const ModuleMorphism lhs = compose(gamma_mor(reconstruct_mor(big_phi)), epsilon(m));
      const ModuleMorphism rhs = compose(epsilon(n), big_phi);
      CHECK(lhs.map() == rhs.map());
    }
  }
}

TEST_CASE("functoriality of gamma and reconstruct") {
  Rng rng(6);
  const auto g = s3();
  const Representation e = random_rep(g, 2, rng, "e");
  const Representation f = direct_sum(e, e);
  const auto hom_ef = intertwiner_space(e, f);
  const auto hom_fe = intertwiner_space(f, e);
  REQUIRE(!hom_ef.empty());
  REQUIRE(!hom_fe.empty());
  const RepMorphism composite = compose(hom_fe.front(), hom_ef.front());
  CHECK(gamma_mor(composite).map() == gamma_mor(hom_fe.front()).map() * gamma_mor(hom_ef.front()).map());
  CHECK(gamma_mor(identity_morphism(e)).map() == Matrix::identity(gamma(e).dim()));
  const ModuleMorphism a = gamma_mor(hom_ef.front());
  const ModuleMorphism b = gamma_mor(hom_fe.front());
  CHECK(reconstruct_mor(compose(b, a)) == compose(reconstruct_mor(b), reconstruct_mor(a)));
}

TEST_CASE("Serre-Swan report over Z/2") {
  const auto z = z2();
  const std::vector<Representation> reps{Representation::trivial(z, 1, "trivial"),
                                         sign_rep(z, cyclic_group(2)), regular_rep(z)};
  const CheckReport report = check_serre_swan(z, reps, {regular_module(z)});
  CHECK(report.all_passed());
  CHECK(report.checks().size() == 3 * 3 + 1 + 2 * 9);
}

TEST_CASE("non-constant rank witnesses are out of scope, not failures") {
  const CModule blocks = block12();
  const CheckReport report = check_serre_swan(blocks.groupoid(), {}, {blocks});
  REQUIRE(report.checks().size() == 1);
  CHECK(report.checks().front().pass);
  CHECK(report.checks().front().name.find("out of scope") != std::string::npos);
  CHECK(report.checks().front().witness == "{x0:1, x1:2}");
}

TEST_CASE("module hom spaces match intertwiner spaces under gamma") {
  Rng rng(4);
  const auto g = swap_action();
  const Representation e = random_rep(g, 1, rng);
  const Representation f = random_rep(g, 2, rng);
  CHECK(module_hom_space(gamma(e), gamma(f)).size() == intertwiner_space(e, f).size());
}
