#include <doctest.h>

#include "grpd/error.hpp"
#include "grpd/generators.hpp"
#include "grpd/representation.hpp"
#include "test_support.hpp"

using namespace grpd;
using namespace grpd::testing;

namespace {

Representation sign_z2(const GroupoidPtr& z) { return sign_rep(z, cyclic_group(2)); }

/// Independent intertwiner-space dimension: nullity of the equivariance
/// system assembled object by object with Kronecker products.
std::size_t hom_dim_oracle(const Representation& e, const Representation& f) {
  const auto& g = *e.groupoid();
  const std::size_t k = e.rank();
  const std::size_t l = f.rank();
  const std::size_t block = k * l;
  const std::size_t unknowns = block * g.object_count();
  if (unknowns == 0) return 0;
  // vec(phi_t rho_E) = (rho_E^T (x) I) vec(phi_t) with column-major vec.
  std::vector<Matrix> rows;
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    Matrix eq(block, unknowns);
    const Matrix left = kron(e.rho(a).transpose(), Matrix::identity(l));
    const Matrix right = kron(Matrix::identity(k), f.rho(a));
    for (std::size_t r = 0; r < block; ++r) {
      for (std::size_t c = 0; c < block; ++c) {
        eq(r, g.tgt(a) * block + c) += left(r, c);
        eq(r, g.src(a) * block + c) -= right(r, c);
      }
    }
    rows.push_back(eq);
  }
  return unknowns - rank(vstack(rows));
}

}  // namespace

TEST_CASE("validate_rep examples") {
  const auto z = z2();
  CHECK(validate_rep(Representation::trivial(z, 3)).empty());
  CHECK(validate_rep(sign_z2(z)).empty());
  Representation bad(z, 1, {scalar1(1), scalar1(2)}, "bad");
  const auto report = validate_rep(bad);
  REQUIRE(has_violation(report, "functoriality"));
  CHECK(report.front().witness == "(s, s)");
}

TEST_CASE("direct sum, tensor and dual") {
  const auto z = z2();
  const Representation sign = sign_z2(z);
  const Representation zero = Representation::trivial(z, 0);
  CHECK(direct_sum(sign, zero) == sign);
  CHECK(tensor_rep(sign, sign) == Representation::trivial(z, 1));
  CHECK(dual_rep(sign) == sign);
  grpd::Rng rng(3);
  const Representation e = random_rep(swap_action(), 2, rng);
  const Representation f = random_rep(swap_action(), 1, rng);
  CHECK(validate_rep(direct_sum(e, f)).empty());
  CHECK(validate_rep(tensor_rep(e, f)).empty());
  CHECK(validate_rep(dual_rep(e)).empty());
  CHECK_THROWS_AS(direct_sum(sign, f), PreconditionError);
}

TEST_CASE("intertwiner space dimensions") {
  const auto z = z2();
  CHECK(intertwiner_space(Representation::trivial(pair_n(3), 1), Representation::trivial(pair_n(3), 1)).size() == 1);
  CHECK(intertwiner_space(sign_z2(z), Representation::trivial(z, 1)).empty());
  const Representation reg = regular_rep(z);
  CHECK(reg.rank() == 2);
  CHECK(intertwiner_space(reg, reg).size() == 2);
}

TEST_CASE("intertwiner spaces agree with the Kronecker oracle") {
  grpd::Rng rng(99);
  for (const auto& g : {pair_n(3), s3(), swap_action(), unit_n(3)}) {
    std::vector<Representation> reps{Representation::trivial(g, 1)};
    for (std::size_t k = 1; k <= 2; ++k) reps.push_back(random_rep(g, k, rng));
    for (const auto& e : reps) {
      for (const auto& f : reps) {
        const auto basis = intertwiner_space(e, f);
        CHECK(basis.size() == hom_dim_oracle(e, f));
        for (const auto& phi : basis) CHECK(validate_rep_morphism(phi).empty());
      }
    }
  }
}

TEST_CASE("find_isomorphism examples") {
  const auto pair = pair_n(2);
  const Representation trivial = Representation::trivial(pair, 1, "trivial");
  const Representation cocycle = cocycle_pair2(pair);

  const auto self = find_isomorphism(cocycle, cocycle);
  REQUIRE(self);
  CHECK(*self == identity_morphism(cocycle));

  // trivial -> cocycle: phi(1) = rho(1,0) phi(0), so (1, 2) up to scalar.
  const auto forward = find_isomorphism(trivial, cocycle);
  REQUIRE(forward);
  CHECK(forward->at(1) == Scalar(2) * forward->at(0));
  CHECK(validate_rep_morphism(*forward).empty());
  // cocycle -> trivial: the inverse direction, (1, 1/2) up to scalar.
  const auto backward = find_isomorphism(cocycle, trivial);
  REQUIRE(backward);
  CHECK(backward->at(1) == Scalar(1, 2) * backward->at(0));

  const auto z = z2();
  CHECK_FALSE(find_isomorphism(sign_z2(z), Representation::trivial(z, 1)).has_value());
}

TEST_CASE("find_isomorphism is symmetric and self-certifying") {
  grpd::Rng rng(17);
  for (const auto& g : {s3(), swap_action(), pair_n(3)}) {
    for (int trial = 0; trial < 3; ++trial) {
      const Representation e = random_rep(g, 2, rng, "e");
      const Representation f = random_rep(g, 2, rng, "f");
      const auto ef = find_isomorphism(e, f);
      const auto fe = find_isomorphism(f, e);
      CHECK(ef.has_value() == fe.has_value());
      CHECK(ef.has_value() == characters_agree(e, f));
      if (ef) {
        CHECK(compose(inverse_morphism(*ef), *ef) == identity_morphism(e));
      }
    }
  }
}

TEST_CASE("every rep of a pair groupoid is trivial") {
  grpd::Rng rng(314);
  const auto g = pair_n(3);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t k = 1 + rng.below(3);
    const Representation e = random_rep(g, k, rng);
    const auto iso = find_isomorphism(e, Representation::trivial(g, k));
    REQUIRE(iso);
    CHECK(is_isomorphism(*iso));
    CHECK(validate_rep_morphism(*iso).empty());
  }
}

TEST_CASE("random reps are valid and regular reps have the group order as rank") {
  grpd::Rng rng(1);
  for (const auto& g : {unit_n(3), pair_n(3), z2(), s3(), swap_action()}) {
    for (std::size_t k = 0; k <= 3; ++k) CHECK(validate_rep(random_rep(g, k, rng)).empty());
  }
  CHECK(regular_rep(s3()).rank() == 6);
  CHECK(validate_rep(regular_rep(swap_action())).empty());
  CHECK(validate_rep(sign_rep(s3(), symmetric_group(3))).empty());
  CHECK(validate_rep(sign_rep(swap_action(), cyclic_group(2))).empty());
  // pair2 next to a lone object: two arrows into 0 and 1, one into c.
  GroupoidTables t = pair_n(2)->tables();
  t.name = "uneven";
  t.objects.push_back("c");
  t.arrows.push_back({"1_c", "c", "c"});
  t.compose.push_back({"1_c", "1_c", "1_c"});
  t.identity["c"] = "1_c";
  t.inverse["1_c"] = "1_c";
  const auto uneven = FiniteGroupoid::create(t);
  CHECK_THROWS_AS(regular_rep(uneven), PreconditionError);
}

TEST_CASE("S3 has exactly two characters with values in the fourth roots of unity") {
  const auto g = s3();
  CHECK(isotropy_characters(*g, 0).size() == 2);
  CHECK(isotropy_characters(*group_groupoid(cyclic_group(4), "z4"), 0).size() == 4);
}
