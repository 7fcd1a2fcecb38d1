#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/matrix.hpp"
#include "grpd/representation.hpp"

namespace grpd {

/// Seeded source of small integers. Uses the raw engine output only, so
/// sequences are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 engine_;
};

/// Invertible n x n matrix with small Gaussian-integer entries (a product
/// of random unit lower and upper triangular factors).
Matrix random_invertible(std::size_t n, Rng& rng);

/// Group homomorphisms from G(x, x) to the fourth roots of unity, found by
/// exhaustive search when the isotropy group has at most 6 elements and
/// otherwise only the trivial one. Each character is indexed by arrow (zero
/// off the isotropy group).
std::vector<std::vector<Scalar>> isotropy_characters(const FiniteGroupoid& g, Obj x);

/// A random validated rank-k representation: on each orbit an isotropy
/// representation (conjugated sum of characters) is spread along transport
/// arrows and twisted by random invertible matrices at every object.
Representation random_rep(const GroupoidPtr& g, std::size_t rank, Rng& rng, std::string name = {});

/// E_x spanned by the arrows with target x, rho(g) delta_a = delta_{g a}.
/// Throws PreconditionError when the number of such arrows varies.
Representation regular_rep(const GroupoidPtr& g, std::string name = "regular");

/// sign of left multiplication by each element, as a permutation of the group.
std::vector<int> regular_sign(const FiniteGroup& group);

/// 1-dimensional rep through the group element of each arrow: the element
/// itself over a group groupoid, gamma for "(gamma,x)" over an action
/// groupoid. Throws PreconditionError when an arrow cannot be matched.
Representation sign_rep(const GroupoidPtr& g, const FiniteGroup& group, std::string name = "sign");

}  // namespace grpd
