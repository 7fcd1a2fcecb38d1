#include "grpd/generators.hpp"

#include <algorithm>

#include "grpd/error.hpp"

namespace grpd {

namespace {

Scalar small_gaussian(Rng& rng) { return Scalar(mpq_class(rng.between(-2, 2)), mpq_class(rng.between(-1, 1))); }

const std::vector<Scalar>& fourth_roots() {
  static const std::vector<Scalar> roots{Scalar(1), Scalar::i(), Scalar(-1), Scalar(0) - Scalar::i()};
  return roots;
}

}  // namespace

Matrix random_invertible(std::size_t n, Rng& rng) {
  Matrix lower = Matrix::identity(n);
  Matrix upper = Matrix::identity(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r > c) lower(r, c) = small_gaussian(rng);
      if (r < c) upper(r, c) = small_gaussian(rng);
    }
    if (rng.below(2) == 1) upper(r, r) = Scalar(-1);
  }
  return lower * upper;
}

std::vector<std::vector<Scalar>> isotropy_characters(const FiniteGroupoid& g, Obj x) {
  const HomSet iso = isotropy(g, x);
  const std::size_t m = iso.arrows.size();
  std::vector<std::vector<Scalar>> out;
  std::vector<Scalar> trivial(g.arrow_count());
  for (auto a : iso.arrows) trivial[a] = Scalar(1);
  if (m > 6) return {trivial};

  std::vector<std::size_t> choice(m, 0);
  while (true) {
    std::vector<Scalar> chi(g.arrow_count());
    for (std::size_t i = 0; i < m; ++i) chi[iso.arrows[i]] = fourth_roots()[choice[i]];
    bool hom = true;
    for (auto a : iso.arrows) {
      for (auto b : iso.arrows) {
        hom = hom && chi[*g.compose(a, b)] == chi[a] * chi[b];
      }
    }
    if (hom) out.push_back(std::move(chi));
    std::size_t k = 0;
    while (k < m && ++choice[k] == 4) choice[k++] = 0;
    if (k == m) break;
  }
  return out;
}

Representation random_rep(const GroupoidPtr& g, std::size_t rank, Rng& rng, std::string name) {
  const auto& G = *g;
  std::vector<Matrix> rho(G.arrow_count(), Matrix(rank, rank));
  for (const auto& orbit : orbit_partition(G)) {
    const Obj base = orbit.front();
    const auto characters = isotropy_characters(G, base);
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < rank; ++i) picks.push_back(rng.below(characters.size()));
    const Matrix conj = random_invertible(rank, rng);
    const Matrix conj_inv = invert(conj);

    std::vector<Arrow> transport(G.object_count());
    std::vector<Matrix> twist(G.object_count());
    for (auto y : orbit) {
      transport[y] = G.hom(base, y).front();
      twist[y] = random_invertible(rank, rng);
    }
    for (Arrow a = 0; a < G.arrow_count(); ++a) {
      const Obj y = G.src(a);
      const Obj z = G.tgt(a);
      if (std::find(orbit.begin(), orbit.end(), y) == orbit.end()) continue;
      const Arrow loop = *G.compose(G.inverse(transport[z]), *G.compose(a, transport[y]));
      Matrix diag(rank, rank);
      for (std::size_t i = 0; i < rank; ++i) diag(i, i) = characters[picks[i]][loop];
      rho[a] = twist[z] * conj * diag * conj_inv * invert(twist[y]);
    }
  }
  Representation e(g, rank, std::move(rho), std::move(name));
  require_valid(validate_rep(e), "generated representation");
  return e;
}

Representation regular_rep(const GroupoidPtr& g, std::string name) {
  const auto& G = *g;
  std::vector<std::vector<Arrow>> into(G.object_count());
  for (Arrow a = 0; a < G.arrow_count(); ++a) into[G.tgt(a)].push_back(a);
  const std::size_t k = into.empty() ? 0 : into.front().size();
  for (const auto& v : into) {
    if (v.size() != k) throw PreconditionError("regular representation of " + G.name() + " has non-constant rank");
  }
  std::vector<Matrix> rho;
  for (Arrow g1 = 0; g1 < G.arrow_count(); ++g1) {
    Matrix m(k, k);
    const auto& from = into[G.src(g1)];
    const auto& to = into[G.tgt(g1)];
    for (std::size_t j = 0; j < k; ++j) {
      const Arrow image = *G.compose(g1, from[j]);
      m(static_cast<std::size_t>(std::find(to.begin(), to.end(), image) - to.begin()), j) = 1;
    }
    rho.push_back(std::move(m));
  }
  return {g, k, std::move(rho), std::move(name)};
}

std::vector<int> regular_sign(const FiniteGroup& group) {
  const std::size_t n = group.elements.size();
  std::vector<int> out;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> seen(n, false);
    int sign = 1;
    for (std::size_t start = 0; start < n; ++start) {
      if (seen[start]) continue;
      std::size_t length = 0;
      for (std::size_t b = start; !seen[b]; b = group.table[a][b]) {
        seen[b] = true;
        ++length;
      }
      if (length % 2 == 0) sign = -sign;
    }
    out.push_back(sign);
  }
  return out;
}

Representation sign_rep(const GroupoidPtr& g, const FiniteGroup& group, std::string name) {
  const auto signs = regular_sign(group);
  std::vector<Matrix> rho;
  for (const auto& id : g->arrow_ids()) {
    std::optional<std::size_t> element;
    for (std::size_t e = 0; e < group.elements.size() && !element; ++e) {
      const auto& el = group.elements[e];
      if (id == el || id.rfind("(" + el + ",", 0) == 0) element = e;
    }
    if (!element) throw PreconditionError("arrow " + id + " does not name a group element");
    rho.push_back(Matrix{{Scalar(signs[*element])}});
  }
  Representation e(g, 1, std::move(rho), std::move(name));
  require_valid(validate_rep(e), "sign representation");
  return e;
}

}  // namespace grpd
