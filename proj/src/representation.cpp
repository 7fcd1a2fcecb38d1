#include "grpd/representation.hpp"

#include <functional>

#include "grpd/error.hpp"

namespace grpd {

namespace {

void require_same_parent(const Representation& e, const Representation& f) {
  if (!same_groupoid(e.groupoid(), f.groupoid())) {
    throw PreconditionError("representations " + e.name() + " and " + f.name() + " live over different groupoids");
  }
}

}  // namespace

Representation::Representation(GroupoidPtr groupoid, std::size_t rank, std::vector<Matrix> rho, std::string name)
    : groupoid_(std::move(groupoid)), rank_(rank), rho_(std::move(rho)), name_(std::move(name)) {
  if (rho_.size() != groupoid_->arrow_count()) {
    throw DimensionError("representation " + name_ + " needs one matrix per arrow");
  }
  for (Arrow g = 0; g < rho_.size(); ++g) {
    if (rho_[g].rows() != rank_ || rho_[g].cols() != rank_) {
      throw DimensionError("representation " + name_ + ": rho(" + groupoid_->arrow_id(g) + ") is not " +
                           std::to_string(rank_) + "x" + std::to_string(rank_));
    }
  }
}

Representation Representation::trivial(const GroupoidPtr& g, std::size_t rank, std::string name) {
  return {g, rank, std::vector<Matrix>(g->arrow_count(), Matrix::identity(rank)), std::move(name)};
}

Representation Representation::renamed(std::string name) const {
  Representation copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool operator==(const Representation& a, const Representation& b) {
  return same_groupoid(a.groupoid_, b.groupoid_) && a.rank_ == b.rank_ && a.rho_ == b.rho_;
}

ValidationReport validate_rep(const Representation& e) {
  ValidationReport report;
  const auto& G = *e.groupoid();
  const Matrix id = Matrix::identity(e.rank());
  for (Obj x = 0; x < G.object_count(); ++x) {
    if (!(e.rho(G.identity(x)) == id)) report.push_back({"identity", G.arrow_id(G.identity(x))});
  }
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    for (Arrow b = 0; b < G.arrow_count(); ++b) {
      auto ab = G.compose(a, b);
      if (ab && !(e.rho(*ab) == e.rho(a) * e.rho(b))) {
        report.push_back({"functoriality", "(" + G.arrow_id(a) + ", " + G.arrow_id(b) + ")"});
      }
    }
  }
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    if (!((e.rho(G.inverse(a)) * e.rho(a)).is_identity())) report.push_back({"inverse", G.arrow_id(a)});
  }
  return report;
}

RepMorphism::RepMorphism(Representation source, Representation target, std::vector<Matrix> phi)
    : source_(std::move(source)), target_(std::move(target)), phi_(std::move(phi)) {
  require_same_parent(source_, target_);
  if (phi_.size() != source_.groupoid()->object_count()) {
    throw DimensionError("rep morphism needs one matrix per object");
  }
  for (const auto& m : phi_) {
    if (m.rows() != target_.rank() || m.cols() != source_.rank()) {
      throw DimensionError("rep morphism component has the wrong shape");
    }
  }
}

bool operator==(const RepMorphism& a, const RepMorphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.phi_ == b.phi_;
}

ValidationReport validate_rep_morphism(const RepMorphism& phi) {
  ValidationReport report;
  const auto& G = *phi.source().groupoid();
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    if (!(phi.at(G.tgt(g)) * phi.source().rho(g) == phi.target().rho(g) * phi.at(G.src(g)))) {
      report.push_back({"equivariance", G.arrow_id(g)});
    }
  }
  return report;
}

RepMorphism identity_morphism(const Representation& e) {
  return {e, e, std::vector<Matrix>(e.groupoid()->object_count(), Matrix::identity(e.rank()))};
}

RepMorphism zero_morphism(const Representation& e, const Representation& f) {
  return {e, f, std::vector<Matrix>(e.groupoid()->object_count(), Matrix(f.rank(), e.rank()))};
}

RepMorphism compose(const RepMorphism& after, const RepMorphism& before) {
  if (!(after.source() == before.target())) throw PreconditionError("rep morphisms are not composable");
  std::vector<Matrix> c;
  for (Obj x = 0; x < before.components().size(); ++x) c.push_back(after.at(x) * before.at(x));
  return {before.source(), after.target(), std::move(c)};
}

bool is_isomorphism(const RepMorphism& phi) {
  for (const auto& m : phi.components()) {
    if (!is_invertible(m)) return false;
  }
  return true;
}

RepMorphism inverse_morphism(const RepMorphism& phi) {
  std::vector<Matrix> inv;
  for (const auto& m : phi.components()) inv.push_back(invert(m));
  return {phi.target(), phi.source(), std::move(inv)};
}

RepMorphism linear_combination(const std::vector<RepMorphism>& basis, const std::vector<Scalar>& coeffs) {
  if (basis.empty() || basis.size() != coeffs.size()) throw DimensionError("linear_combination size mismatch");
  std::vector<Matrix> c(basis.front().components().size(),
                        Matrix(basis.front().target().rank(), basis.front().source().rank()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (Obj x = 0; x < c.size(); ++x) c[x] = c[x] + coeffs[i] * basis[i].at(x);
  }
  return {basis.front().source(), basis.front().target(), std::move(c)};
}

Representation direct_sum(const Representation& e, const Representation& f) {
  require_same_parent(e, f);
  std::vector<Matrix> rho;
  for (Arrow g = 0; g < e.rhos().size(); ++g) rho.push_back(block_diagonal({e.rho(g), f.rho(g)}));
  return {e.groupoid(), e.rank() + f.rank(), std::move(rho), e.name() + "+" + f.name()};
}

Representation tensor_rep(const Representation& e, const Representation& f) {
  require_same_parent(e, f);
  std::vector<Matrix> rho;
  for (Arrow g = 0; g < e.rhos().size(); ++g) rho.push_back(kron(e.rho(g), f.rho(g)));
  return {e.groupoid(), e.rank() * f.rank(), std::move(rho), e.name() + "*" + f.name()};
}

Representation dual_rep(const Representation& e) {
  std::vector<Matrix> rho;
  for (const auto& m : e.rhos()) rho.push_back(invert(m).transpose());
  return {e.groupoid(), e.rank(), std::move(rho), e.name() + "^"};
}

std::vector<RepMorphism> intertwiner_space(const Representation& e, const Representation& f) {
  require_same_parent(e, f);
  const auto& G = *e.groupoid();
  const std::size_t k = e.rank();
  const std::size_t l = f.rank();
  const std::size_t block = l * k;
  const std::size_t unknowns = G.object_count() * block;
  if (unknowns == 0) return {};

  // Unknown (x, r, c) is entry (r, c) of phi(x). Equation (g, r, c):
  // sum_m phi(t)[r][m] rhoE(g)[m][c] - sum_m rhoF(g)[r][m] phi(s)[m][c] = 0.
  Matrix system(G.arrow_count() * block, unknowns);
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    const Obj s = G.src(g);
    const Obj t = G.tgt(g);
    const Matrix& re = e.rho(g);
    const Matrix& rf = f.rho(g);
    for (std::size_t r = 0; r < l; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        const std::size_t eq = g * block + r * k + c;
        for (std::size_t m = 0; m < k; ++m) {
          if (!re(m, c).is_zero()) system(eq, t * block + r * k + m) += re(m, c);
        }
        for (std::size_t m = 0; m < l; ++m) {
          if (!rf(r, m).is_zero()) system(eq, s * block + m * k + c) -= rf(r, m);
        }
      }
    }
  }

  const Matrix kernel = kernel_basis(system);
  std::vector<RepMorphism> basis;
  for (std::size_t v = 0; v < kernel.cols(); ++v) {
    std::vector<Matrix> phi;
    for (Obj x = 0; x < G.object_count(); ++x) {
      Matrix m(l, k);
      for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t c = 0; c < k; ++c) m(r, c) = kernel(x * block + r * k + c, v);
      }
      phi.push_back(std::move(m));
    }
    basis.emplace_back(e, f, std::move(phi));
  }
  return basis;
}

bool characters_agree(const Representation& e, const Representation& f) {
  require_same_parent(e, f);
  if (e.rank() != f.rank()) return false;
  const auto& G = *e.groupoid();
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    if (G.src(g) == G.tgt(g) && !(e.rho(g).trace() == f.rho(g).trace())) return false;
  }
  return true;
}

std::optional<RepMorphism> find_isomorphism(const Representation& e, const Representation& f) {
  if (!characters_agree(e, f)) return std::nullopt;
  const auto& G = *e.groupoid();
  if (e.rank() == 0 || G.object_count() == 0) return zero_morphism(e, f);

  const auto basis = intertwiner_space(e, f);
  const std::size_t m = basis.size();
  if (m == 0) return std::nullopt;
  const long bound = static_cast<long>(e.rank() * G.object_count());

  std::vector<long> coeffs(m, 0);
  std::optional<RepMorphism> found;
  // Enumerates coefficient vectors with entries in [0, bound] summing to `remaining`.
  std::function<bool(std::size_t, long)> scan = [&](std::size_t pos, long remaining) -> bool {
    if (pos + 1 == m) {
      if (remaining > bound) return false;
      coeffs[pos] = remaining;
      std::vector<Scalar> c(coeffs.begin(), coeffs.end());
      RepMorphism candidate = linear_combination(basis, c);
      if (is_isomorphism(candidate)) {
        found = std::move(candidate);
        return true;
      }
      return false;
    }
    for (long v = std::min(remaining, bound); v >= 0; --v) {
      coeffs[pos] = v;
      if (scan(pos + 1, remaining - v)) return true;
    }
    return false;
  };
  for (long total = 1; total <= bound * static_cast<long>(m); ++total) {
    if (scan(0, total)) return found;
  }
  return std::nullopt;
}

}  // namespace grpd
