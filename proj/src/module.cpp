#include "grpd/module.hpp"

namespace grpd {

CModule::CModule(GroupoidPtr groupoid, std::size_t dim, std::vector<Matrix> act, std::string name)
    : groupoid_(std::move(groupoid)), dim_(dim), act_(std::move(act)), name_(std::move(name)) {
  if (act_.size() != groupoid_->arrow_count()) throw DimensionError("module " + name_ + " needs one matrix per arrow");
  for (Arrow g = 0; g < act_.size(); ++g) {
    if (act_[g].rows() != dim_ || act_[g].cols() != dim_) {
      throw DimensionError("module " + name_ + ": act(" + groupoid_->arrow_id(g) + ") has the wrong shape");
    }
  }
}

CModule CModule::zero(const GroupoidPtr& g, std::string name) {
  return {g, 0, std::vector<Matrix>(g->arrow_count(), Matrix(0, 0)), std::move(name)};
}

CModule CModule::renamed(std::string name) const {
  CModule copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Matrix CModule::act(const AlgebraElement& a) const {
  if (!same_groupoid(a.groupoid(), groupoid_)) throw PreconditionError("algebra element over a different groupoid");
  Matrix out(dim_, dim_);
  for (Arrow g = 0; g < act_.size(); ++g) {
    if (!a[g].is_zero()) out = out + a[g] * act_[g];
  }
  return out;
}

bool operator==(const CModule& a, const CModule& b) {
  return same_groupoid(a.groupoid_, b.groupoid_) && a.dim_ == b.dim_ && a.act_ == b.act_;
}

ValidationReport validate_module(const CModule& m) {
  ValidationReport report;
  const auto& G = *m.groupoid();
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    for (Arrow b = 0; b < G.arrow_count(); ++b) {
      const Matrix product = m.act(a) * m.act(b);
      auto ab = G.compose(a, b);
      const bool ok = ab ? product == m.act(*ab) : product.is_zero();
      if (!ok) report.push_back({"action law", "(" + G.arrow_id(a) + ", " + G.arrow_id(b) + ")"});
    }
  }
  Matrix sum(m.dim(), m.dim());
  for (Obj x = 0; x < G.object_count(); ++x) sum = sum + m.idempotent(x);
  if (!sum.is_identity()) report.push_back({"nondegeneracy", "sum of e_x is not the identity"});
  for (Obj x = 0; x < G.object_count(); ++x) {
    for (Obj y = 0; y < G.object_count(); ++y) {
      if (x != y && !(m.idempotent(x) * m.idempotent(y)).is_zero()) {
        report.push_back({"orthogonality", "(" + G.object_id(x) + ", " + G.object_id(y) + ")"});
      }
    }
  }
  return report;
}

CModule regular_module(const GroupoidPtr& g, std::string name) {
  const std::size_t n = g->arrow_count();
  std::vector<Matrix> act;
  for (Arrow a = 0; a < n; ++a) {
    Matrix m(n, n);
    for (Arrow b = 0; b < n; ++b) {
      if (auto ab = g->compose(a, b)) m(*ab, b) = 1;
    }
    act.push_back(std::move(m));
  }
  return {g, n, std::move(act), name.empty() ? "C(" + g->name() + ")" : std::move(name)};
}

ModuleMorphism::ModuleMorphism(CModule source, CModule target, Matrix map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!same_groupoid(source_.groupoid(), target_.groupoid())) {
    throw PreconditionError("module morphism between modules over different groupoids");
  }
  if (map_.rows() != target_.dim() || map_.cols() != source_.dim()) {
    throw DimensionError("module morphism matrix has the wrong shape");
  }
}

ValidationReport validate_module_morphism(const ModuleMorphism& f) {
  ValidationReport report;
  const auto& G = *f.source().groupoid();
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    if (!(f.map() * f.source().act(g) == f.target().act(g) * f.map())) {
      report.push_back({"intertwining", G.arrow_id(g)});
    }
  }
  return report;
}

ModuleMorphism identity_module_morphism(const CModule& m) { return {m, m, Matrix::identity(m.dim())}; }

ModuleMorphism compose(const ModuleMorphism& after, const ModuleMorphism& before) {
  if (!(after.source() == before.target())) throw PreconditionError("module morphisms are not composable");
  return {before.source(), after.target(), after.map() * before.map()};
}

bool is_isomorphism(const ModuleMorphism& f) { return is_invertible(f.map()); }

std::vector<ModuleMorphism> module_hom_space(const CModule& m, const CModule& n) {
  if (!same_groupoid(m.groupoid(), n.groupoid())) throw PreconditionError("modules over different groupoids");
  const auto& G = *m.groupoid();
  const std::size_t dm = m.dim();
  const std::size_t dn = n.dim();
  const std::size_t unknowns = dm * dn;
  if (unknowns == 0) return {};
  // Unknown (r, c) is X[r][c]; equation (g, r, c) is (X act_m(g) - act_n(g) X)[r][c] = 0.
  Matrix system(G.arrow_count() * unknowns, unknowns);
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    const Matrix& am = m.act(g);
    const Matrix& an = n.act(g);
    for (std::size_t r = 0; r < dn; ++r) {
      for (std::size_t c = 0; c < dm; ++c) {
        const std::size_t eq = g * unknowns + r * dm + c;
        for (std::size_t k = 0; k < dm; ++k) {
          if (!am(k, c).is_zero()) system(eq, r * dm + k) += am(k, c);
        }
        for (std::size_t k = 0; k < dn; ++k) {
          if (!an(r, k).is_zero()) system(eq, k * dm + c) -= an(r, k);
        }
      }
    }
  }
  const Matrix kernel = kernel_basis(system);
  std::vector<ModuleMorphism> basis;
  for (std::size_t v = 0; v < kernel.cols(); ++v) {
    Matrix x(dn, dm);
    for (std::size_t r = 0; r < dn; ++r) {
      for (std::size_t c = 0; c < dm; ++c) x(r, c) = kernel(r * dm + c, v);
    }
    basis.emplace_back(m, n, std::move(x));
  }
  return basis;
}

namespace {

Fiber fiber_unchecked(const CModule& m, Obj x) {
  const Matrix& e = m.idempotent(x);
  const Echelon ech = rref(e.transpose());
  Fiber f;
  f.dim = ech.pivots.size();
  f.basis = ech.reduced.block(0, 0, f.dim, m.dim()).transpose();
  // The basis has an identity block on the pivot rows, so selecting those
  // rows of e_x m gives its coordinates.
  Matrix select(f.dim, m.dim());
  for (std::size_t i = 0; i < f.dim; ++i) select(i, ech.pivots[i]) = 1;
  f.coords = select * e;
  return f;
}

std::vector<Fiber> all_fibers(const CModule& m) {
  std::vector<Fiber> out;
  for (Obj x = 0; x < m.groupoid()->object_count(); ++x) out.push_back(fiber_unchecked(m, x));
  return out;
}

void require_constant_rank(const CModule& m, const std::vector<Fiber>& fibers) {
  std::vector<std::size_t> ranks;
  for (const auto& f : fibers) ranks.push_back(f.dim);
  for (auto r : ranks) {
    if (r != ranks.front()) {
      throw NonConstantRankError(
          "module " + m.name() + " has non-constant rank " + rank_function_string(*m.groupoid(), ranks), ranks);
    }
  }
}

}  // namespace

std::string rank_function_string(const FiniteGroupoid& g, const std::vector<std::size_t>& ranks) {
  std::string out = "{";
  for (Obj x = 0; x < ranks.size(); ++x) {
    if (x) out += ", ";
    out += g.object_id(x) + ":" + std::to_string(ranks[x]);
  }
  return out + "}";
}

Fiber fiber(const CModule& m, Obj x) {
  require_valid(validate_module(m), "module " + m.name());
  if (x >= m.groupoid()->object_count()) throw PreconditionError("unknown object index");
  return fiber_unchecked(m, x);
}

std::size_t quotient_fiber_dim(const CModule& m, Obj x) {
  std::vector<Matrix> others;
  for (Obj y = 0; y < m.groupoid()->object_count(); ++y) {
    if (y != x) others.push_back(m.idempotent(y));
  }
  const std::size_t ideal_dim = others.empty() ? 0 : rank(hstack(others));
  return m.dim() - ideal_dim;
}

RankReport is_finite_type_constant_rank(const CModule& m) {
  require_valid(validate_module(m), "module " + m.name());
  const auto& G = *m.groupoid();
  const auto fibers = all_fibers(m);
  RankReport report;
  for (const auto& f : fibers) {
    report.rank_function.push_back(f.dim);
    report.embedding_rank = std::max(report.embedding_rank, f.dim);
  }
  report.constant_rank = true;
  for (auto r : report.rank_function) report.constant_rank = report.constant_rank && r == report.rank_function.front();

  const std::size_t k = report.embedding_rank;
  const std::size_t n_obj = G.object_count();
  Matrix embedding(n_obj * k, m.dim());
  for (Obj x = 0; x < n_obj; ++x) {
    for (std::size_t i = 0; i < fibers[x].dim; ++i) {
      for (std::size_t c = 0; c < m.dim(); ++c) embedding(x * k + i, c) = fibers[x].coords(i, c);
    }
  }
  bool linear_over_base = true;
  for (Obj x = 0; x < n_obj && linear_over_base; ++x) {
    Matrix block_projection(n_obj * k, n_obj * k);
    for (std::size_t i = 0; i < k; ++i) block_projection(x * k + i, x * k + i) = 1;
    linear_over_base = embedding * m.idempotent(x) == block_projection * embedding;
  }
  report.finite_type = linear_over_base && rank(embedding) == m.dim();
  report.embedding = std::move(embedding);
  return report;
}

CModule gamma(const Representation& e) {
  const auto& G = *e.groupoid();
  const std::size_t k = e.rank();
  const std::size_t n = k * G.object_count();
  std::vector<Matrix> act;
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    Matrix m(n, n);
    const Matrix& r = e.rho(g);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(G.tgt(g) * k + i, G.src(g) * k + j) = r(i, j);
    }
    act.push_back(std::move(m));
  }
  return {e.groupoid(), n, std::move(act), "Gamma(" + e.name() + ")"};
}

ModuleMorphism gamma_mor(const RepMorphism& phi) {
  return {gamma(phi.source()), gamma(phi.target()), block_diagonal(phi.components())};
}

Representation reconstruct(const CModule& m) {
  require_valid(validate_module(m), "module " + m.name());
  const auto& G = *m.groupoid();
  const auto fibers = all_fibers(m);
  require_constant_rank(m, fibers);
  const std::size_t k = fibers.empty() ? 0 : fibers.front().dim;
  std::vector<Matrix> rho;
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    rho.push_back(fibers[G.tgt(g)].coords * m.act(g) * fibers[G.src(g)].basis);
  }
  return {m.groupoid(), k, std::move(rho), "R(" + m.name() + ")"};
}

RepMorphism reconstruct_mor(const ModuleMorphism& f) {
  const Representation source = reconstruct(f.source());
  const Representation target = reconstruct(f.target());
  const auto fs = all_fibers(f.source());
  const auto ft = all_fibers(f.target());
  std::vector<Matrix> phi;
  for (Obj x = 0; x < fs.size(); ++x) phi.push_back(ft[x].coords * f.map() * fs[x].basis);
  return {source, target, std::move(phi)};
}

ModuleMorphism epsilon(const CModule& m) {
  const Representation r = reconstruct(m);
  std::vector<Matrix> rows;
  for (const auto& f : all_fibers(m)) rows.push_back(f.coords);
  Matrix map = rows.empty() ? Matrix(0, m.dim()) : vstack(rows);
  if (map.rows() == 0) map = Matrix(0, m.dim());
  return {m, gamma(r), std::move(map)};
}

RepMorphism eta(const Representation& e) {
  const CModule sections = gamma(e);
  const Representation rebuilt = reconstruct(sections);
  const auto& G = *e.groupoid();
  const std::size_t k = e.rank();
  std::vector<Matrix> phi;
  for (Obj x = 0; x < G.object_count(); ++x) {
    const Fiber f = fiber_unchecked(sections, x);
    phi.push_back(f.basis.block(x * k, 0, k, f.dim));
  }
  return {rebuilt, e, std::move(phi)};
}

CheckReport check_serre_swan(const GroupoidPtr& g, const std::vector<Representation>& reps,
                             const std::vector<CModule>& modules) {
  CheckReport report;
  std::vector<bool> usable(reps.size(), false);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& e = reps[i];
    const std::string tag = e.name().empty() ? "rep#" + std::to_string(i) : e.name();
    if (!same_groupoid(e.groupoid(), g)) {
      report.add("witness " + tag + " over " + g->name(), false, "lives over " + e.groupoid()->name());
      continue;
    }
    auto violations = validate_rep(e);
    if (!violations.empty()) {
      report.add("witness " + tag + " valid", false, describe(violations));
      continue;
    }
    usable[i] = true;
    const RepMorphism h = eta(e);
    const bool eta_ok = validate_rep_morphism(h).empty() && is_isomorphism(h);
    report.add("eta iso: " + tag, eta_ok);
    const CModule sections = gamma(e);
    const auto ranks = is_finite_type_constant_rank(sections);
    report.add("Gamma constant rank: " + tag,
               ranks.finite_type && ranks.constant_rank &&
                   (ranks.rank_function.empty() || ranks.rank_function.front() == e.rank()),
               rank_function_string(*g, ranks.rank_function));
    const ModuleMorphism eps = epsilon(sections);
    report.add("epsilon iso: Gamma(" + tag + ")", validate_module_morphism(eps).empty() && is_isomorphism(eps));
  }

  for (std::size_t i = 0; i < modules.size(); ++i) {
    const auto& m = modules[i];
    const std::string tag = m.name().empty() ? "module#" + std::to_string(i) : m.name();
    if (!same_groupoid(m.groupoid(), g)) {
      report.add("witness " + tag + " over " + g->name(), false, "lives over " + m.groupoid()->name());
      continue;
    }
    auto violations = validate_module(m);
    if (!violations.empty()) {
      report.add("witness " + tag + " valid", false, describe(violations));
      continue;
    }
    const auto ranks = is_finite_type_constant_rank(m);
    if (!ranks.constant_rank) {
      report.add("out of scope (non-constant rank): " + tag, true, rank_function_string(*g, ranks.rank_function));
      continue;
    }
    const ModuleMorphism eps = epsilon(m);
    report.add("epsilon iso: " + tag, validate_module_morphism(eps).empty() && is_isomorphism(eps));
  }

  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if (!usable[i] || !usable[j]) continue;
      const auto& e = reps[i];
      const auto& f = reps[j];
      const auto hom = intertwiner_space(e, f);
      const auto module_hom = module_hom_space(gamma(e), gamma(f));
      std::vector<Matrix> images;
      for (const auto& phi : hom) {
        const Matrix m = gamma_mor(phi).map();
        images.emplace_back(m.rows() * m.cols(), 1, m.entries());
      }
      const bool injective = images.empty() || rank(hstack(images)) == images.size();
      const std::string pair = e.name() + " -> " + f.name();
      report.add("fully faithful: " + pair, injective && hom.size() == module_hom.size(),
                 "dim Hom = " + std::to_string(hom.size()) + ", dim Hom(Gamma) = " + std::to_string(module_hom.size()));

      bool natural = true;
      const RepMorphism eta_e = eta(e);
      const RepMorphism eta_f = eta(f);
      for (const auto& phi : hom) {
        natural = natural && compose(phi, eta_e) == compose(eta_f, reconstruct_mor(gamma_mor(phi)));
      }
      report.add("eta natural: " + pair, natural);
    }
  }
  return report;
}

}  // namespace grpd
