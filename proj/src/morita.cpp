#include "grpd/morita.hpp"

#include "grpd/error.hpp"

namespace grpd {

ValidationReport validate_bimodule(const Bimodule& b) {
  ValidationReport report;
  const auto& G = *b.left;
  const auto& H = *b.right;
  if (b.left_act.size() != G.arrow_count() || b.right_act.size() != H.arrow_count()) {
    report.push_back({"left action law", "one matrix per arrow is required"});
    return report;
  }
  for (const auto& m : b.left_act) {
    if (m.rows() != b.dim || m.cols() != b.dim) {
      report.push_back({"left action law", "matrix of the wrong shape"});
      return report;
    }
  }
  for (const auto& m : b.right_act) {
    if (m.rows() != b.dim || m.cols() != b.dim) {
      report.push_back({"right action law", "matrix of the wrong shape"});
      return report;
    }
  }
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    for (Arrow c = 0; c < G.arrow_count(); ++c) {
      const Matrix product = b.left_act[a] * b.left_act[c];
      auto ac = G.compose(a, c);
      if (ac ? !(product == b.left_act[*ac]) : !product.is_zero()) {
        report.push_back({"left action law", "(" + G.arrow_id(a) + ", " + G.arrow_id(c) + ")"});
      }
    }
  }
  for (Arrow a = 0; a < H.arrow_count(); ++a) {
    for (Arrow c = 0; c < H.arrow_count(); ++c) {
      const Matrix product = b.right_act[c] * b.right_act[a];
      auto ac = H.compose(a, c);
      if (ac ? !(product == b.right_act[*ac]) : !product.is_zero()) {
        report.push_back({"right action law", "(" + H.arrow_id(a) + ", " + H.arrow_id(c) + ")"});
      }
    }
  }
  Matrix left_sum(b.dim, b.dim);
  for (Obj x = 0; x < G.object_count(); ++x) left_sum = left_sum + b.left_act[G.identity(x)];
  if (!left_sum.is_identity()) report.push_back({"left nondegeneracy", "sum of e_x is not the identity"});
  Matrix right_sum(b.dim, b.dim);
  for (Obj y = 0; y < H.object_count(); ++y) right_sum = right_sum + b.right_act[H.identity(y)];
  if (!right_sum.is_identity()) report.push_back({"right nondegeneracy", "sum of e_y is not the identity"});
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    for (Arrow h = 0; h < H.arrow_count(); ++h) {
      if (!(b.left_act[g] * b.right_act[h] == b.right_act[h] * b.left_act[g])) {
        report.push_back({"commutation", "(" + G.arrow_id(g) + ", " + H.arrow_id(h) + ")"});
      }
    }
  }
  return report;
}

Bimodule bimodule_of(const PrincipalBibundle& p) {
  const std::size_t n = p.point_count();
  Bimodule b{p.left(), p.right(), n, {}, {}, "C(" + p.name() + ")"};
  for (Arrow g = 0; g < p.left()->arrow_count(); ++g) {
    Matrix m(n, n);
    for (Point a = 0; a < n; ++a) {
      if (auto ga = p.act_left(g, a)) m(*ga, a) = 1;
    }
    b.left_act.push_back(std::move(m));
  }
  for (Arrow h = 0; h < p.right()->arrow_count(); ++h) {
    Matrix m(n, n);
    for (Point a = 0; a < n; ++a) {
      if (auto ah = p.act_right(a, h)) m(*ah, a) = 1;
    }
    b.right_act.push_back(std::move(m));
  }
  return b;
}

namespace {

BalancedTensor balance(std::size_t dv, const std::vector<Matrix>& v_left, const std::vector<Matrix>& v_right,
                       std::size_t dw, const std::vector<Matrix>& w_left, const std::vector<Matrix>& w_right) {
  BalancedTensor t;
  const std::size_t n = dv * dw;
  t.unreduced_dim = n;
  const Matrix iv = Matrix::identity(dv);
  const Matrix iw = Matrix::identity(dw);
  std::vector<Matrix> parts;
  for (std::size_t h = 0; h < v_right.size(); ++h) parts.push_back(kron(v_right[h], iw) - kron(iv, w_left[h]));
  t.relations = parts.empty() ? Matrix(n, 0) : hstack(parts);

  if (n == 0) {
    t.projection = Matrix(0, 0);
    t.section = Matrix(0, 0);
  } else {
    const Matrix annihilator = kernel_basis(t.relations.transpose());
    t.dim = annihilator.cols();
    const Echelon ech = rref(annihilator.transpose());
    t.projection = ech.reduced.block(0, 0, t.dim, n);
    t.section = Matrix(n, t.dim);
    for (std::size_t i = 0; i < t.dim; ++i) t.section(ech.pivots[i], i) = 1;
  }
  for (const auto& l : v_left) t.left_act.push_back(t.projection * kron(l, iw) * t.section);
  for (const auto& r : w_right) t.right_act.push_back(t.projection * kron(iv, r) * t.section);
  return t;
}

void require_middle(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (!same_groupoid(a, b)) {
    throw PreconditionError("balanced tensor over mismatched algebras C(" + a->name() + ") and C(" + b->name() + ")");
  }
}

}  // namespace

BalancedTensor balanced_tensor(const Bimodule& v, const Bimodule& w) {
  require_middle(v.right, w.left);
  return balance(v.dim, v.left_act, v.right_act, w.dim, w.left_act, w.right_act);
}

BalancedTensor balanced_tensor(const Bimodule& v, const CModule& w) {
  require_middle(v.right, w.groupoid());
  return balance(v.dim, v.left_act, v.right_act, w.dim(), w.acts(), {});
}

Matrix point_map_matrix(const EquivariantMap& f) {
  Matrix m(f.target.point_count(), f.source.point_count());
  for (Point p = 0; p < f.map.size(); ++p) m(f.map[p], p) = 1;
  return m;
}

Omega omega(const PrincipalBibundle& p, const PrincipalBibundle& q) {
  const TensorProduct t = tensor(p, q);
  BalancedTensor source = balanced_tensor(bimodule_of(p), bimodule_of(q));
  Matrix full(t.bundle.point_count(), p.point_count() * q.point_count());
  for (const auto& [pair, c] : t.class_of) full(c, pair.first * q.point_count() + pair.second) = 1;
  Matrix map = full * source.section;
  return {std::move(source), bimodule_of(t.bundle), std::move(full), std::move(map)};
}

CheckReport check_omega(const PrincipalBibundle& p, const PrincipalBibundle& q) {
  CheckReport report;
  const Omega o = omega(p, q);
  const std::string tag = p.name() + ", " + q.name();
  report.add("Omega well-defined: " + tag, (o.full * o.source.relations).is_zero());
  report.add("Omega invertible: " + tag, is_invertible(o.map),
             std::to_string(o.source.dim) + " -> " + std::to_string(o.target.dim));
  bool left = true;
  for (Arrow g = 0; g < o.target.left_act.size(); ++g) {
    left = left && o.map * o.source.left_act[g] == o.target.left_act[g] * o.map;
  }
  report.add("Omega left intertwining: " + tag, left);
  bool right = true;
  for (Arrow k = 0; k < o.target.right_act.size(); ++k) {
    right = right && o.map * o.source.right_act[k] == o.target.right_act[k] * o.map;
  }
  report.add("Omega right intertwining: " + tag, right);
  return report;
}

CheckReport check_omega_associativity(const PrincipalBibundle& p, const PrincipalBibundle& q,
                                      const PrincipalBibundle& r) {
  CheckReport report;
  const PrincipalBibundle pq = compose_bibundles(p, q);
  const PrincipalBibundle qr = compose_bibundles(q, r);
  const Matrix a = point_map_matrix(associator(p, q, r));
  const Matrix lhs = a * omega(pq, r).full * kron(omega(p, q).full, Matrix::identity(r.point_count()));
  const Matrix rhs = omega(p, qr).full * kron(Matrix::identity(p.point_count()), omega(q, r).full);
  report.add("Omega associativity: " + p.name() + ", " + q.name() + ", " + r.name(), lhs == rhs);
  return report;
}

CheckReport check_omega_units(const PrincipalBibundle& p) {
  CheckReport report;
  const std::size_t n = p.point_count();
  const PrincipalBibundle g = identity_bibundle(p.left());
  const PrincipalBibundle h = identity_bibundle(p.right());

  Matrix right_action(n, n * h.point_count());
  for (Point a = 0; a < n; ++a) {
    for (Arrow k = 0; k < h.point_count(); ++k) {
      if (auto ak = p.act_right(a, k)) right_action(*ak, a * h.point_count() + k) = 1;
    }
  }
  report.add("right unit coherence: " + p.name(),
             point_map_matrix(right_unitor(p)) * omega(p, h).full == right_action);

  Matrix left_action(n, g.point_count() * n);
  for (Arrow k = 0; k < g.point_count(); ++k) {
    for (Point a = 0; a < n; ++a) {
      if (auto ka = p.act_left(k, a)) left_action(*ka, k * n + a) = 1;
    }
  }
  report.add("left unit coherence: " + p.name(), point_map_matrix(left_unitor(p)) * omega(g, p).full == left_action);
  return report;
}

namespace {

void require_constant_rank_module(const CModule& m, const std::string& what) {
  const RankReport r = is_finite_type_constant_rank(m);
  if (!r.finite_type || !r.constant_rank) {
    throw PreconditionError(what + " " + m.name() + " is not of finite type and constant rank: " +
                            rank_function_string(*m.groupoid(), r.rank_function));
  }
}

BalancedTensor mod_tensor(const PrincipalBibundle& p, const CModule& m) {
  require_valid(validate_bibundle(p), "bibundle " + p.name());
  require_constant_rank_module(m, "module");
  return balanced_tensor(bimodule_of(p), m);
}

CModule module_of(const PrincipalBibundle& p, const CModule& m, const BalancedTensor& t) {
  CModule out(p.left(), t.dim, t.left_act, "Mod(" + p.name() + ")(" + m.name() + ")");
  const RankReport r = is_finite_type_constant_rank(out);
  if (!r.finite_type || !r.constant_rank) {
    throw Error("finding: " + out.name() + " is not of finite type and constant rank");
  }
  return out;
}

}  // namespace

CModule mod_functor(const PrincipalBibundle& p, const CModule& m) { return module_of(p, m, mod_tensor(p, m)); }

ModuleMorphism mod_functor_mor(const PrincipalBibundle& p, const ModuleMorphism& f) {
  const BalancedTensor s = mod_tensor(p, f.source());
  const BalancedTensor t = mod_tensor(p, f.target());
  Matrix map = t.projection * kron(Matrix::identity(p.point_count()), f.map()) * s.section;
  return {module_of(p, f.source(), s), module_of(p, f.target(), t), std::move(map)};
}

namespace {

struct ModComposition {
  ModuleMorphism morphism;
  bool inner_well_defined;
  bool outer_well_defined;
};

ModComposition build_mod_composition(const PrincipalBibundle& p, const PrincipalBibundle& q, const CModule& m) {
  const BalancedTensor inner_q = mod_tensor(q, m);
  const CModule qm = module_of(q, m, inner_q);
  const BalancedTensor outer = mod_tensor(p, qm);
  const CModule source = module_of(p, qm, outer);

  const PrincipalBibundle pq = compose_bibundles(p, q);
  const BalancedTensor target_tensor = mod_tensor(pq, m);
  const CModule target = module_of(pq, m, target_tensor);

  const Matrix via_omega = target_tensor.projection * kron(omega(p, q).full, Matrix::identity(m.dim()));
  const Matrix ip = Matrix::identity(p.point_count());
  const bool inner_ok = (via_omega * kron(ip, inner_q.relations)).is_zero();
  const Matrix lifted = via_omega * kron(ip, inner_q.section);
  const bool outer_ok = (lifted * outer.relations).is_zero();
  return {ModuleMorphism(source, target, lifted * outer.section), inner_ok, outer_ok};
}

}  // namespace

ModuleMorphism mod_composition(const PrincipalBibundle& p, const PrincipalBibundle& q, const CModule& m) {
  return build_mod_composition(p, q, m).morphism;
}

CheckReport check_mod_composition(const PrincipalBibundle& p, const PrincipalBibundle& q, const CModule& m) {
  CheckReport report;
  const ModComposition c = build_mod_composition(p, q, m);
  const std::string tag = p.name() + ", " + q.name() + ", " + m.name();
  report.add("Mod composition well-defined: " + tag, c.inner_well_defined && c.outer_well_defined);
  report.add("Mod composition intertwining: " + tag, validate_module_morphism(c.morphism).empty());
  report.add("Mod composition invertible: " + tag, is_isomorphism(c.morphism));
  return report;
}

namespace {

struct SigmaData {
  BalancedTensor tensor;
  Matrix full;
  ModuleMorphism morphism;
};

SigmaData build_sigma(const PrincipalBibundle& p, const Representation& e) {
  const CModule sections = gamma(e);
  BalancedTensor t = mod_tensor(p, sections);
  const CModule source = module_of(p, sections, t);
  const Representation pulled = pullback_rep(p, e);
  const CModule target = gamma(pulled);
  const auto section = canonical_section(p);
  const std::size_t k = e.rank();
  const std::size_t width = sections.dim();
  Matrix full(target.dim(), p.point_count() * width);
  for (Point a = 0; a < p.point_count(); ++a) {
    const Matrix transport = e.rho(division(p, section[p.pi(a)], a));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) full(p.pi(a) * k + i, a * width + p.phi(a) * k + j) = transport(i, j);
    }
  }
  Matrix map = full * t.section;
  return {std::move(t), std::move(full), ModuleMorphism(source, target, std::move(map))};
}

}  // namespace

ModuleMorphism sigma(const PrincipalBibundle& p, const Representation& e) { return build_sigma(p, e).morphism; }

CheckReport check_sigma(const PrincipalBibundle& p, const Representation& e) {
  CheckReport report;
  const SigmaData s = build_sigma(p, e);
  const std::string tag = p.name() + ", " + e.name();
  report.add("sigma well-defined: " + tag, (s.full * s.tensor.relations).is_zero());
  report.add("sigma intertwining: " + tag, validate_module_morphism(s.morphism).empty());
  report.add("sigma invertible: " + tag, is_isomorphism(s.morphism),
             std::to_string(s.morphism.source().dim()) + " -> " + std::to_string(s.morphism.target().dim()));
  return report;
}

ModuleMorphism functor_sigma(const GroupoidFunctor& psi, const Representation& e) {
  const PrincipalBibundle p = bundle_from_functor(psi);
  const CModule sections = gamma(e);
  const BalancedTensor t = mod_tensor(p, sections);
  const CModule target = gamma(functor_pullback(psi, e));
  const auto& G = *psi.source;
  const auto& H = *psi.target;
  const std::size_t k = e.rank();
  const std::size_t width = sections.dim();
  Matrix full(target.dim(), p.point_count() * width);
  for (Obj x = 0; x < G.object_count(); ++x) {
    for (Arrow h = 0; h < H.arrow_count(); ++h) {
      auto a = p.find_point("(" + G.object_id(x) + "," + H.arrow_id(h) + ")");
      if (!a) continue;
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) full(x * k + i, *a * width + H.src(h) * k + j) = e.rho(h)(i, j);
      }
    }
  }
  return {module_of(p, sections, t), target, full * t.section};
}

CheckReport check_natural_square(const PrincipalBibundle& p, const RepMorphism& phi) {
  CheckReport report;
  const ModuleMorphism top = sigma(p, phi.target());
  const ModuleMorphism bottom = sigma(p, phi.source());
  const Matrix lhs = top.map() * mod_functor_mor(p, gamma_mor(phi)).map();
  const Matrix rhs = gamma_mor(pullback_rep_mor(p, phi)).map() * bottom.map();
  const bool ok = lhs == rhs;
  report.add("natural square: " + p.name() + ", " + phi.source().name() + " -> " + phi.target().name(), ok,
             ok ? std::nullopt : std::optional<std::string>("lhs " + lhs.to_string() + " rhs " + rhs.to_string()));
  return report;
}

}  // namespace grpd
