#include "grpd/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "grpd/error.hpp"

namespace grpd {

namespace {

std::string pair_witness(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }

// Index tables derived from raw data. `ok` is false when identifiers are
// duplicated or unknown, in which case nothing else is meaningful.
struct Indexed {
  bool ok = true;
  std::vector<std::string> objects;
  std::vector<std::string> arrows;
  std::map<std::string, std::size_t> object_index;
  std::map<std::string, std::size_t> arrow_index;
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;
  std::vector<std::optional<std::size_t>> compose;
  std::vector<std::optional<std::size_t>> identity;
  std::vector<std::optional<std::size_t>> inverse;
};

Indexed index_tables(const GroupoidTables& t, ValidationReport& report) {
  Indexed ix;
  ix.objects = t.objects;
  std::sort(ix.objects.begin(), ix.objects.end());
  for (std::size_t k = 1; k < ix.objects.size(); ++k) {
    if (ix.objects[k] == ix.objects[k - 1]) {
      report.push_back({"duplicate identifier", "object " + ix.objects[k]});
      ix.ok = false;
    }
  }
  for (std::size_t k = 0; k < ix.objects.size(); ++k) ix.object_index[ix.objects[k]] = k;

  std::vector<ArrowSpec> arrows = t.arrows;
  std::sort(arrows.begin(), arrows.end(), [](const ArrowSpec& a, const ArrowSpec& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    if (k > 0 && arrows[k].id == arrows[k - 1].id) {
      report.push_back({"duplicate identifier", "arrow " + arrows[k].id});
      ix.ok = false;
    }
    ix.arrows.push_back(arrows[k].id);
    ix.arrow_index[arrows[k].id] = k;
    auto s = ix.object_index.find(arrows[k].src);
    auto d = ix.object_index.find(arrows[k].tgt);
    if (s == ix.object_index.end() || d == ix.object_index.end()) {
      report.push_back({"unknown identifier", "endpoint of arrow " + arrows[k].id});
      ix.ok = false;
      ix.src.push_back(0);
      ix.tgt.push_back(0);
      continue;
    }
    ix.src.push_back(s->second);
    ix.tgt.push_back(d->second);
  }
  if (!ix.ok) return ix;

  const std::size_t n = ix.arrows.size();
  ix.compose.assign(n * n, std::nullopt);
  auto arrow_of = [&](const std::string& id, const std::string& context) -> std::optional<std::size_t> {
    auto it = ix.arrow_index.find(id);
    if (it == ix.arrow_index.end()) {
      report.push_back({"unknown identifier", "arrow " + id + " in " + context});
      ix.ok = false;
      return std::nullopt;
    }
    return it->second;
  };
  for (const auto& [a, b, c] : t.compose) {
    auto ia = arrow_of(a, "compose");
    auto ib = arrow_of(b, "compose");
    auto ic = arrow_of(c, "compose");
    if (!ia || !ib || !ic) continue;
    auto& slot = ix.compose[*ia * n + *ib];
    if (slot && *slot != *ic) {
      report.push_back({"composition not a function", pair_witness(a, b)});
    }
    slot = *ic;
  }
  ix.identity.assign(ix.objects.size(), std::nullopt);
  for (const auto& [x, g] : t.identity) {
    auto ox = ix.object_index.find(x);
    if (ox == ix.object_index.end()) {
      report.push_back({"unknown identifier", "object " + x + " in identity"});
      ix.ok = false;
      continue;
    }
    if (auto ig = arrow_of(g, "identity")) ix.identity[ox->second] = *ig;
  }
  ix.inverse.assign(n, std::nullopt);
  for (const auto& [g, h] : t.inverse) {
    auto ig = arrow_of(g, "inverse");
    auto ih = arrow_of(h, "inverse");
    if (ig && ih) ix.inverse[*ig] = *ih;
  }
  return ix;
}

void check_axioms(const Indexed& ix, ValidationReport& report) {
  const std::size_t n = ix.arrows.size();
  const auto& id = ix.arrows;
  bool composition_ok = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const bool composable = ix.src[a] == ix.tgt[b];
      const auto& c = ix.compose[a * n + b];
      if (composable && !c) {
        report.push_back({"composition not total", pair_witness(id[a], id[b])});
        composition_ok = false;
      } else if (!composable && c) {
        report.push_back({"composition on non-composable pair", pair_witness(id[a], id[b])});
        composition_ok = false;
      } else if (c && (ix.src[*c] != ix.src[b] || ix.tgt[*c] != ix.tgt[a])) {
        report.push_back({"composition endpoints", pair_witness(id[a], id[b]) + " -> " + id[*c]});
        composition_ok = false;
      }
    }
  }
  if (composition_ok) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const auto& ab = ix.compose[a * n + b];
        if (!ab) continue;
        for (std::size_t c = 0; c < n; ++c) {
          const auto& bc = ix.compose[b * n + c];
          if (!bc) continue;
          if (ix.compose[*ab * n + c] != ix.compose[a * n + *bc]) {
            report.push_back({"associativity", "(" + id[a] + ", " + id[b] + ", " + id[c] + ")"});
          }
        }
      }
    }
  }

  for (std::size_t x = 0; x < ix.objects.size(); ++x) {
    const auto& e = ix.identity[x];
    if (!e) {
      report.push_back({"identity missing", ix.objects[x]});
      continue;
    }
    if (ix.src[*e] != x || ix.tgt[*e] != x) {
      report.push_back({"identity endpoints", ix.objects[x] + " -> " + id[*e]});
      continue;
    }
    if (!composition_ok) continue;
    for (std::size_t g = 0; g < n; ++g) {
      if (ix.tgt[g] == x && ix.compose[*e * n + g] != g) {
        report.push_back({"unit law", pair_witness(id[*e], id[g])});
      }
      if (ix.src[g] == x && ix.compose[g * n + *e] != g) {
        report.push_back({"unit law", pair_witness(id[g], id[*e])});
      }
    }
  }

  for (std::size_t g = 0; g < n; ++g) {
    const auto& h = ix.inverse[g];
    if (!h) {
      report.push_back({"inverse missing", id[g]});
      continue;
    }
    const auto& e_t = ix.identity[ix.tgt[g]];
    const auto& e_s = ix.identity[ix.src[g]];
    const bool endpoints = ix.src[*h] == ix.tgt[g] && ix.tgt[*h] == ix.src[g];
    if (!endpoints || !composition_ok || ix.compose[g * n + *h] != e_t || ix.compose[*h * n + g] != e_s) {
      report.push_back({"inverse axiom", id[g]});
    }
  }
}

}  // namespace

ValidationReport validate_groupoid(const GroupoidTables& tables) {
  ValidationReport report;
  Indexed ix = index_tables(tables, report);
  if (ix.ok) check_axioms(ix, report);
  return report;
}

std::shared_ptr<const FiniteGroupoid> FiniteGroupoid::create(const GroupoidTables& tables) {
  ValidationReport report;
  Indexed ix = index_tables(tables, report);
  if (ix.ok) check_axioms(ix, report);
  require_valid(report, "groupoid " + tables.name);

  std::shared_ptr<FiniteGroupoid> g(new FiniteGroupoid());
  g->name_ = tables.name;
  g->objects_ = std::move(ix.objects);
  g->arrow_ids_ = std::move(ix.arrows);
  g->object_index_ = std::move(ix.object_index);
  g->arrow_index_ = std::move(ix.arrow_index);
  g->src_ = std::move(ix.src);
  g->tgt_ = std::move(ix.tgt);
  g->compose_ = std::move(ix.compose);
  for (const auto& e : ix.identity) g->identity_.push_back(*e);
  for (const auto& h : ix.inverse) g->inverse_.push_back(*h);
  return g;
}

Obj FiniteGroupoid::object(const std::string& id) const {
  auto x = find_object(id);
  if (!x) throw PreconditionError("unknown object " + id + " in groupoid " + name_);
  return *x;
}

Arrow FiniteGroupoid::arrow(const std::string& id) const {
  auto g = find_arrow(id);
  if (!g) throw PreconditionError("unknown arrow " + id + " in groupoid " + name_);
  return *g;
}

std::optional<Obj> FiniteGroupoid::find_object(const std::string& id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Arrow> FiniteGroupoid::find_arrow(const std::string& id) const {
  auto it = arrow_index_.find(id);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Arrow> FiniteGroupoid::compose(Arrow after, Arrow before) const {
  return compose_[after * arrow_count() + before];
}

std::vector<Arrow> FiniteGroupoid::hom(Obj x, Obj y) const {
  std::vector<Arrow> out;
  for (Arrow g = 0; g < arrow_count(); ++g) {
    if (src_[g] == x && tgt_[g] == y) out.push_back(g);
  }
  return out;
}

GroupoidTables FiniteGroupoid::tables() const {
  GroupoidTables t;
  t.name = name_;
  t.objects = objects_;
  const std::size_t n = arrow_count();
  for (Arrow g = 0; g < n; ++g) t.arrows.push_back({arrow_ids_[g], objects_[src_[g]], objects_[tgt_[g]]});
  for (Arrow a = 0; a < n; ++a) {
    for (Arrow b = 0; b < n; ++b) {
      if (auto c = compose_[a * n + b]) t.compose.push_back({arrow_ids_[a], arrow_ids_[b], arrow_ids_[*c]});
    }
  }
  for (Obj x = 0; x < object_count(); ++x) t.identity[objects_[x]] = arrow_ids_[identity_[x]];
  for (Arrow g = 0; g < n; ++g) t.inverse[arrow_ids_[g]] = arrow_ids_[inverse_[g]];
  return t;
}

bool FiniteGroupoid::same_structure(const FiniteGroupoid& o) const {
  return objects_ == o.objects_ && arrow_ids_ == o.arrow_ids_ && src_ == o.src_ && tgt_ == o.tgt_ &&
         compose_ == o.compose_ && identity_ == o.identity_ && inverse_ == o.inverse_;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

// --- groups and standard constructions -------------------------------------

void validate_group(const FiniteGroup& group) {
  const std::size_t n = group.elements.size();
  auto fail = [](const std::string& why) { throw PreconditionError("non-group multiplication table: " + why); };
  if (n == 0) fail("empty group");
  if (group.table.size() != n) fail("table has wrong number of rows");
  for (const auto& row : group.table) {
    if (row.size() != n) fail("table row has wrong length");
    for (auto v : row) {
      if (v >= n) fail("product outside the group");
    }
  }
  std::set<std::string> names(group.elements.begin(), group.elements.end());
  if (names.size() != n) fail("duplicate element names");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (group.table[group.table[a][b]][c] != group.table[a][group.table[b][c]]) {
          fail("not associative at (" + group.elements[a] + ", " + group.elements[b] + ", " + group.elements[c] + ")");
        }
      }
    }
  }
  const std::size_t e = group_identity(group);
  for (std::size_t a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (group.table[a][b] == e && group.table[b][a] == e) has_inverse = true;
    }
    if (!has_inverse) fail("element " + group.elements[a] + " has no inverse");
  }
}

std::size_t group_identity(const FiniteGroup& group) {
  const std::size_t n = group.elements.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool unit = true;
    for (std::size_t a = 0; a < n && unit; ++a) {
      unit = group.table.at(e).at(a) == a && group.table.at(a).at(e) == a;
    }
    if (unit) return e;
  }
  throw PreconditionError("non-group multiplication table: no identity element");
}

FiniteGroup cyclic_group(std::size_t n) {
  FiniteGroup g;
  for (std::size_t k = 0; k < n; ++k) g.elements.push_back(k == 0 ? "e" : (n == 2 ? "s" : "r" + std::to_string(k)));
  g.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  }
  return g;
}

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  FiniteGroup g;
  for (const auto& p : perms) {
    std::string name;
    for (auto v : p) name += std::to_string(v);
    g.elements.push_back(name);
  }
  g.table.assign(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<std::size_t> ab(n);
      for (std::size_t k = 0; k < n; ++k) ab[k] = perms[a][perms[b][k]];
      g.table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
    }
  }
  return g;
}

std::vector<std::string> numbered_objects(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::to_string(k));
  return out;
}

namespace {

void add_inverse_and_identity(GroupoidTables& t) {
  // Derive identity and inverse tables from a complete compose table.
  std::map<std::pair<std::string, std::string>, std::string> comp;
  for (const auto& [a, b, c] : t.compose) comp[{a, b}] = c;
  std::map<std::string, const ArrowSpec*> spec;
  for (const auto& a : t.arrows) spec[a.id] = &a;
  for (const auto& a : t.arrows) {
    if (a.src == a.tgt) {
      auto it = comp.find({a.id, a.id});
      if (it != comp.end() && it->second == a.id) t.identity[a.src] = a.id;
    }
  }
  for (const auto& a : t.arrows) {
    for (const auto& b : t.arrows) {
      if (b.src == a.tgt && b.tgt == a.src) {
        auto it = comp.find({a.id, b.id});
        if (it != comp.end() && it->second == t.identity[a.tgt]) t.inverse[a.id] = b.id;
      }
    }
  }
}

}  // namespace

GroupoidPtr unit_groupoid(std::vector<std::string> objects, std::string name) {
  GroupoidTables t;
  t.name = std::move(name);
  t.objects = std::move(objects);
  for (const auto& x : t.objects) {
    std::string id = "1_" + x;
    t.arrows.push_back({id, x, x});
    t.compose.push_back({id, id, id});
    t.identity[x] = id;
    t.inverse[id] = id;
  }
  return FiniteGroupoid::create(t);
}

GroupoidPtr pair_groupoid(std::vector<std::string> objects, std::string name) {
  GroupoidTables t;
  t.name = std::move(name);
  t.objects = std::move(objects);
  auto id = [](const std::string& i, const std::string& j) { return "(" + i + "," + j + ")"; };
  for (const auto& i : t.objects) {
    for (const auto& j : t.objects) {
      t.arrows.push_back({id(i, j), j, i});
      t.inverse[id(i, j)] = id(j, i);
      for (const auto& k : t.objects) t.compose.push_back({id(i, j), id(j, k), id(i, k)});
    }
    t.identity[i] = id(i, i);
  }
  return FiniteGroupoid::create(t);
}

GroupoidPtr group_groupoid(FiniteGroup group, std::string name) {
  validate_group(group);
  GroupoidTables t;
  t.name = std::move(name);
  t.objects = {"*"};
  const std::size_t n = group.elements.size();
  for (std::size_t a = 0; a < n; ++a) {
    t.arrows.push_back({group.elements[a], "*", "*"});
    for (std::size_t b = 0; b < n; ++b) {
      t.compose.push_back({group.elements[a], group.elements[b], group.elements[group.table[a][b]]});
    }
  }
  add_inverse_and_identity(t);
  return FiniteGroupoid::create(t);
}

GroupoidPtr action_groupoid(FiniteGroup group, std::vector<std::string> objects,
                            std::vector<std::vector<std::size_t>> action, std::string name) {
  validate_group(group);
  const std::size_t n = group.elements.size();
  const std::size_t m = objects.size();
  if (action.size() != n) throw PreconditionError("action table needs one row per group element");
  for (std::size_t a = 0; a < n; ++a) {
    if (action[a].size() != m) throw PreconditionError("action row has wrong length");
    std::set<std::size_t> image(action[a].begin(), action[a].end());
    if (image.size() != m || *image.rbegin() >= m) {
      throw PreconditionError("action not by bijections: element " + group.elements[a]);
    }
  }
  const std::size_t e = group_identity(group);
  for (std::size_t x = 0; x < m; ++x) {
    if (action[e][x] != x) throw PreconditionError("action: identity moves " + objects[x]);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (action[group.table[a][b]][x] != action[a][action[b][x]]) {
          throw PreconditionError("action not compatible with the group law");
        }
      }
    }
  }

  GroupoidTables t;
  t.name = std::move(name);
  t.objects = objects;
  auto id = [&](std::size_t a, std::size_t x) { return "(" + group.elements[a] + "," + objects[x] + ")"; };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t x = 0; x < m; ++x) {
      t.arrows.push_back({id(a, x), objects[x], objects[action[a][x]]});
      // (b, a.x) after (a, x) = (ba, x)
      for (std::size_t b = 0; b < n; ++b) t.compose.push_back({id(b, action[a][x]), id(a, x), id(group.table[b][a], x)});
    }
  }
  add_inverse_and_identity(t);
  return FiniteGroupoid::create(t);
}

GroupoidPtr build_standard(const StandardParams& p) {
  switch (p.kind) {
    case StandardKind::unit: return unit_groupoid(p.objects, p.name);
    case StandardKind::pair: return pair_groupoid(p.objects, p.name);
    case StandardKind::group: return group_groupoid(p.group, p.name);
    case StandardKind::action: return action_groupoid(p.group, p.objects, p.action, p.name);
  }
  throw PreconditionError("unknown standard groupoid kind");
}

// --- structure queries -------------------------------------------------------

HomSet isotropy(const FiniteGroupoid& g, Obj x) {
  if (x >= g.object_count()) throw PreconditionError("unknown object index " + std::to_string(x));
  HomSet h{x, x, g.hom(x, x)};
  std::set<Arrow> members(h.arrows.begin(), h.arrows.end());
  if (!members.count(g.identity(x))) throw Error("isotropy group lacks the identity");
  for (Arrow a : h.arrows) {
    if (!members.count(g.inverse(a))) throw Error("isotropy group not closed under inverses");
    for (Arrow b : h.arrows) {
      if (!members.count(*g.compose(a, b))) throw Error("isotropy group not closed under composition");
    }
  }
  return h;
}

HomSet isotropy(const FiniteGroupoid& g, const std::string& x) { return isotropy(g, g.object(x)); }

std::vector<std::vector<Obj>> orbit_partition(const FiniteGroupoid& g) {
  std::vector<Obj> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Obj(Obj)> find = [&](Obj x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    Obj r1 = find(g.src(a));
    Obj r2 = find(g.tgt(a));
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }
  std::map<Obj, std::vector<Obj>> classes;
  for (Obj x = 0; x < g.object_count(); ++x) classes[find(x)].push_back(x);
  std::vector<std::vector<Obj>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  return out;
}

// --- functors ----------------------------------------------------------------

ValidationReport validate_functor(const GroupoidFunctor& f) {
  ValidationReport report;
  const auto& G = *f.source;
  const auto& H = *f.target;
  if (f.on_objects.size() != G.object_count() || f.on_arrows.size() != G.arrow_count()) {
    report.push_back({"functor not total", f.name});
    return report;
  }
  for (auto y : f.on_objects) {
    if (y >= H.object_count()) {
      report.push_back({"functor not total", "object image out of range"});
      return report;
    }
  }
  for (auto h : f.on_arrows) {
    if (h >= H.arrow_count()) {
      report.push_back({"functor not total", "arrow image out of range"});
      return report;
    }
  }
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    Arrow h = f.on_arrows[g];
    if (H.src(h) != f.on_objects[G.src(g)] || H.tgt(h) != f.on_objects[G.tgt(g)]) {
      report.push_back({"functor endpoints", G.arrow_id(g)});
    }
  }
  if (!report.empty()) return report;
  for (Obj x = 0; x < G.object_count(); ++x) {
    if (f.on_arrows[G.identity(x)] != H.identity(f.on_objects[x])) report.push_back({"functor identity", G.object_id(x)});
  }
  for (Arrow a = 0; a < G.arrow_count(); ++a) {
    for (Arrow b = 0; b < G.arrow_count(); ++b) {
      auto ab = G.compose(a, b);
      if (ab && f.on_arrows[*ab] != *H.compose(f.on_arrows[a], f.on_arrows[b])) {
        report.push_back({"functor composition", pair_witness(G.arrow_id(a), G.arrow_id(b))});
      }
    }
  }
  return report;
}

GroupoidFunctor identity_functor(const GroupoidPtr& g) {
  GroupoidFunctor f{"id_" + g->name(), g, g, {}, {}};
  for (Obj x = 0; x < g->object_count(); ++x) f.on_objects.push_back(x);
  for (Arrow a = 0; a < g->arrow_count(); ++a) f.on_arrows.push_back(a);
  return f;
}

}  // namespace grpd
