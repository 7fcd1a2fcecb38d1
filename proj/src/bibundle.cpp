#include "grpd/bibundle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "grpd/error.hpp"

namespace grpd {

PrincipalBibundle::PrincipalBibundle(GroupoidPtr left, GroupoidPtr right, std::string name,
                                     std::vector<std::string> points, std::vector<Obj> pi, std::vector<Obj> phi,
                                     std::vector<std::optional<Point>> lact, std::vector<std::optional<Point>> ract)
    : left_(std::move(left)), right_(std::move(right)), name_(std::move(name)) {
  const std::size_t n = points.size();
  const std::size_t ng = left_->arrow_count();
  const std::size_t nh = right_->arrow_count();
  if (pi.size() != n || phi.size() != n || lact.size() != ng * n || ract.size() != n * nh) {
    throw DimensionError("bibundle " + name_ + ": table sizes do not match the point count");
  }
  std::vector<Point> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Point a, Point b) { return points[a] < points[b]; });
  std::vector<Point> rank_of(n);
  for (Point k = 0; k < n; ++k) rank_of[order[k]] = k;

  for (Point k = 0; k < n; ++k) {
    const auto& id = points[order[k]];
    if (!index_.emplace(id, k).second) throw PreconditionError("bibundle " + name_ + ": duplicate point " + id);
    points_.push_back(id);
    if (pi[order[k]] >= left_->object_count() || phi[order[k]] >= right_->object_count()) {
      throw PreconditionError("bibundle " + name_ + ": anchor of " + id + " out of range");
    }
    pi_.push_back(pi[order[k]]);
    phi_.push_back(phi[order[k]]);
  }
  auto remap = [&](const std::optional<Point>& q) -> std::optional<Point> {
    if (!q) return std::nullopt;
    if (*q >= n) throw PreconditionError("bibundle " + name_ + ": action result out of range");
    return rank_of[*q];
  };
  lact_.assign(ng * n, std::nullopt);
  ract_.assign(n * nh, std::nullopt);
  for (Arrow g = 0; g < ng; ++g) {
    for (Point p = 0; p < n; ++p) lact_[g * n + rank_of[p]] = remap(lact[g * n + p]);
  }
  for (Point p = 0; p < n; ++p) {
    for (Arrow h = 0; h < nh; ++h) ract_[rank_of[p] * nh + h] = remap(ract[p * nh + h]);
  }
}

namespace {

PrincipalBibundle from_tables(const GroupoidPtr& left, const GroupoidPtr& right, const BibundleTables& t) {
  const std::size_t n = t.points.size();
  std::map<std::string, Point> index;
  for (Point p = 0; p < n; ++p) {
    if (!index.emplace(t.points[p], p).second) {
      throw PreconditionError("bibundle " + t.name + ": duplicate point " + t.points[p]);
    }
  }
  auto point = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw PreconditionError("bibundle " + t.name + ": unknown point " + id);
    return it->second;
  };
  auto anchor = [&](const std::map<std::string, std::string>& m, const GroupoidPtr& g, const char* what) {
    std::vector<Obj> out(n);
    for (const auto& [key, value] : m) point(key);
    for (Point p = 0; p < n; ++p) {
      auto it = m.find(t.points[p]);
      if (it == m.end()) throw PreconditionError("bibundle " + t.name + ": " + what + " missing for " + t.points[p]);
      out[p] = g->object(it->second);
    }
    return out;
  };
  auto pi = anchor(t.pi, left, "pi");
  auto phi = anchor(t.phi, right, "phi");
  const std::size_t ng = left->arrow_count();
  const std::size_t nh = right->arrow_count();
  std::vector<std::optional<Point>> lact(ng * n);
  std::vector<std::optional<Point>> ract(n * nh);
  for (const auto& [g, p, q] : t.lact) {
    auto& slot = lact[left->arrow(g) * n + point(p)];
    if (slot && *slot != point(q)) {
      throw PreconditionError("bibundle " + t.name + ": left action listed twice for (" + g + ", " + p + ")");
    }
    slot = point(q);
  }
  for (const auto& [p, h, q] : t.ract) {
    auto& slot = ract[point(p) * nh + right->arrow(h)];
    if (slot && *slot != point(q)) {
      throw PreconditionError("bibundle " + t.name + ": right action listed twice for (" + p + ", " + h + ")");
    }
    slot = point(q);
  }
  return {left, right, t.name, t.points, std::move(pi), std::move(phi), std::move(lact), std::move(ract)};
}

}  // namespace

PrincipalBibundle::PrincipalBibundle(GroupoidPtr left, GroupoidPtr right, const BibundleTables& tables)
    : PrincipalBibundle(from_tables(left, right, tables)) {}

PrincipalBibundle PrincipalBibundle::renamed(std::string name) const {
  PrincipalBibundle copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Point PrincipalBibundle::point(const std::string& id) const {
  auto p = find_point(id);
  if (!p) throw PreconditionError("bibundle " + name_ + ": unknown point " + id);
  return *p;
}

std::optional<Point> PrincipalBibundle::find_point(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Point> PrincipalBibundle::pi_fiber(Obj x) const {
  std::vector<Point> out;
  for (Point p = 0; p < points_.size(); ++p) {
    if (pi_[p] == x) out.push_back(p);
  }
  return out;
}

std::vector<Point> PrincipalBibundle::phi_fiber(Obj y) const {
  std::vector<Point> out;
  for (Point p = 0; p < points_.size(); ++p) {
    if (phi_[p] == y) out.push_back(p);
  }
  return out;
}

BibundleTables PrincipalBibundle::tables() const {
  BibundleTables t;
  t.name = name_;
  t.points = points_;
  for (Point p = 0; p < points_.size(); ++p) {
    t.pi[points_[p]] = left_->object_id(pi_[p]);
    t.phi[points_[p]] = right_->object_id(phi_[p]);
  }
  for (Arrow g = 0; g < left_->arrow_count(); ++g) {
    for (Point p = 0; p < points_.size(); ++p) {
      if (auto q = act_left(g, p)) t.lact.push_back({left_->arrow_id(g), points_[p], points_[*q]});
    }
  }
  for (Point p = 0; p < points_.size(); ++p) {
    for (Arrow h = 0; h < right_->arrow_count(); ++h) {
      if (auto q = act_right(p, h)) t.ract.push_back({points_[p], right_->arrow_id(h), points_[*q]});
    }
  }
  return t;
}

bool operator==(const PrincipalBibundle& a, const PrincipalBibundle& b) {
  return same_groupoid(a.left_, b.left_) && same_groupoid(a.right_, b.right_) && a.points_ == b.points_ &&
         a.pi_ == b.pi_ && a.phi_ == b.phi_ && a.lact_ == b.lact_ && a.ract_ == b.ract_;
}

ValidationReport validate_bibundle(const PrincipalBibundle& b) {
  ValidationReport report;
  const auto& G = *b.left();
  const auto& H = *b.right();
  const std::size_t n = b.point_count();
  auto pid = [&](Point p) { return b.point_id(p); };
  auto pair = [](const std::string& a, const std::string& c) { return "(" + a + ", " + c + ")"; };

  bool domains_ok = true;
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    for (Point p = 0; p < n; ++p) {
      const bool should = G.src(g) == b.pi(p);
      if (should != b.act_left(g, p).has_value()) {
        report.push_back({"left action domain", pair(G.arrow_id(g), pid(p))});
        domains_ok = false;
      }
    }
  }
  for (Point p = 0; p < n; ++p) {
    for (Arrow h = 0; h < H.arrow_count(); ++h) {
      const bool should = H.tgt(h) == b.phi(p);
      if (should != b.act_right(p, h).has_value()) {
        report.push_back({"right action domain", pair(pid(p), H.arrow_id(h))});
        domains_ok = false;
      }
    }
  }

  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    for (Point p = 0; p < n; ++p) {
      auto q = b.act_left(g, p);
      if (!q) continue;
      if (b.pi(*q) != G.tgt(g)) report.push_back({"left action anchor", pair(G.arrow_id(g), pid(p))});
      if (b.phi(*q) != b.phi(p)) report.push_back({"invariance", "phi(" + G.arrow_id(g) + "." + pid(p) + ")"});
      if (G.is_identity(g) && *q != p) report.push_back({"left unit", pair(G.arrow_id(g), pid(p))});
      for (Arrow g2 = 0; g2 < G.arrow_count(); ++g2) {
        auto gg = G.compose(g2, g);
        if (!gg) continue;
        auto lhs = b.act_left(g2, *q);
        auto rhs = b.act_left(*gg, p);
        if (lhs != rhs) {
          report.push_back({"left associativity", "(" + G.arrow_id(g2) + ", " + G.arrow_id(g) + ", " + pid(p) + ")"});
        }
      }
      for (Arrow h = 0; h < H.arrow_count(); ++h) {
        auto ph = b.act_right(p, h);
        if (!ph) continue;
        auto lhs = b.act_left(g, *ph);
        auto rhs = b.act_right(*q, h);
        if (lhs != rhs) {
          report.push_back({"commutation", "(" + G.arrow_id(g) + ", " + pid(p) + ", " + H.arrow_id(h) + ")"});
        }
      }
    }
  }
  for (Point p = 0; p < n; ++p) {
    for (Arrow h = 0; h < H.arrow_count(); ++h) {
      auto q = b.act_right(p, h);
      if (!q) continue;
      if (b.phi(*q) != H.src(h)) report.push_back({"right action anchor", pair(pid(p), H.arrow_id(h))});
      if (b.pi(*q) != b.pi(p)) report.push_back({"invariance", "pi(" + pid(p) + "." + H.arrow_id(h) + ")"});
      if (H.is_identity(h) && *q != p) report.push_back({"right unit", pair(pid(p), H.arrow_id(h))});
      for (Arrow h2 = 0; h2 < H.arrow_count(); ++h2) {
        auto hh = H.compose(h, h2);
        if (!hh) continue;
        auto lhs = b.act_right(*q, h2);
        auto rhs = b.act_right(p, *hh);
        if (lhs != rhs) {
          report.push_back({"right associativity", "(" + pid(p) + ", " + H.arrow_id(h) + ", " + H.arrow_id(h2) + ")"});
        }
      }
    }
  }

  for (Obj x = 0; x < G.object_count(); ++x) {
    if (b.pi_fiber(x).empty()) report.push_back({"pi surjective", "empty fiber over " + G.object_id(x)});
  }

  if (domains_ok) {
    for (Point p = 0; p < n; ++p) {
      for (Point q = 0; q < n; ++q) {
        if (b.pi(p) != b.pi(q)) continue;
        std::size_t joins = 0;
        for (Arrow h = 0; h < H.arrow_count(); ++h) {
          if (b.act_right(p, h) == std::optional<Point>(q)) ++joins;
        }
        if (joins != 1) {
          report.push_back({"principality", pair(pid(p), pid(q)) + " joined by " + std::to_string(joins) + " arrows"});
        }
      }
    }
  } else {
    report.push_back({"principality", "action domains are inconsistent"});
  }
  return report;
}

PrincipalBibundle identity_bibundle(const GroupoidPtr& g) {
  const std::size_t n = g->arrow_count();
  std::vector<Obj> pi(n);
  std::vector<Obj> phi(n);
  std::vector<std::optional<Point>> lact(n * n);
  std::vector<std::optional<Point>> ract(n * n);
  for (Arrow p = 0; p < n; ++p) {
    pi[p] = g->tgt(p);
    phi[p] = g->src(p);
  }
  for (Arrow a = 0; a < n; ++a) {
    for (Arrow p = 0; p < n; ++p) {
      lact[a * n + p] = g->compose(a, p);
      ract[p * n + a] = g->compose(p, a);
    }
  }
  return {g, g, g->name(), g->arrow_ids(), std::move(pi), std::move(phi), std::move(lact), std::move(ract)};
}

namespace {

std::optional<Arrow> try_division(const PrincipalBibundle& b, Point p, Point q) {
  for (Arrow h = 0; h < b.right()->arrow_count(); ++h) {
    if (b.act_right(p, h) == std::optional<Point>(q)) return h;
  }
  return std::nullopt;
}

/// The g with g.q = p.
std::optional<Arrow> left_division(const PrincipalBibundle& b, Point q, Point p) {
  for (Arrow g = 0; g < b.left()->arrow_count(); ++g) {
    if (b.act_left(g, q) == std::optional<Point>(p)) return g;
  }
  return std::nullopt;
}

void require_bundle(const PrincipalBibundle& b) { require_valid(validate_bibundle(b), "bibundle " + b.name()); }

}  // namespace

Arrow division(const PrincipalBibundle& b, Point p, Point q) {
  if (p >= b.point_count() || q >= b.point_count()) throw PreconditionError("division: unknown point");
  if (b.pi(p) != b.pi(q)) {
    throw PreconditionError("division: " + b.point_id(p) + " and " + b.point_id(q) + " lie in different pi-fibers");
  }
  auto h = try_division(b, p, q);
  if (!h) throw PreconditionError("division: no arrow carries " + b.point_id(p) + " to " + b.point_id(q));
  return *h;
}

ValidationReport validate_equivariant_map(const EquivariantMap& f) {
  ValidationReport report;
  const auto& s = f.source;
  const auto& t = f.target;
  if (!same_groupoid(s.left(), t.left()) || !same_groupoid(s.right(), t.right())) {
    report.push_back({"anchors", "source and target live over different groupoids"});
    return report;
  }
  if (f.map.size() != s.point_count()) {
    report.push_back({"anchors", "map is not defined on every point"});
    return report;
  }
  for (Point p = 0; p < s.point_count(); ++p) {
    if (f.map[p] >= t.point_count()) {
      report.push_back({"anchors", s.point_id(p) + " maps outside the target"});
      return report;
    }
  }
  for (Point p = 0; p < s.point_count(); ++p) {
    const Point fp = f.map[p];
    if (t.pi(fp) != s.pi(p) || t.phi(fp) != s.phi(p)) report.push_back({"anchors", s.point_id(p)});
    for (Arrow g = 0; g < s.left()->arrow_count(); ++g) {
      auto gp = s.act_left(g, p);
      if (!gp) continue;
      if (t.act_left(g, fp) != std::optional<Point>(f.map[*gp])) {
        report.push_back({"left equivariance", "(" + s.left()->arrow_id(g) + ", " + s.point_id(p) + ")"});
      }
    }
    for (Arrow h = 0; h < s.right()->arrow_count(); ++h) {
      auto ph = s.act_right(p, h);
      if (!ph) continue;
      if (t.act_right(fp, h) != std::optional<Point>(f.map[*ph])) {
        report.push_back({"right equivariance", "(" + s.point_id(p) + ", " + s.right()->arrow_id(h) + ")"});
      }
    }
  }
  std::set<Point> image(f.map.begin(), f.map.end());
  if (image.size() != s.point_count() || s.point_count() != t.point_count()) {
    report.push_back({"bijectivity", std::to_string(image.size()) + " image points, target has " +
                                         std::to_string(t.point_count())});
  }
  return report;
}

EquivariantMap identity_map(const PrincipalBibundle& p) {
  std::vector<Point> map(p.point_count());
  std::iota(map.begin(), map.end(), 0);
  return {p, p, std::move(map)};
}

EquivariantMap compose(const EquivariantMap& after, const EquivariantMap& before) {
  if (!(after.source == before.target)) throw PreconditionError("equivariant maps are not composable");
  std::vector<Point> map;
  for (auto p : before.map) map.push_back(after.map.at(p));
  return {before.source, after.target, std::move(map)};
}

Point TensorProduct::cls(Point p, Point q) const {
  auto it = class_of.find({p, q});
  if (it == class_of.end()) throw PreconditionError("pair is not in the fibered product");
  return it->second;
}

TensorProduct tensor(const PrincipalBibundle& p, const PrincipalBibundle& q) {
  if (!same_groupoid(p.right(), q.left())) {
    throw PreconditionError("cannot compose " + p.name() + " with " + q.name() + ": " + p.right()->name() +
                            " is not " + q.left()->name());
  }
  require_bundle(p);
  require_bundle(q);
  const auto& H = *p.right();

  std::vector<std::pair<Point, Point>> reps;
  std::map<std::pair<Point, Point>, std::size_t> orbit;
  for (Point a = 0; a < p.point_count(); ++a) {
    for (Point b = 0; b < q.point_count(); ++b) {
      if (p.phi(a) != q.pi(b) || orbit.count({a, b})) continue;
      const std::size_t k = reps.size();
      reps.emplace_back(a, b);
      for (Arrow h = 0; h < H.arrow_count(); ++h) {
        if (H.tgt(h) != p.phi(a)) continue;
        orbit[{*p.act_right(a, h), *q.act_left(H.inverse(h), b)}] = k;
      }
    }
  }

  const std::size_t n = reps.size();
  const auto& G = *p.left();
  const auto& K = *q.right();
  std::vector<std::string> ids;
  std::vector<Obj> pi;
  std::vector<Obj> phi;
  for (const auto& [a, b] : reps) {
    ids.push_back("[" + p.point_id(a) + "," + q.point_id(b) + "]");
    pi.push_back(p.pi(a));
    phi.push_back(q.phi(b));
  }
  std::vector<std::optional<Point>> lact(G.arrow_count() * n);
  std::vector<std::optional<Point>> ract(n * K.arrow_count());
  for (std::size_t c = 0; c < n; ++c) {
    const auto [a, b] = reps[c];
    for (Arrow g = 0; g < G.arrow_count(); ++g) {
      if (auto ga = p.act_left(g, a)) lact[g * n + c] = orbit.at({*ga, b});
    }
    for (Arrow k = 0; k < K.arrow_count(); ++k) {
      if (auto bk = q.act_right(b, k)) ract[c * K.arrow_count() + k] = orbit.at({a, *bk});
    }
  }
  const std::string name = p.name() + "*" + q.name();
  PrincipalBibundle bundle(p.left(), q.right(), name, ids, std::move(pi), std::move(phi), std::move(lact),
                           std::move(ract));

  // Translate provisional orbit numbers into canonical point indices.
  std::vector<Point> canonical(n);
  for (std::size_t c = 0; c < n; ++c) canonical[c] = bundle.point(ids[c]);
  TensorProduct out{std::move(bundle), std::vector<std::pair<Point, Point>>(n), {}};
  for (std::size_t c = 0; c < n; ++c) out.representative[canonical[c]] = reps[c];
  for (const auto& [pair, c] : orbit) out.class_of[pair] = canonical[c];
  return out;
}

PrincipalBibundle compose_bibundles(const PrincipalBibundle& p, const PrincipalBibundle& q) {
  return tensor(p, q).bundle;
}

namespace {

EquivariantMap checked(EquivariantMap f, const std::string& what) {
  require_valid(validate_equivariant_map(f), what);
  return f;
}

}  // namespace

EquivariantMap left_unitor(const PrincipalBibundle& p) {
  const TensorProduct t = tensor(identity_bibundle(p.left()), p);
  std::vector<Point> map;
  for (const auto& [g, a] : t.representative) map.push_back(*p.act_left(g, a));
  return checked({t.bundle, p, std::move(map)}, "left unitor of " + p.name());
}

EquivariantMap right_unitor(const PrincipalBibundle& p) {
  const TensorProduct t = tensor(p, identity_bibundle(p.right()));
  std::vector<Point> map;
  for (const auto& [a, h] : t.representative) map.push_back(*p.act_right(a, h));
  return checked({t.bundle, p, std::move(map)}, "right unitor of " + p.name());
}

EquivariantMap associator(const PrincipalBibundle& p, const PrincipalBibundle& q, const PrincipalBibundle& r) {
  const TensorProduct pq = tensor(p, q);
  const TensorProduct pq_r = tensor(pq.bundle, r);
  const TensorProduct qr = tensor(q, r);
  const TensorProduct p_qr = tensor(p, qr.bundle);
  std::vector<std::optional<Point>> map(pq_r.bundle.point_count());
  // Every triple representative must land in the same class.
  for (const auto& [pair, c] : pq_r.class_of) {
    const auto [inner, z] = pair;
    for (const auto& [xy, d] : pq.class_of) {
      if (d != inner) continue;
      const Point image = p_qr.cls(xy.first, qr.cls(xy.second, z));
      if (map[c] && *map[c] != image) {
        throw PreconditionError("associator is not well defined on " + pq_r.bundle.point_id(c));
      }
      map[c] = image;
    }
  }
  std::vector<Point> points;
  for (auto m : map) points.push_back(m.value());
  return checked({pq_r.bundle, p_qr.bundle, std::move(points)},
                 "associator of " + p.name() + ", " + q.name() + ", " + r.name());
}

EquivariantMap tensor_maps(const EquivariantMap& f, const EquivariantMap& g) {
  const TensorProduct s = tensor(f.source, g.source);
  const TensorProduct t = tensor(f.target, g.target);
  std::vector<Point> map;
  for (const auto& [a, b] : s.representative) map.push_back(t.cls(f.map.at(a), g.map.at(b)));
  return checked({s.bundle, t.bundle, std::move(map)}, "tensor of equivariant maps");
}

CheckReport check_pentagon(const PrincipalBibundle& p, const PrincipalBibundle& q, const PrincipalBibundle& r,
                           const PrincipalBibundle& s) {
  CheckReport report;
  const PrincipalBibundle pq = compose_bibundles(p, q);
  const PrincipalBibundle qr = compose_bibundles(q, r);
  const PrincipalBibundle rs = compose_bibundles(r, s);
  const EquivariantMap direct = compose(associator(p, q, rs), associator(pq, r, s));
  const EquivariantMap around = compose(tensor_maps(identity_map(p), associator(q, r, s)),
                                        compose(associator(p, qr, s), tensor_maps(associator(p, q, r), identity_map(s))));
  const std::string chain = p.name() + ", " + q.name() + ", " + r.name() + ", " + s.name();
  report.add("pentagon: " + chain, direct == around,
             direct == around ? std::nullopt
                              : std::optional<std::string>("rebracketing paths differ on " +
                                                           std::to_string(direct.source.point_count()) + " points"));
  return report;
}

CheckReport check_triangle(const PrincipalBibundle& p, const PrincipalBibundle& q) {
  CheckReport report;
  const PrincipalBibundle h = identity_bibundle(p.right());
  const EquivariantMap lhs = tensor_maps(right_unitor(p), identity_map(q));
  const EquivariantMap rhs = compose(tensor_maps(identity_map(p), left_unitor(q)), associator(p, h, q));
  report.add("triangle: " + p.name() + ", " + q.name(), lhs == rhs);
  return report;
}

PrincipalBibundle opposite(const PrincipalBibundle& b) {
  require_bundle(b);
  const auto& G = *b.left();
  const auto& H = *b.right();
  const std::size_t n = b.point_count();
  std::vector<std::string> ids;
  std::vector<Obj> pi;
  std::vector<Obj> phi;
  for (Point p = 0; p < n; ++p) {
    ids.push_back("~" + b.point_id(p));
    pi.push_back(b.phi(p));
    phi.push_back(b.pi(p));
  }
  std::vector<std::optional<Point>> lact(H.arrow_count() * n);
  std::vector<std::optional<Point>> ract(n * G.arrow_count());
  for (Arrow h = 0; h < H.arrow_count(); ++h) {
    for (Point p = 0; p < n; ++p) lact[h * n + p] = b.act_right(p, H.inverse(h));
  }
  for (Point p = 0; p < n; ++p) {
    for (Arrow g = 0; g < G.arrow_count(); ++g) ract[p * G.arrow_count() + g] = b.act_left(G.inverse(g), p);
  }
  return {b.right(), b.left(), b.name() + "~", std::move(ids), std::move(pi), std::move(phi), std::move(lact),
          std::move(ract)};
}

MoritaCertificate is_morita_equivalence(const PrincipalBibundle& b) {
  require_bundle(b);
  MoritaCertificate cert;
  const auto& G = *b.left();
  const auto& H = *b.right();
  for (Obj y = 0; y < H.object_count(); ++y) {
    const auto fiber = b.phi_fiber(y);
    if (fiber.empty()) {
      cert.witness = "phi-fiber over " + H.object_id(y) + " is empty";
      return cert;
    }
    for (auto p : fiber) {
      for (auto q : fiber) {
        std::size_t joins = 0;
        for (Arrow g = 0; g < G.arrow_count(); ++g) {
          if (b.act_left(g, p) == std::optional<Point>(q)) ++joins;
        }
        if (joins != 1) {
          cert.witness = "phi-fiber over " + H.object_id(y) + ": (" + b.point_id(p) + ", " + b.point_id(q) +
                         ") joined by " + std::to_string(joins) + " arrows";
          return cert;
        }
      }
    }
  }

  const PrincipalBibundle inv = opposite(b);
  const TensorProduct left = tensor(b, inv);
  std::vector<Point> left_map;
  for (const auto& [p, q] : left.representative) left_map.push_back(left_division(b, q, p).value());
  const TensorProduct right = tensor(inv, b);
  std::vector<Point> right_map;
  for (const auto& [p, q] : right.representative) right_map.push_back(division(b, p, q));

  EquivariantMap lu{left.bundle, identity_bibundle(b.left()), std::move(left_map)};
  EquivariantMap ru{right.bundle, identity_bibundle(b.right()), std::move(right_map)};
  auto lv = validate_equivariant_map(lu);
  auto rv = validate_equivariant_map(ru);
  if (!lv.empty() || !rv.empty()) {
    cert.witness = "unit maps fail: " + describe(lv) + describe(rv);
    return cert;
  }
  cert.is_equivalence = true;
  cert.inverse = inv;
  cert.left_unit = std::move(lu);
  cert.right_unit = std::move(ru);
  return cert;
}

PrincipalBibundle bundle_from_functor(const GroupoidFunctor& psi) {
  require_valid(validate_functor(psi), "functor " + psi.name);
  const auto& G = *psi.source;
  const auto& H = *psi.target;
  std::vector<std::pair<Obj, Arrow>> pts;
  std::map<std::pair<Obj, Arrow>, Point> index;
  for (Obj x = 0; x < G.object_count(); ++x) {
    for (Arrow h = 0; h < H.arrow_count(); ++h) {
      if (H.tgt(h) == psi.on_objects[x]) {
        index[{x, h}] = pts.size();
        pts.emplace_back(x, h);
      }
    }
  }
  const std::size_t n = pts.size();
  std::vector<std::string> ids;
  std::vector<Obj> pi;
  std::vector<Obj> phi;
  for (const auto& [x, h] : pts) {
    ids.push_back("(" + G.object_id(x) + "," + H.arrow_id(h) + ")");
    pi.push_back(x);
    phi.push_back(H.src(h));
  }
  std::vector<std::optional<Point>> lact(G.arrow_count() * n);
  std::vector<std::optional<Point>> ract(n * H.arrow_count());
  for (Point p = 0; p < n; ++p) {
    const auto [x, h] = pts[p];
    for (Arrow g = 0; g < G.arrow_count(); ++g) {
      if (G.src(g) == x) lact[g * n + p] = index.at({G.tgt(g), *H.compose(psi.on_arrows[g], h)});
    }
    for (Arrow k = 0; k < H.arrow_count(); ++k) {
      if (H.tgt(k) == H.src(h)) ract[p * H.arrow_count() + k] = index.at({x, *H.compose(h, k)});
    }
  }
  const std::string name = psi.name.empty() ? "P(functor)" : "P(" + psi.name + ")";
  return {psi.source, psi.target, name, std::move(ids), std::move(pi), std::move(phi), std::move(lact),
          std::move(ract)};
}

std::vector<Point> canonical_section(const PrincipalBibundle& b) {
  std::vector<Point> section;
  for (Obj x = 0; x < b.left()->object_count(); ++x) {
    const auto fiber = b.pi_fiber(x);
    if (fiber.empty()) throw PreconditionError("bibundle " + b.name() + " has an empty pi-fiber");
    section.push_back(fiber.front());
  }
  return section;
}

namespace {

std::vector<Point> resolve_section(const PrincipalBibundle& b, const std::optional<std::vector<Point>>& section) {
  if (!section) return canonical_section(b);
  if (section->size() != b.left()->object_count()) throw PreconditionError("section needs one point per object");
  for (Obj x = 0; x < section->size(); ++x) {
    if ((*section)[x] >= b.point_count() || b.pi((*section)[x]) != x) {
      throw PreconditionError("section point over " + b.left()->object_id(x) + " lies in the wrong fiber");
    }
  }
  return *section;
}

}  // namespace

Representation pullback_rep(const PrincipalBibundle& b, const Representation& e,
                            const std::optional<std::vector<Point>>& section) {
  require_bundle(b);
  require_valid(validate_rep(e), "representation " + e.name());
  if (!same_groupoid(b.right(), e.groupoid())) {
    throw PreconditionError("representation " + e.name() + " does not live over " + b.right()->name());
  }
  const auto s = resolve_section(b, section);
  const auto& G = *b.left();
  std::vector<Matrix> rho;
  for (Arrow g = 0; g < G.arrow_count(); ++g) {
    const Point moved = *b.act_left(g, s[G.src(g)]);
    rho.push_back(e.rho(division(b, s[G.tgt(g)], moved)));
  }
  return {b.left(), e.rank(), std::move(rho), b.name() + "(" + e.name() + ")"};
}

RepMorphism pullback_rep_mor(const PrincipalBibundle& b, const RepMorphism& f,
                             const std::optional<std::vector<Point>>& section) {
  const Representation source = pullback_rep(b, f.source(), section);
  const Representation target = pullback_rep(b, f.target(), section);
  const auto s = resolve_section(b, section);
  std::vector<Matrix> phi;
  for (auto p : s) phi.push_back(f.at(b.phi(p)));
  return {source, target, std::move(phi)};
}

Representation functor_pullback(const GroupoidFunctor& psi, const Representation& e) {
  require_valid(validate_functor(psi), "functor " + psi.name);
  if (!same_groupoid(psi.target, e.groupoid())) throw PreconditionError("representation over the wrong groupoid");
  std::vector<Matrix> rho;
  for (auto h : psi.on_arrows) rho.push_back(e.rho(h));
  return {psi.source, e.rank(), std::move(rho), psi.name + "*" + e.name()};
}

RepMorphism functor_pullback_comparison(const GroupoidFunctor& psi, const Representation& e) {
  const PrincipalBibundle b = bundle_from_functor(psi);
  const Representation pulled = pullback_rep(b, e);
  const Representation classical = functor_pullback(psi, e);
  const auto section = canonical_section(b);
  std::vector<Matrix> phi;
  for (Obj x = 0; x < section.size(); ++x) {
    const std::string& id = b.point_id(section[x]);
    for (Arrow h = 0; h < psi.target->arrow_count(); ++h) {
      if ("(" + psi.source->object_id(x) + "," + psi.target->arrow_id(h) + ")" == id) phi.push_back(e.rho(h));
    }
  }
  return {pulled, classical, std::move(phi)};
}

}  // namespace grpd
