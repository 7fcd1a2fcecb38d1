#include "grpd/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace grpd::io {

namespace {

/// Raised while loading when a document refers to a parent that failed
/// validation.
struct InvalidParent : PreconditionError {
  explicit InvalidParent(const std::string& name) : PreconditionError(name + " failed validation"), parent(name) {}
  std::string parent;
};

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ParseError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(str(x, what));
  return out;
}

std::map<std::string, std::string> string_map(const Json& j, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = str(v, what);
  return out;
}

std::vector<std::array<std::string, 3>> triples(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::array<std::string, 3>> out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw ParseError(std::string(what) + " entries must be triples");
    out.push_back({str(t[0], what), str(t[1], what), str(t[2], what)});
  }
  return out;
}

std::vector<std::string> objects_param(const Json& s) {
  if (s.contains("objects")) return strings(s.at("objects"), "objects");
  if (s.contains("n")) return numbered_objects(count(s.at("n"), "n"));
  throw ParseError("standard groupoid needs \"objects\" or \"n\"");
}

FiniteGroup group_param(const Json& s) {
  const Json& g = field(s, "group");
  if (g.is_object()) {
    FiniteGroup group;
    group.elements = strings(field(g, "elements"), "elements");
    for (const auto& row : field(g, "table")) {
      std::vector<std::size_t> r;
      for (const auto& x : row) r.push_back(count(x, "table entry"));
      group.table.push_back(std::move(r));
    }
    if (group.table.size() != group.elements.size()) throw ParseError("group table has the wrong number of rows");
    for (const auto& row : group.table) {
      if (row.size() != group.elements.size()) throw ParseError("group table row has the wrong length");
      for (auto v : row) {
        if (v >= group.elements.size()) throw ParseError("group table entry out of range");
      }
    }
    return group;
  }
  const std::string kind = str(g, "group");
  const std::size_t n = count(field(s, "order"), "order");
  if (kind == "cyclic") return cyclic_group(n);
  if (kind == "symmetric") return symmetric_group(n);
  throw ParseError("unknown group family " + kind);
}

}  // namespace

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError("scalar must be a string such as \"1/2\" or an integer");
}

Json to_json(const Scalar& s) { return s.to_string(); }

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

GroupoidTables groupoid_tables_from_json(const Json& j) {
  if (j.contains("standard")) {
    const Json& s = j.at("standard");
    StandardParams params;
    params.name = j.contains("name") ? str(j.at("name"), "name") : "";
    const std::string type = str(field(s, "type"), "type");
    if (type == "unit") {
      params.kind = StandardKind::unit;
      params.objects = objects_param(s);
    } else if (type == "pair") {
      params.kind = StandardKind::pair;
      params.objects = objects_param(s);
    } else if (type == "group") {
      params.kind = StandardKind::group;
      params.group = group_param(s);
    } else if (type == "action") {
      params.kind = StandardKind::action;
      params.group = group_param(s);
      params.objects = objects_param(s);
      const Json& action = field(s, "action");
      for (const auto& el : params.group.elements) {
        std::vector<std::size_t> row;
        for (const auto& target : strings(field(action, el.c_str()), "action")) {
          auto it = std::find(params.objects.begin(), params.objects.end(), target);
          if (it == params.objects.end()) throw ParseError("action names unknown object " + target);
          row.push_back(static_cast<std::size_t>(it - params.objects.begin()));
        }
        params.action.push_back(std::move(row));
      }
    } else {
      throw ParseError("unknown standard groupoid type " + type);
    }
    return build_standard(params)->tables();
  }
  GroupoidTables t;
  t.name = j.contains("name") ? str(j.at("name"), "name") : "";
  t.objects = strings(field(j, "objects"), "objects");
  for (const auto& a : field(j, "arrows")) {
    t.arrows.push_back({str(field(a, "id"), "id"), str(field(a, "src"), "src"), str(field(a, "tgt"), "tgt")});
  }
  t.compose = triples(field(j, "compose"), "compose");
  t.identity = string_map(field(j, "identity"), "identity");
  t.inverse = string_map(field(j, "inverse"), "inverse");
  return t;
}

GroupoidPtr groupoid_from_json(const Json& j) { return FiniteGroupoid::create(groupoid_tables_from_json(j)); }

Json to_json(const FiniteGroupoid& g) {
  const GroupoidTables t = g.tables();
  Json out;
  out["kind"] = "groupoid";
  out["name"] = g.name();
  out["objects"] = t.objects;
  Json arrows = Json::array();
  for (const auto& a : t.arrows) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  out["arrows"] = std::move(arrows);
  Json compose = Json::array();
  for (const auto& c : t.compose) compose.push_back({c[0], c[1], c[2]});
  out["compose"] = std::move(compose);
  Json identity = Json::object();
  for (const auto& [x, a] : t.identity) identity[x] = a;
  out["identity"] = std::move(identity);
  Json inverse = Json::object();
  for (const auto& [a, b] : t.inverse) inverse[a] = b;
  out["inverse"] = std::move(inverse);
  return out;
}

Json to_json(const Representation& e) {
  Json out;
  out["kind"] = "representation";
  out["name"] = e.name();
  out["groupoid"] = e.groupoid()->name();
  out["rank"] = e.rank();
  Json rho = Json::object();
  for (Arrow g = 0; g < e.groupoid()->arrow_count(); ++g) rho[e.groupoid()->arrow_id(g)] = to_json(e.rho(g));
  out["rho"] = std::move(rho);
  return out;
}

Json to_json(const CModule& m) {
  Json out;
  out["kind"] = "module";
  out["name"] = m.name();
  out["groupoid"] = m.groupoid()->name();
  out["dim"] = m.dim();
  Json act = Json::object();
  for (Arrow g = 0; g < m.groupoid()->arrow_count(); ++g) act[m.groupoid()->arrow_id(g)] = to_json(m.act(g));
  out["act"] = std::move(act);
  return out;
}

Json to_json(const PrincipalBibundle& p) {
  const BibundleTables t = p.tables();
  Json out;
  out["kind"] = "bibundle";
  out["name"] = p.name();
  out["left"] = p.left()->name();
  out["right"] = p.right()->name();
  out["points"] = t.points;
  Json pi = Json::object();
  Json phi = Json::object();
  for (const auto& id : t.points) {
    pi[id] = t.pi.at(id);
    phi[id] = t.phi.at(id);
  }
  out["pi"] = std::move(pi);
  out["phi"] = std::move(phi);
  Json lact = Json::array();
  for (const auto& a : t.lact) lact.push_back({a[0], a[1], a[2]});
  out["lact"] = std::move(lact);
  Json ract = Json::array();
  for (const auto& a : t.ract) ract.push_back({a[0], a[1], a[2]});
  out["ract"] = std::move(ract);
  return out;
}

Json to_json(const GroupoidFunctor& f) {
  Json out;
  out["kind"] = "functor";
  out["name"] = f.name;
  out["src"] = f.source->name();
  out["tgt"] = f.target->name();
  Json objects = Json::object();
  for (Obj x = 0; x < f.on_objects.size(); ++x) objects[f.source->object_id(x)] = f.target->object_id(f.on_objects[x]);
  out["on_objects"] = std::move(objects);
  Json arrows = Json::object();
  for (Arrow g = 0; g < f.on_arrows.size(); ++g) arrows[f.source->arrow_id(g)] = f.target->arrow_id(f.on_arrows[g]);
  out["on_arrows"] = std::move(arrows);
  return out;
}

Json to_json(const AlgebraElement& a, const std::string& name) {
  Json out;
  out["kind"] = "algebra_element";
  out["name"] = name;
  out["groupoid"] = a.groupoid()->name();
  Json coeffs = Json::object();
  for (Arrow g = 0; g < a.coeffs().size(); ++g) {
    if (!a[g].is_zero()) coeffs[a.groupoid()->arrow_id(g)] = a[g].to_string();
  }
  out["coeffs"] = std::move(coeffs);
  return out;
}

Json to_json(const CheckReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks()) {
    Json entry;
    entry["name"] = c.name;
    entry["pass"] = c.pass;
    entry["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
    checks.push_back(std::move(entry));
  }
  return Json{{"passed", report.all_passed()}, {"checks", std::move(checks)}};
}

Json to_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report) out.push_back({{"name", v.name}, {"witness", v.witness}});
  return out;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void Workspace::claim(const std::string& name) {
  if (name.empty()) throw ParseError("document has no name");
  if (groupoids_.count(name) || reps_.count(name) || modules_.count(name) || bibundles_.count(name) ||
      functors_.count(name) || elements_.count(name) || invalid_.count(name)) {
    throw ParseError("duplicate name " + name);
  }
}

void Workspace::record(std::string kind, std::string name, ValidationReport violations) {
  entries_.push_back({std::move(kind), std::move(name), std::move(violations)});
}

void Workspace::add(GroupoidPtr g) {
  claim(g->name());
  record("groupoid", g->name(), {});
  groupoids_.emplace(g->name(), std::move(g));
}

void Workspace::add(const Representation& e) {
  claim(e.name());
  record("representation", e.name(), validate_rep(e));
  reps_.emplace(e.name(), e);
}

void Workspace::add(const CModule& m) {
  claim(m.name());
  record("module", m.name(), validate_module(m));
  modules_.emplace(m.name(), m);
}

void Workspace::add(const PrincipalBibundle& p) {
  claim(p.name());
  record("bibundle", p.name(), validate_bibundle(p));
  bibundles_.emplace(p.name(), p);
}

void Workspace::add(const GroupoidFunctor& f) {
  claim(f.name);
  record("functor", f.name, validate_functor(f));
  functors_.emplace(f.name, f);
}

void Workspace::add(const std::string& name, const AlgebraElement& a) {
  claim(name);
  record("algebra_element", name, {});
  elements_.emplace(name, a);
}

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::map<std::string, std::string>& invalid,
                                        const std::string& name, const char* kind) {
  auto it = map.find(name);
  if (it != map.end()) return it->second;
  if (invalid.count(name)) throw InvalidParent(name);
  throw UnknownNameError(std::string("unknown ") + kind + " " + name);
}

}  // namespace

std::optional<GroupoidPtr> builtin_groupoid(const std::string& name) {
  static const std::regex family("(z|s|pair|unit)([1-9][0-9]?)");
  if (name == "point") return group_groupoid(cyclic_group(1), name);
  if (name == "swap") return action_groupoid(cyclic_group(2), {"0", "1"}, {{0, 1}, {1, 0}}, name);
  std::smatch m;
  if (!std::regex_match(name, m, family)) return std::nullopt;
  const std::size_t n = std::stoul(m[2]);
  if (m[1] == "z") return group_groupoid(cyclic_group(n), name);
  if (m[1] == "s") return n <= 5 ? std::optional(group_groupoid(symmetric_group(n), name)) : std::nullopt;
  if (m[1] == "pair") return pair_groupoid(numbered_objects(n), name);
  return unit_groupoid(numbered_objects(n), name);
}

GroupoidPtr Workspace::groupoid(const std::string& name) const {
  if (!groupoids_.count(name) && !invalid_.count(name)) {
    if (auto g = builtin_groupoid(name)) return *g;
  }
  return lookup(groupoids_, invalid_, name, "groupoid");
}
const Representation& Workspace::rep(const std::string& name) const {
  return lookup(reps_, invalid_, name, "representation");
}
const CModule& Workspace::module(const std::string& name) const { return lookup(modules_, invalid_, name, "module"); }
const PrincipalBibundle& Workspace::bibundle(const std::string& name) const {
  return lookup(bibundles_, invalid_, name, "bibundle");
}
const GroupoidFunctor& Workspace::functor(const std::string& name) const {
  return lookup(functors_, invalid_, name, "functor");
}
const AlgebraElement& Workspace::element(const std::string& name) const {
  return lookup(elements_, invalid_, name, "algebra element");
}

void Workspace::load_document(const Json& j, const std::string& fallback_name) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  const std::string kind = str(field(j, "kind"), "kind");
  const std::string name = j.contains("name") ? str(j.at("name"), "name") : fallback_name;
  try {
    if (kind == "groupoid") {
      GroupoidTables tables = groupoid_tables_from_json(j);
      tables.name = name;
      auto violations = validate_groupoid(tables);
      if (!violations.empty()) {
        claim(name);
        invalid_[name] = kind;
        record(kind, name, std::move(violations));
        return;
      }
      add(FiniteGroupoid::create(tables));
    } else if (kind == "representation") {
      const GroupoidPtr g = groupoid(str(field(j, "groupoid"), "groupoid"));
      const std::size_t rank = count(field(j, "rank"), "rank");
      const Json& rho = field(j, "rho");
      std::vector<Matrix> mats;
      for (const auto& id : g->arrow_ids()) {
        if (!rho.contains(id)) throw ParseError("rho has no matrix for arrow " + id);
        mats.push_back(matrix_from_json(rho.at(id), rank, rank));
      }
      for (const auto& [id, v] : rho.items()) {
        if (!g->find_arrow(id)) throw ParseError("rho names unknown arrow " + id);
      }
      add(Representation(g, rank, std::move(mats), name));
    } else if (kind == "module") {
      const GroupoidPtr g = groupoid(str(field(j, "groupoid"), "groupoid"));
      const std::size_t dim = count(field(j, "dim"), "dim");
      const Json& act = field(j, "act");
      std::vector<Matrix> mats;
      for (const auto& id : g->arrow_ids()) {
        if (!act.contains(id)) throw ParseError("act has no matrix for arrow " + id);
        mats.push_back(matrix_from_json(act.at(id), dim, dim));
      }
      for (const auto& [id, v] : act.items()) {
        if (!g->find_arrow(id)) throw ParseError("act names unknown arrow " + id);
      }
      add(CModule(g, dim, std::move(mats), name));
    } else if (kind == "bibundle") {
      const GroupoidPtr left = groupoid(str(field(j, "left"), "left"));
      const GroupoidPtr right = groupoid(str(field(j, "right"), "right"));
      BibundleTables t;
      t.name = name;
      t.points = strings(field(j, "points"), "points");
      t.pi = string_map(field(j, "pi"), "pi");
      t.phi = string_map(field(j, "phi"), "phi");
      t.lact = triples(field(j, "lact"), "lact");
      t.ract = triples(field(j, "ract"), "ract");
      try {
        add(PrincipalBibundle(left, right, t));
      } catch (const PreconditionError& e) {
        throw ParseError(e.what());
      }
    } else if (kind == "functor") {
      GroupoidFunctor f;
      f.name = name;
      f.source = groupoid(str(field(j, "src"), "src"));
      f.target = groupoid(str(field(j, "tgt"), "tgt"));
      const auto objects = string_map(field(j, "on_objects"), "on_objects");
      const auto arrows = string_map(field(j, "on_arrows"), "on_arrows");
      try {
        for (const auto& x : f.source->object_ids()) {
          if (!objects.count(x)) throw ParseError("on_objects has no image for " + x);
          f.on_objects.push_back(f.target->object(objects.at(x)));
        }
        for (const auto& a : f.source->arrow_ids()) {
          if (!arrows.count(a)) throw ParseError("on_arrows has no image for " + a);
          f.on_arrows.push_back(f.target->arrow(arrows.at(a)));
        }
      } catch (const PreconditionError& e) {
        throw ParseError(e.what());
      }
      add(f);
    } else if (kind == "algebra_element") {
      const GroupoidPtr g = groupoid(str(field(j, "groupoid"), "groupoid"));
      std::vector<Scalar> coeffs(g->arrow_count());
      for (const auto& [id, v] : field(j, "coeffs").items()) {
        auto a = g->find_arrow(id);
        if (!a) throw ParseError("coeffs names unknown arrow " + id);
        coeffs[*a] = scalar_from_json(v);
      }
      add(name, AlgebraElement(g, std::move(coeffs)));
    } else {
      throw ParseError("unknown document kind " + kind);
    }
  } catch (const InvalidParent& p) {
    claim(name);
    invalid_[name] = kind;
    record(kind, name, {{"parent invalid", p.parent}});
  } catch (const DimensionError& e) {
    throw ParseError(name + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
}

void Workspace::load_file(const std::filesystem::path& path) {
  const Json j = read_json(path);
  if (j.is_object() && j.contains("members")) {
    for (const auto& member : strings(j.at("members"), "members")) load_file(path.parent_path() / member);
    return;
  }
  load_document(j, path.stem().string());
}

}  // namespace grpd::io
