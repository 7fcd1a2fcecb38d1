#include "grpd/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "grpd/bibundle.hpp"
#include "grpd/convolution.hpp"
#include "grpd/generators.hpp"
#include "grpd/io.hpp"
#include "grpd/module.hpp"
#include "grpd/morita.hpp"
#include "grpd/representation.hpp"

namespace grpd::cli {

namespace {

using io::Json;

struct Options {
  std::vector<std::string> inputs;
  std::string workspace;
  std::string output;
  std::string format = "text";
  std::string kind;
  std::string groupoid;
  std::string reps;
  std::string modules;
  std::string bibundle;
  std::string chain;
  std::string a;
  std::string b;
  std::string rep;
  std::string module;
  std::string left;
  std::string right;
  std::size_t n = 0;
};

class UsageError : public ParseError {
 public:
  using ParseError::ParseError;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return value;
}

io::Workspace load(const Options& o) {
  io::Workspace ws;
  if (!o.workspace.empty()) ws.load_file(o.workspace);
  for (const auto& path : o.inputs) ws.load_file(path);
  return ws;
}

/// Group structure of a single-object groupoid, with the arrows as elements.
FiniteGroup vertex_group(const FiniteGroupoid& g) {
  if (g.object_count() != 1) throw UsageError("sign is only built in for groupoids with one object");
  FiniteGroup group;
  group.elements = g.arrow_ids();
  group.table.assign(g.arrow_count(), std::vector<std::size_t>(g.arrow_count()));
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    for (Arrow b = 0; b < g.arrow_count(); ++b) group.table[a][b] = *g.compose(a, b);
  }
  return group;
}

/// A workspace representation, or one of the built-in names "trivial",
/// "trivialK", "sign" and "regular" over `g`.
Representation resolve_rep(const io::Workspace& ws, const std::string& name, const GroupoidPtr& g) {
  if (ws.has_rep(name)) {
    const Representation& e = ws.rep(name);
    if (!same_groupoid(e.groupoid(), g)) {
      throw PreconditionError("representation " + name + " does not live over " + g->name());
    }
    return e;
  }
  static const std::regex trivial("trivial([0-9]*)");
  std::smatch m;
  if (std::regex_match(name, m, trivial)) {
    const std::size_t k = m[1].length() ? std::stoul(m[1]) : 1;
    return Representation::trivial(g, k, name);
  }
  if (name == "sign") return sign_rep(g, vertex_group(*g), name);
  if (name == "regular") return regular_rep(g, name);
  return ws.rep(name);
}

void emit(const Options& o, const Json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw UsageError("cannot write " + o.output);
  file << text;
}

int report(const Options& o, const CheckReport& r, std::ostream& out) {
  if (o.format == "json") {
    out << io::to_json(r).dump(2) << "\n";
  } else {
    for (const auto& c : r.checks()) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name;
      if (c.witness) out << " [" << *c.witness << "]";
      out << "\n";
    }
    out << r.checks().size() - r.failures() << "/" << r.checks().size() << " checks passed\n";
  }
  return r.all_passed() ? 0 : 1;
}

int cmd_validate(const Options& o, const std::vector<std::string>& paths, std::ostream& out) {
  io::Workspace ws;
  if (!o.workspace.empty()) ws.load_file(o.workspace);
  for (const auto& p : o.inputs) ws.load_file(p);
  for (const auto& p : paths) ws.load_file(p);
  if (ws.entries().empty()) throw UsageError("nothing to validate");
  bool ok = true;
  Json objects = Json::array();
  for (const auto& e : ws.entries()) {
    ok = ok && e.violations.empty();
    objects.push_back(
        {{"kind", e.kind}, {"name", e.name}, {"valid", e.violations.empty()}, {"violations", io::to_json(e.violations)}});
    if (o.format != "json") {
      out << (e.violations.empty() ? "ok   " : "FAIL ") << e.kind << " " << e.name;
      if (!e.violations.empty()) out << ": " << describe(e.violations);
      out << "\n";
    }
  }
  if (o.format == "json") out << Json{{"objects", objects}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_check(const Options& o, std::ostream& out) {
  CheckReport r;
  if (o.kind == "matrix-algebra") {
    if (o.n == 0) throw UsageError("missing --n");
    const MatrixAlgebraCheck c = check_matrix_algebra_iso(o.n);
    r.add("matrix units n=" + std::to_string(o.n), c.pass,
          c.pass ? std::to_string(c.identities_checked) + " identities" : c.first_failure.value_or(""));
    return report(o, r, out);
  }
  const io::Workspace ws = load(o);
  if (o.kind == "serre-swan") {
    const GroupoidPtr g = ws.groupoid(need(o.groupoid, "--groupoid"));
    std::vector<Representation> reps;
    for (const auto& name : split(o.reps)) reps.push_back(resolve_rep(ws, name, g));
    std::vector<CModule> modules;
    for (const auto& name : split(o.modules)) modules.push_back(ws.module(name));
    r = check_serre_swan(g, reps, modules);
  } else if (o.kind == "sigma") {
    const PrincipalBibundle& p = ws.bibundle(need(o.bibundle, "--bibundle"));
    for (const auto& name : split(need(o.reps, "--reps"))) r.append(check_sigma(p, resolve_rep(ws, name, p.right())));
  } else if (o.kind == "natural-square") {
    const PrincipalBibundle& p = ws.bibundle(need(o.bibundle, "--bibundle"));
    std::vector<Representation> reps;
    for (const auto& name : split(need(o.reps, "--reps"))) reps.push_back(resolve_rep(ws, name, p.right()));
    for (const auto& e : reps) {
      for (const auto& f : reps) {
        auto basis = intertwiner_space(e, f);
        basis.push_back(zero_morphism(e, f));
        for (const auto& phi : basis) r.append(check_natural_square(p, phi));
      }
    }
  } else if (o.kind == "morita") {
    const PrincipalBibundle& p = ws.bibundle(need(o.bibundle, "--bibundle"));
    const MoritaCertificate cert = is_morita_equivalence(p);
    r.add("biprincipal: " + p.name(), cert.is_equivalence, cert.witness);
    if (cert.is_equivalence) {
      r.add("inverse bundle valid: " + cert.inverse->name(), validate_bibundle(*cert.inverse).empty());
      r.add("unit iso " + p.name() + " * " + cert.inverse->name() + " -> " + p.left()->name(),
            validate_equivariant_map(*cert.left_unit).empty());
      r.add("unit iso " + cert.inverse->name() + " * " + p.name() + " -> " + p.right()->name(),
            validate_equivariant_map(*cert.right_unit).empty());
      if (!o.output.empty()) emit(o, io::to_json(*cert.inverse), out);
    }
  } else if (o.kind == "coherence") {
    std::vector<PrincipalBibundle> chain;
    for (const auto& name : split(need(o.chain, "--chain"))) chain.push_back(ws.bibundle(name));
    if (chain.size() < 2) throw UsageError("--chain needs at least two bibundles");
    for (const auto& p : chain) r.append(check_omega_units(p));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      r.append(check_triangle(chain[i], chain[i + 1]));
      r.append(check_omega(chain[i], chain[i + 1]));
    }
    for (std::size_t i = 0; i + 2 < chain.size(); ++i) {
      r.append(check_omega_associativity(chain[i], chain[i + 1], chain[i + 2]));
    }
    for (std::size_t i = 0; i + 3 < chain.size(); ++i) {
      r.append(check_pentagon(chain[i], chain[i + 1], chain[i + 2], chain[i + 3]));
    }
  } else {
    throw UsageError("unknown check " + o.kind);
  }
  return report(o, r, out);
}

/// Workspace element by name, or loaded from a file of that path.
const AlgebraElement& element_arg(io::Workspace& ws, const std::string& arg) {
  try {
    return ws.element(arg);
  } catch (const io::UnknownNameError&) {
    if (!std::filesystem::exists(arg)) throw;
  }
  ws.load_file(arg);
  return ws.element(ws.entries().back().name);
}

int cmd_compute(const Options& o, std::ostream& out) {
  io::Workspace ws = load(o);
  if (o.kind == "convolve") {
    const AlgebraElement a = element_arg(ws, need(o.a, "--a"));
    const AlgebraElement b = element_arg(ws, need(o.b, "--b"));
    const ConvolutionAlgebra algebra(a.groupoid());
    emit(o, io::to_json(algebra.convolve(a, b), need(o.a, "--a") + "*" + o.b), out);
  } else if (o.kind == "gamma") {
    const std::string name = need(o.rep, "--rep");
    const GroupoidPtr g = ws.has_rep(name) ? ws.rep(name).groupoid() : ws.groupoid(need(o.groupoid, "--groupoid"));
    const Representation e = resolve_rep(ws, name, g);
    require_valid(validate_rep(e), "representation " + e.name());
    emit(o, io::to_json(gamma(e)), out);
  } else if (o.kind == "reconstruct") {
    emit(o, io::to_json(reconstruct(ws.module(need(o.module, "--module")))), out);
  } else if (o.kind == "compose") {
    emit(o, io::to_json(compose_bibundles(ws.bibundle(need(o.left, "--left")), ws.bibundle(need(o.right, "--right")))),
         out);
  } else if (o.kind == "pullback") {
    const PrincipalBibundle& p = ws.bibundle(need(o.bibundle, "--bibundle"));
    emit(o, io::to_json(pullback_rep(p, resolve_rep(ws, need(o.rep, "--rep"), p.right()))), out);
  } else if (o.kind == "modfunctor") {
    const PrincipalBibundle& p = ws.bibundle(need(o.bibundle, "--bibundle"));
    emit(o, io::to_json(mod_functor(p, ws.module(need(o.module, "--module")))), out);
  } else {
    throw UsageError("unknown computation " + o.kind);
  }
  return 0;
}

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("-i,--input", o.inputs, "Object or workspace file to load");
  cmd->add_option("--workspace", o.workspace, "Workspace file listing member documents");
  cmd->add_option("-o,--output", o.output, "Write the result to this file");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoids, their convolution algebras and Morita theory over Q(i)", "grpd"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> paths;

  auto* validate = app.add_subcommand("validate", "Load documents and check their invariants");
  common_flags(validate, o);
  validate->add_option("paths", paths, "Documents to validate");

  auto* check = app.add_subcommand("check", "Run a theorem check");
  common_flags(check, o);
  check->add_option("kind", o.kind, "Check to run")
      ->required()
      ->check(CLI::IsMember({"serre-swan", "sigma", "natural-square", "morita", "matrix-algebra", "coherence"}));
  check->add_option("--groupoid", o.groupoid);
  check->add_option("--reps", o.reps, "Comma-separated representations");
  check->add_option("--modules", o.modules, "Comma-separated modules");
  check->add_option("--bibundle", o.bibundle);
  check->add_option("--chain", o.chain, "Comma-separated composable bibundles");
  check->add_option("--n", o.n, "Matrix size");

  auto* compute = app.add_subcommand("compute", "Compute an object and write it as JSON");
  common_flags(compute, o);
  compute->add_option("kind", o.kind, "Computation")
      ->required()
      ->check(CLI::IsMember({"convolve", "gamma", "reconstruct", "compose", "pullback", "modfunctor"}));
  compute->add_option("--a", o.a);
  compute->add_option("--b", o.b);
  compute->add_option("--groupoid", o.groupoid);
  compute->add_option("--rep", o.rep);
  compute->add_option("--module", o.module);
  compute->add_option("--bibundle", o.bibundle);
  compute->add_option("--left", o.left);
  compute->add_option("--right", o.right);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "grpd: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, paths, out);
    if (check->parsed()) return cmd_check(o, out);
    return cmd_compute(o, out);
  } catch (const ParseError& e) {
    err << "grpd: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "grpd: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace grpd::cli
