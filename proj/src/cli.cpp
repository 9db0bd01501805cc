#include "germcalc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "germcalc/dualgraph.hpp"
#include "germcalc/germs.hpp"
#include "germcalc/hj.hpp"

namespace germcalc::cli {

namespace {

namespace fs = std::filesystem;
using graph::Cycle;
using graph::Definiteness;
using graph::DualGraph;
using graph::VertexKind;
using hj::Fraction;
using hj::HJString;

const char* kUsage =
    "usage: germcalc <subcommand> [options]\n"
    "\n"
    "subcommands:\n"
    "  hj <m> <q>            continued-fraction expansion of m/q\n"
    "  hj --eval <string>    evaluate a string back to its fraction\n"
    "  conjugate <string>    complementary expansion of the same order\n"
    "  tstring <string>      T-string test, fraction, embedding dimension\n"
    "  enumerate <bound>     T-strings with entry sum <= bound (--du-val to\n"
    "                        include the all-2 strings)\n"
    "  graph <file>          invariants of a weighted dual graph\n"
    "  cycle <file>          fundamental cycle of the graph in <file>\n"
    "  contract <file>       blow down repeatedly to the minimal model\n"
    "  germ <family> [...]   build a germ shape and run its checks; families:\n"
    "                        cd3 | normal | conic | nonnormal-irred |\n"
    "                        nonnormal-red | plt\n"
    "  verify-paper [...]    run the recorded verification battery against\n"
    "                        the shipped fixtures (--fixtures DIR,\n"
    "                        --glue-bound N)\n"
    "\n"
    "common options:\n"
    "  --format text|machine   output style (default text)\n"
    "  --help                  show this message\n"
    "\n"
    "strings are written [2,2,3] (or 2,2,3); '-' is the empty string.\n";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { text, machine };

struct Parsed {
  std::vector<std::string> positional;
  std::map<std::string, std::string> values;
  std::set<std::string> flags;
  Format format = Format::text;
};

Parsed parse_options(const std::vector<std::string>& args, std::size_t start,
                     const std::set<std::string>& value_opts,
                     const std::set<std::string>& flag_opts) {
  Parsed p;
  for (std::size_t i = start; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--format") {
      if (i + 1 >= args.size())
        throw UsageError("option --format needs a value");
      const std::string& v = args[++i];
      if (v == "text") p.format = Format::text;
      else if (v == "machine") p.format = Format::machine;
      else throw UsageError("unknown format '" + v + "'");
    } else if (value_opts.count(a)) {
      if (i + 1 >= args.size())
        throw UsageError("option " + a + " needs a value");
      p.values[a] = args[++i];
    } else if (flag_opts.count(a)) {
      p.flags.insert(a);
    } else if (a.rfind("--", 0) == 0) {
      throw UsageError("unknown option '" + a + "'");
    } else {
      p.positional.push_back(a);
    }
  }
  return p;
}

Int parse_int(const std::string& s) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start)
    throw UsageError("expected an integer, got '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw UsageError("expected an integer, got '" + s + "'");
  return Int(s);
}

int parse_small_int(const std::string& s) {
  Int v = parse_int(s);
  if (v < -1000000 || v > 1000000)
    throw UsageError("value out of range: '" + s + "'");
  return static_cast<int>(v.get_si());
}

HJString parse_string_arg(const std::string& s) {
  try {
    return HJString::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::string human_definiteness(Definiteness d) {
  std::string t = graph::definiteness_token(d);
  for (char& c : t)
    if (c == '_') c = ' ';
  return t;
}

// Graph dump used by the machine format of contract/germ.
void dump_machine_graph(const DualGraph& g, std::ostream& out) {
  out << "vertices=" << g.size() << "\n";
  for (const auto& v : g.vertices()) {
    out << "vertex." << v.id << ".weight=" << v.weight << "\n";
    out << "vertex." << v.id << ".kind=" << graph::kind_token(v.kind) << "\n";
  }
  int i = 0;
  for (const auto& e : g.edges()) {
    out << "edge." << i++ << "=" << e.a << " " << e.b;
    if (e.multiplicity != 1) out << " " << e.multiplicity;
    out << "\n";
  }
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " ";
    out += p;
  }
  return out;
}

DualGraph load_graph(const std::string& path) {
  try {
    return graph::parse_graph_file(path);
  } catch (const graph::ParseError& e) {
    if (e.line > 0)
      throw graph::ParseError(
          e.line, path + ":" + std::to_string(e.line) + ": " + e.what());
    throw;
  }
}

// ---------------------------------------------------------------- hj etc. --

int cmd_hj(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {"--eval"}, {});
  if (p.values.count("--eval")) {
    if (!p.positional.empty())
      throw UsageError("--eval does not take positional arguments");
    HJString s = parse_string_arg(p.values.at("--eval"));
    Fraction f = hj::hj_eval(s);
    if (p.format == Format::machine)
      out << "m=" << f.m << "\nq=" << f.q << "\nstring=" << s.to_string()
          << "\n";
    else
      out << f.m << "/" << f.q << "\n";
    return exit_ok;
  }
  if (p.positional.size() != 2)
    throw UsageError("expected: hj <m> <q> or hj --eval <string>");
  Int m = parse_int(p.positional[0]), q = parse_int(p.positional[1]);
  Fraction f = [&] {
    try {
      return Fraction(m, q);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  HJString s = hj::hj_expand(f);
  if (p.format == Format::machine)
    out << "m=" << f.m << "\nq=" << f.q << "\nstring=" << s.to_string()
        << "\n";
  else
    out << s.to_string() << "\n";
  return exit_ok;
}

int cmd_conjugate(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {}, {});
  if (p.positional.size() != 1) throw UsageError("expected: conjugate <string>");
  HJString s = parse_string_arg(p.positional[0]);
  HJString c = hj::conjugate(s);
  if (p.format == Format::machine)
    out << "string=" << s.to_string() << "\nconjugate=" << c.to_string()
        << "\n";
  else
    out << c.to_string() << "\n";
  return exit_ok;
}

int cmd_tstring(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {}, {});
  if (p.positional.size() != 1) throw UsageError("expected: tstring <string>");
  HJString s = parse_string_arg(p.positional[0]);
  if (s.empty())
    throw UsageError("the empty string carries no singularity data");
  Fraction f = hj::hj_eval(s);
  bool t = hj::is_t_string(s);
  Int emb = hj::emb_dim_cyclic(s);
  if (p.format == Format::machine)
    out << "string=" << s.to_string() << "\nm=" << f.m << "\nq=" << f.q
        << "\nt=" << (t ? 1 : 0) << "\nemb_dim=" << emb << "\n";
  else
    out << "string: " << s.to_string() << "\nfraction: " << f.m << "/" << f.q
        << "\nt: " << (t ? "yes" : "no") << "\nemb_dim: " << emb << "\n";
  return exit_ok;
}

int cmd_enumerate(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {}, {"--du-val"});
  if (p.positional.size() != 1) throw UsageError("expected: enumerate <bound>");
  Int bound = parse_int(p.positional[0]);
  if (bound < 0) throw UsageError("bound must be >= 0");
  std::vector<HJString> all =
      hj::enumerate_t_strings(bound, p.flags.count("--du-val") != 0);
  if (p.format == Format::machine) {
    out << "count=" << all.size() << "\n";
    for (std::size_t i = 0; i < all.size(); ++i)
      out << "string." << i << "=" << all[i].to_string() << "\n";
  } else {
    for (const HJString& s : all) out << s.to_string() << "\n";
  }
  return exit_ok;
}

// ------------------------------------------------------------ graph files --

int cmd_graph(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {}, {});
  if (p.positional.size() != 1) throw UsageError("expected: graph <file>");
  DualGraph g = load_graph(p.positional[0]);
  bool machine = p.format == Format::machine;
  std::vector<std::string> ids = g.compact_ids();
  bool connected = g.compact_connected();

  if (machine) {
    out << "vertices=" << g.size() << "\n";
    out << "edges=" << g.edges().size() << "\n";
    out << "compact=" << ids.size() << "\n";
    out << "connected=" << (connected ? 1 : 0) << "\n";
  } else {
    out << "vertices: " << g.size() << "\n";
    out << "edges: " << g.edges().size() << "\n";
    out << "compact: " << ids.size() << "\n";
    out << "connected: " << (connected ? "yes" : "no") << "\n";
  }

  if (connected && !ids.empty()) {
    graph::DefinitenessResult def = graph::definiteness(g);
    if (machine)
      out << "definiteness=" << graph::definiteness_token(def.cls) << "\n";
    else
      out << "definiteness: " << human_definiteness(def.cls) << "\n";
    if (def.kernel) {
      if (machine) {
        for (const auto& id : ids)
          out << "kernel." << id << "=" << graph::cycle_coeff(*def.kernel, id)
              << "\n";
      } else {
        out << "kernel:";
        for (const auto& id : ids)
          out << " " << id << "=" << graph::cycle_coeff(*def.kernel, id);
        out << "\n";
      }
    }
    if (def.cls != Definiteness::indefinite) {
      Cycle z = graph::fundamental_cycle(g);
      if (machine) {
        for (const auto& id : ids)
          out << "cycle." << id << "=" << graph::cycle_coeff(z, id) << "\n";
      } else {
        out << "cycle:";
        for (const auto& id : ids)
          out << " " << id << "=" << graph::cycle_coeff(z, id);
        out << "\n";
      }
    }
  }

  std::optional<graph::DuValType> duval = graph::classify_du_val(g);
  if (machine)
    out << "du_val=" << (duval ? duval->name() : "none") << "\n";
  else
    out << "du_val: " << (duval ? duval->name() : "none") << "\n";
  return exit_ok;
}

int cmd_cycle(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {}, {});
  if (p.positional.size() != 1) throw UsageError("expected: cycle <file>");
  DualGraph g = load_graph(p.positional[0]);
  Cycle z = graph::fundamental_cycle(g);
  std::vector<std::string> ids = g.compact_ids();
  if (p.format == Format::machine) {
    for (const auto& id : ids)
      out << "cycle." << id << "=" << graph::cycle_coeff(z, id) << "\n";
  } else {
    out << "cycle:";
    for (const auto& id : ids)
      out << " " << id << "=" << graph::cycle_coeff(z, id);
    out << "\n";
  }
  return exit_ok;
}

int cmd_contract(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {}, {});
  if (p.positional.size() != 1) throw UsageError("expected: contract <file>");
  DualGraph g = load_graph(p.positional[0]);
  graph::ContractionResult res = graph::minimal_model(g);
  std::optional<graph::DuValType> duval = graph::classify_du_val(res.graph);
  if (p.format == Format::machine) {
    out << "contracted=" << (res.order.empty() ? "-" : join(res.order)) << "\n";
    dump_machine_graph(res.graph, out);
    if (duval) out << "image=" << duval->name() << "\n";
  } else {
    out << "contracted: " << (res.order.empty() ? "-" : join(res.order))
        << "\n";
    out << graph::serialize_graph(res.graph);
    if (duval) out << "image: " << duval->name() << "\n";
  }
  return exit_ok;
}

// ------------------------------------------------------------------- germ --

struct GermRun {
  germ::GermConfig cfg;
  DualGraph g;
  graph::DefinitenessResult def;
  std::vector<germ::Check> checks;
};

GermRun make_germ_run(const std::string& family, const Parsed& p) {
  auto need = [&](const char* opt) -> const std::string& {
    auto it = p.values.find(opt);
    if (it == p.values.end())
      throw UsageError(std::string("germ ") + family + " requires " + opt);
    return it->second;
  };

  try {
    if (family == "cd3") {
      const std::string& kind_s = need("--kind");
      germ::Cd3Kind kind;
      if (kind_s == "simple") kind = germ::Cd3Kind::simple;
      else if (kind_s == "double") kind = germ::Cd3Kind::double_;
      else if (kind_s == "triple") kind = germ::Cd3Kind::triple;
      else throw UsageError("unknown cd3 kind '" + kind_s + "'");
      int tail = kind == germ::Cd3Kind::triple ? 0 : 1;
      if (p.values.count("--tail")) tail = parse_small_int(p.values.at("--tail"));
      germ::Cd3Config cfg{kind, tail};
      germ::GermReport rep = germ::check_cd3(cfg);
      return GermRun{cfg, std::move(rep.g), std::move(rep.definiteness),
                     std::move(rep.checks)};
    }
    if (family == "normal" || family == "normal_birational") {
      germ::NormalBirationalConfig cfg{parse_string_arg(need("--t")), 1, 0};
      if (p.values.count("--attach"))
        cfg.attach = parse_small_int(p.values.at("--attach"));
      if (p.values.count("--tail"))
        cfg.duval_tail = parse_small_int(p.values.at("--tail"));
      germ::GermReport rep = germ::check_normal_h(cfg);
      return GermRun{cfg, std::move(rep.g), std::move(rep.definiteness),
                     std::move(rep.checks)};
    }
    if (family == "conic" || family == "normal_conic") {
      germ::NormalConicConfig cfg{};
      DualGraph g = germ::build_germ(cfg);
      graph::DefinitenessResult def = graph::definiteness(g);
      bool ok = def.cls == Definiteness::negative_semidefinite &&
                def.kernel.has_value();
      std::vector<germ::Check> checks{
          {"conic_fiber", ok, graph::definiteness_token(def.cls)}};
      return GermRun{cfg, std::move(g), std::move(def), std::move(checks)};
    }
    if (family == "plt" || family == "plt_fibration") {
      germ::PltFibrationConfig cfg{parse_int(need("--m")),
                                   parse_int(need("--a"))};
      DualGraph g = germ::build_germ(cfg);
      graph::DefinitenessResult def = graph::definiteness(g);
      bool ok = def.cls == Definiteness::negative_semidefinite && def.kernel &&
                graph::cycle_coeff(*def.kernel, "c") == cfg.m;
      std::vector<germ::Check> checks{
          {"fiber_kernel", ok, graph::definiteness_token(def.cls)}};
      return GermRun{cfg, std::move(g), std::move(def), std::move(checks)};
    }
    if (family == "nonnormal-irred" || family == "nonnormal_irreducible") {
      germ::NonnormalIrreducibleConfig cfg{parse_int(need("--m")),
                                           parse_int(need("--a"))};
      DualGraph g = germ::build_germ(cfg);
      graph::DefinitenessResult def = graph::definiteness(g);
      bool semi = def.cls == Definiteness::negative_semidefinite;
      std::vector<germ::Check> checks{
          {"semidefinite_fiber", semi, graph::definiteness_token(def.cls)}};
      bool nn = semi && germ::nonnormal_criterion(g);
      checks.push_back({"nonnormal", nn,
                        nn ? "every curve coefficient exceeds 1"
                           : "criterion violated"});
      return GermRun{cfg, std::move(g), std::move(def), std::move(checks)};
    }
    if (family == "nonnormal-red" || family == "nonnormal_reducible") {
      HJString delta3;  // empty by default
      if (p.values.count("--delta3"))
        delta3 = parse_string_arg(p.values.at("--delta3"));
      germ::NonnormalReducibleConfig cfg{parse_int(need("--m")),
                                         parse_int(need("--a")), delta3,
                                         parse_int(need("--c1")),
                                         parse_int(need("--c2"))};
      DualGraph g = germ::build_germ(cfg);
      graph::DefinitenessResult def = graph::definiteness(g);
      std::vector<germ::Check> checks{
          {"definiteness_recorded", true, graph::definiteness_token(def.cls)}};
      bool sm = germ::smoothing_feasible(cfg.c1_sq, cfg.c2_sq, cfg.delta3);
      checks.push_back(
          {"smoothing", sm,
           "margin " +
               germ::smoothing_margin_remark(cfg.c1_sq, cfg.c2_sq, cfg.delta3)
                   .get_str()});
      if (def.cls != Definiteness::indefinite) {
        bool nn = germ::nonnormal_criterion(g);
        checks.push_back({"nonnormal", nn,
                          nn ? "every curve coefficient exceeds 1"
                             : "criterion violated"});
      }
      return GermRun{cfg, std::move(g), std::move(def), std::move(checks)};
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown germ family '" + family + "'");
}

int cmd_germ(const std::vector<std::string>& args, std::ostream& out) {
  if (args.size() < 2) throw UsageError("expected: germ <family> [options]");
  const std::string& family = args[1];
  Parsed p = parse_options(
      args, 2,
      {"--kind", "--tail", "--t", "--attach", "--m", "--a", "--delta3", "--c1",
       "--c2"},
      {"--contract"});
  if (!p.positional.empty())
    throw UsageError("unexpected argument '" + p.positional.front() + "'");
  GermRun run = make_germ_run(family, p);
  bool machine = p.format == Format::machine;

  if (machine) {
    out << "family=" << germ::family_name(run.cfg) << "\n";
    dump_machine_graph(run.g, out);
    out << "definiteness=" << graph::definiteness_token(run.def.cls) << "\n";
    for (const auto& c : run.checks)
      out << "check." << c.name << "=" << (c.ok ? "ok" : "fail") << "\n";
  } else {
    out << "family: " << germ::family_name(run.cfg) << "\n";
    out << graph::serialize_graph(run.g);
    out << "definiteness: " << human_definiteness(run.def.cls) << "\n";
    for (const auto& c : run.checks)
      out << "check " << c.name << ": " << (c.ok ? "ok" : "fail") << "\n";
  }

  if (p.flags.count("--contract") &&
      run.def.cls == Definiteness::negative_definite) {
    graph::ContractionResult res = graph::minimal_model(run.g);
    std::optional<graph::DuValType> duval = graph::classify_du_val(res.graph);
    if (machine) {
      out << "contracted=" << (res.order.empty() ? "-" : join(res.order))
          << "\n";
      if (duval) out << "image=" << duval->name() << "\n";
    } else {
      out << "contracted: " << (res.order.empty() ? "-" : join(res.order))
          << "\n";
      if (duval) out << "image: " << duval->name() << "\n";
    }
  }

  for (const auto& c : run.checks)
    if (!c.ok) return exit_verify_failed;
  return exit_ok;
}

// --------------------------------------------------------- verify battery --

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw CheckFailure(what);
}

void expect_graph_eq(const DualGraph& got, const DualGraph& want,
                     const std::string& label) {
  if (got == want) return;
  throw CheckFailure(label + " mismatch\nexpected:\n" +
                     graph::serialize_graph(want) + "got:\n" +
                     graph::serialize_graph(got));
}

std::vector<Int> compact_weights(const DualGraph& g) {
  std::vector<Int> out;
  for (const auto& v : g.vertices())
    if (v.compact()) out.push_back(v.weight);
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw CheckFailure("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Canonical text of the three fixtures that no builder produces.
const char* kIsolatedCanon =
    "vertex c 1 curve\n"
    "vertex e1 2 exc\n"
    "vertex e2 3 exc\n"
    "vertex e3 2 exc\n"
    "vertex e4 3 exc\n"
    "vertex e5 2 exc\n"
    "vertex e6 2 exc\n"
    "edge c e1\n"
    "edge e1 e2\n"
    "edge e2 e3\n"
    "edge e2 e5\n"
    "edge e2 e6\n"
    "edge e3 e4\n";

const char* kTwoBulletCanon =
    "vertex v1 2 exc\n"
    "vertex v2 1 curve\n"
    "vertex v3 4 exc\n"
    "vertex v4 1 curve\n"
    "vertex v5 2 exc\n"
    "edge v1 v2\n"
    "edge v2 v3\n"
    "edge v3 v4\n"
    "edge v4 v5\n";

const char* kNonnormalCanon =
    "vertex l1 2 exc\n"
    "vertex l2 4 exc\n"
    "vertex x1 4 curve\n"
    "vertex x2 1 curve\n"
    "vertex r1 2 exc\n"
    "vertex r2 2 exc\n"
    "vertex r3 3 exc\n"
    "edge l1 l2\n"
    "edge l2 x1\n"
    "edge r1 r2\n"
    "edge r1 x2\n"
    "edge r2 r3\n"
    "edge x1 x2\n";

const char* kAllFixtureNames[] = {
    "cd3-simple-divisorial.graph",     "cd3-double-divisorial.graph",
    "cd3-triple-divisorial.graph",     "cd3-simple-flip.graph",
    "cd3-double-flip.graph",           "cd3-simple-isolated.graph",
    "conic-fiber.graph",               "two-bullet-fiber.graph",
    "fiber-m2.graph",                  "nonnormal-example.graph",
    "nonnormal-irreducible-7-2.graph", "nonnormal-reducible-7-2.graph",
    "normal-tail-example.graph",       "quartic-bullet.graph"};

int cmd_verify(const std::vector<std::string>& args, std::ostream& out) {
  Parsed p = parse_options(args, 1, {"--fixtures", "--glue-bound"}, {});
  if (!p.positional.empty())
    throw UsageError("unexpected argument '" + p.positional.front() + "'");
  fs::path dir =
      p.values.count("--fixtures") ? p.values.at("--fixtures") : "fixtures";
  Int glue_bound = 30;
  if (p.values.count("--glue-bound")) {
    glue_bound = parse_int(p.values.at("--glue-bound"));
    if (glue_bound < 2) throw UsageError("glue bound must be >= 2");
  }

  auto fixture = [&](const char* name) { return load_graph((dir / name).string()); };

  auto check_cd3_fixture = [&](const char* file, germ::Cd3Config cfg,
                               const char* image) {
    expect_graph_eq(fixture(file), germ::build_germ(cfg), file);
    germ::GermReport rep = germ::check_cd3(cfg);
    expect(rep.ok(), std::string(file) + ": report not ok");
    expect(rep.definiteness.cls == Definiteness::negative_definite,
           std::string(file) + ": expected negative definite");
    if (image) {
      expect(rep.image_type && rep.image_type->name() == image,
             std::string(file) + ": expected image " + image);
    } else {
      expect(!rep.image_type.has_value(),
             std::string(file) + ": expected no Du Val image");
    }
  };

  auto expect_coeffs =
      [&](const Cycle& z,
          const std::vector<std::pair<std::string, long>>& rows,
          const std::string& label) {
        for (const auto& [id, c] : rows)
          expect(graph::cycle_coeff(z, id) == c,
                 label + ": coefficient at " + id + " is " +
                     graph::cycle_coeff(z, id).get_str() + ", expected " +
                     std::to_string(c));
      };

  struct BatteryCheck {
    const char* name;
    std::function<void()> fn;
  };

  const std::vector<BatteryCheck> checks = {
      {"cd3-simple-divisorial",
       [&] {
         check_cd3_fixture("cd3-simple-divisorial.graph",
                           {germ::Cd3Kind::simple, 1}, "A2");
       }},
      {"cd3-double-divisorial",
       [&] {
         check_cd3_fixture("cd3-double-divisorial.graph",
                           {germ::Cd3Kind::double_, 1}, "D4");
       }},
      {"cd3-triple-divisorial",
       [&] {
         check_cd3_fixture("cd3-triple-divisorial.graph",
                           {germ::Cd3Kind::triple, 0}, "E6");
       }},
      {"cd3-simple-flip",
       [&] {
         check_cd3_fixture("cd3-simple-flip.graph",
                           {germ::Cd3Kind::simple, 0}, nullptr);
       }},
      {"cd3-double-flip",
       [&] {
         check_cd3_fixture("cd3-double-flip.graph",
                           {germ::Cd3Kind::double_, 0}, nullptr);
       }},
      {"cd3-simple-isolated",
       [&] {
         DualGraph g = fixture("cd3-simple-isolated.graph");
         expect(graph::serialize_graph(g) == kIsolatedCanon,
                "fixture is not the recorded isolated shape");
         expect(graph::definiteness(g).cls == Definiteness::negative_definite,
                "expected negative definite");
         graph::ContractionResult res = graph::minimal_model(g);
         expect(compact_weights(res.graph) ==
                    std::vector<Int>({2, 2, 3, 2, 2}),
                "contracted weights changed");
         expect(!graph::classify_du_val(res.graph).has_value(),
                "expected no Du Val image");
       }},
      {"conic-fiber",
       [&] {
         DualGraph g = fixture("conic-fiber.graph");
         expect_graph_eq(g, germ::build_germ(germ::NormalConicConfig{}),
                         "conic fiber");
         graph::DefinitenessResult def = graph::definiteness(g);
         expect(def.cls == Definiteness::negative_semidefinite && def.kernel,
                "expected negative semidefinite with kernel");
         expect_coeffs(*def.kernel,
                       {{"c1", 1}, {"b", 4}, {"d1", 3}, {"d2", 2}, {"d3", 1}},
                       "kernel");
         expect(graph::fundamental_cycle(g) == *def.kernel,
                "fundamental cycle is not the kernel");
       }},
      {"two-bullet-fiber",
       [&] {
         DualGraph g = fixture("two-bullet-fiber.graph");
         expect(graph::serialize_graph(g) == kTwoBulletCanon,
                "fixture is not the recorded two-bullet fiber");
         graph::DefinitenessResult def = graph::definiteness(g);
         expect(def.cls == Definiteness::negative_semidefinite && def.kernel,
                "expected negative semidefinite with kernel");
         expect_coeffs(
             *def.kernel,
             {{"v1", 1}, {"v2", 2}, {"v3", 1}, {"v4", 2}, {"v5", 1}},
             "kernel");
         expect(graph::fundamental_cycle(g) == *def.kernel,
                "fundamental cycle is not the kernel");
         expect(germ::nonnormal_criterion(g),
                "both bullets should have coefficient 2");
       }},
      {"cusp-fiber-family",
       [&] {
         for (int l = 0; l <= 3; ++l) {
           DualGraph g;
           std::vector<long> w = {2, 1, 3};
           for (int i = 0; i < l; ++i) w.push_back(2);
           w.push_back(3);
           w.push_back(1);
           w.push_back(2);
           for (std::size_t i = 0; i < w.size(); ++i) {
             bool curve = i == 1 || i == w.size() - 2;
             g.add_vertex("v" + std::to_string(i + 1), w[i],
                          curve ? VertexKind::curve : VertexKind::exceptional);
           }
           for (std::size_t i = 1; i < w.size(); ++i)
             g.add_edge("v" + std::to_string(i), "v" + std::to_string(i + 1));
           graph::DefinitenessResult def = graph::definiteness(g);
           expect(def.cls == Definiteness::negative_semidefinite && def.kernel,
                  "family member " + std::to_string(l) +
                      " is not semidefinite");
           std::vector<long> k = {1, 2, 1};
           for (int i = 0; i < l; ++i) k.push_back(1);
           k.push_back(1);
           k.push_back(2);
           k.push_back(1);
           for (std::size_t i = 0; i < k.size(); ++i)
             expect(graph::cycle_coeff(*def.kernel,
                                       "v" + std::to_string(i + 1)) == k[i],
                    "kernel mismatch in family member " + std::to_string(l));
           expect(graph::fundamental_cycle(g) == *def.kernel,
                  "fundamental cycle is not the kernel");
         }
       }},
      {"fiber-m2",
       [&] {
         DualGraph g = fixture("fiber-m2.graph");
         expect_graph_eq(g, germ::build_germ(germ::PltFibrationConfig{2, 1}),
                         "order-2 fiber");
         graph::DefinitenessResult def = graph::definiteness(g);
         expect(def.cls == Definiteness::negative_semidefinite && def.kernel,
                "expected negative semidefinite with kernel");
         expect_coeffs(*def.kernel, {{"l1", 1}, {"c", 2}, {"r1", 1}},
                       "kernel");
       }},
      {"fiber-kernels",
       [&] {
         for (long m = 2; m <= 12; ++m)
           for (long a = 1; a < m; ++a) {
             if (gcd(Int(m), Int(a)) != 1) continue;
             DualGraph g =
                 germ::build_germ(germ::PltFibrationConfig{m, a});
             graph::DefinitenessResult def = graph::definiteness(g);
             std::string label =
                 "fiber " + std::to_string(m) + "/" + std::to_string(a);
             expect(def.cls == Definiteness::negative_semidefinite &&
                        def.kernel,
                    label + " is not semidefinite");
             expect(graph::cycle_coeff(*def.kernel, "c") == m,
                    label + ": bullet coefficient is not m");
             std::vector<std::string> ids = g.compact_ids();
             expect(graph::cycle_coeff(*def.kernel, ids.front()) == 1 &&
                        graph::cycle_coeff(*def.kernel, ids.back()) == 1,
                    label + ": end coefficients are not 1");
             expect(graph::fundamental_cycle(g) == *def.kernel,
                    label + ": fundamental cycle is not the kernel");
           }
       }},
      {"nonnormal-example",
       [&] {
         DualGraph g = fixture("nonnormal-example.graph");
         expect(graph::serialize_graph(g) == kNonnormalCanon,
                "fixture is not the recorded example");
         Cycle z = graph::fundamental_cycle(g);
         expect_coeffs(z,
                       {{"l1", 1},
                        {"l2", 1},
                        {"x1", 2},
                        {"x2", 7},
                        {"r1", 5},
                        {"r2", 3},
                        {"r3", 1}},
                       "cycle");
         expect(germ::nonnormal_criterion(g),
                "both curve components should be non-reduced");
         expect(germ::smoothing_margin_remark(-4, -1, HJString{}) == 0 &&
                    germ::smoothing_feasible(-4, -1, HJString{}),
                "margin of the recorded example moved off 0");
       }},
      {"nonnormal-irreducible-7-2",
       [&] {
         DualGraph g = fixture("nonnormal-irreducible-7-2.graph");
         expect_graph_eq(
             g, germ::build_germ(germ::NonnormalIrreducibleConfig{7, 2}),
             "irreducible shape");
         graph::DefinitenessResult def = graph::definiteness(g);
         expect(def.cls == Definiteness::negative_semidefinite && def.kernel,
                "expected negative semidefinite with kernel");
         expect(graph::cycle_coeff(*def.kernel, "c") == 7,
                "bullet coefficient is not 7");
         expect(germ::nonnormal_criterion(g), "criterion violated");
       }},
      {"nonnormal-reducible-7-2",
       [&] {
         DualGraph g = fixture("nonnormal-reducible-7-2.graph");
         expect_graph_eq(g,
                         germ::build_germ(germ::NonnormalReducibleConfig{
                             7, 2, HJString{}, -4, -1}),
                         "reducible shape");
         expect(graph::definiteness(g).cls == Definiteness::negative_definite,
                "expected negative definite");
         Cycle z = graph::fundamental_cycle(g);
         expect_coeffs(z,
                       {{"l1", 1},
                        {"l2", 1},
                        {"x1", 2},
                        {"x2", 7},
                        {"r1", 5},
                        {"r2", 3},
                        {"r3", 1}},
                       "cycle");
         expect(germ::nonnormal_criterion(g), "criterion violated");
       }},
      {"normal-tail-example",
       [&] {
         germ::NormalBirationalConfig cfg{HJString{3, 2, 3}, 3, 1};
         DualGraph g = fixture("normal-tail-example.graph");
         expect_graph_eq(g, germ::build_germ(cfg), "tail example");
         germ::GermReport rep = germ::check_normal_h(cfg);
         expect(rep.ok(), "report not ok");
         expect(rep.image_type && rep.image_type->name() == "A1",
                "expected image A1");
         expect(rep.contracted_image &&
                    compact_weights(*rep.contracted_image) ==
                        std::vector<Int>({2}),
                "contracted image changed");
       }},
      {"normal-tail-contraction",
       [&] {
         DualGraph g;
         g.add_vertex("a", 3, VertexKind::exceptional);
         g.add_vertex("b", 2, VertexKind::exceptional);
         g.add_vertex("c", 1, VertexKind::curve);
         g.add_edge("a", "b");
         g.add_edge("b", "c");
         graph::ContractionResult res = graph::minimal_model(g);
         expect(res.order == std::vector<std::string>({"c", "b"}),
                "two-step contraction order changed");
         expect(compact_weights(res.graph) == std::vector<Int>({2}),
                "two-step contraction result changed");
         auto duval = graph::classify_du_val(res.graph);
         expect(duval && duval->name() == "A1", "expected image A1");

         graph::ContractionResult tail = graph::minimal_model(
             germ::build_germ(germ::NormalBirationalConfig{
                 HJString{3, 2, 3}, 3, 1}));
         expect(tail.order ==
                    std::vector<std::string>({"b", "d1", "c3", "c2"}),
                "tail contraction order changed");
       }},
      {"quartic-bullet",
       [&] {
         germ::NormalBirationalConfig cfg{HJString{4}, 1, 0};
         DualGraph g = fixture("quartic-bullet.graph");
         expect_graph_eq(g, germ::build_germ(cfg), "quartic bullet");
         germ::GermReport rep = germ::check_normal_h(cfg);
         expect(rep.ok() &&
                    rep.definiteness.cls == Definiteness::negative_definite,
                "report not ok");
         expect(rep.contracted_image &&
                    compact_weights(*rep.contracted_image) ==
                        std::vector<Int>({3}),
                "minimal model is not the single weight-3 vertex");
         expect(!rep.image_type.has_value(), "expected no Du Val image");
       }},
      {"normal-tail-regime",
       [&] {
         germ::GermReport k1 = germ::check_normal_h(
             germ::NormalBirationalConfig{HJString{2, 5}, 2, 1});
         expect(k1.ok() && k1.contracted_image &&
                    compact_weights(*k1.contracted_image) ==
                        std::vector<Int>({2, 3}) &&
                    !k1.image_type,
                "tail length 1 regime changed");
         germ::GermReport k2 = germ::check_normal_h(
             germ::NormalBirationalConfig{HJString{2, 5}, 2, 2});
         expect(k2.ok() && k2.image_type && k2.image_type->name() == "A2",
                "tail length 2 regime changed");
         germ::GermReport k3 = germ::check_normal_h(
             germ::NormalBirationalConfig{HJString{2, 5}, 2, 3});
         expect(k3.ok() &&
                    k3.definiteness.cls == Definiteness::negative_definite,
                "tail length 3 regime changed");
       }},
      {"t-string-seeds",
       [&] {
         auto names = [](const std::vector<HJString>& v) {
           std::vector<std::string> out;
           for (const auto& s : v) out.push_back(s.to_string());
           return out;
         };
         expect(names(hj::enumerate_t_strings(8)) ==
                    std::vector<std::string>(
                        {"[4]", "[2,5]", "[3,3]", "[5,2]", "[3,2,3]"}),
                "seed enumeration to bound 8 changed");
         expect(names(hj::enumerate_t_strings(6, true)) ==
                    std::vector<std::string>(
                        {"[2]", "[4]", "[2,2]", "[3,3]", "[2,2,2]"}),
                "enumeration with the all-2 strings changed");
       }},
      {"glue-claim",
       [&] {
         germ::GlueSearchResult r = germ::verify_duval_glue_claim(glue_bound);
         expect(r.checked >= 1, "empty search space");
         if (!r.ok) {
           std::string msg = "counterexample: ";
           msg += r.counterexamples.front().glued.to_string();
           throw CheckFailure(msg);
         }
       }},
      {"mu-trivial",
       [&] {
         germ::MuTrivialDivisors s = germ::mu_trivial_divisors(
             {germ::MuTrivialShape::single4, 2, 2});
         expect_coeffs(s.m_a, {{"c1", 1}, {"z", 1}, {"c2", 3}}, "m_a");
         expect_coeffs(s.m_b, {{"c1", 3}, {"z", 1}, {"c2", 1}}, "m_b");
         expect_coeffs(s.m_c, {{"c1", 2}, {"z", 1}, {"c2", 2}}, "m_c");
         germ::MuTrivialDivisors d = germ::mu_trivial_divisors(
             {germ::MuTrivialShape::double3, 2, 2, 2});
         expect_coeffs(d.m_a,
                       {{"c1", 1}, {"z1", 1}, {"z2", 2}, {"c2", 5}}, "m_a");
         expect_coeffs(d.m_b,
                       {{"c1", 5}, {"z1", 2}, {"z2", 1}, {"c2", 1}}, "m_b");
         expect_coeffs(d.m_c,
                       {{"c1", 2}, {"z1", 1}, {"z2", 1}, {"c2", 2}}, "m_c");
         for (long a = 2; a <= 4; ++a)
           for (long b = 2; b <= 4; ++b)
             for (long c = 2; c <= 4; ++c) {
               auto verify = [&](const germ::MuTrivialDivisors& dd) {
                 for (const std::string& id : dd.interior)
                   for (const Cycle* m : {&dd.m_a, &dd.m_b, &dd.m_c})
                     expect(graph::cycle_pairing(*m, dd.g, id) == 0,
                            "nonzero pairing at " + id);
               };
               verify(germ::mu_trivial_divisors(
                   {germ::MuTrivialShape::single4, a, b}));
               verify(germ::mu_trivial_divisors(
                   {germ::MuTrivialShape::double3, a, b, c}));
             }
       }},
      {"cusp-invariant",
       [&] {
         expect(germ::zeta_invariant(HJString{}, true) == 1, "smooth row");
         expect(germ::zeta_invariant(HJString{2}, false) == 2 &&
                    germ::zeta_invariant(HJString{2, 2, 2}, false) == 2,
                "Du Val rows");
         expect(germ::zeta_invariant(HJString{3}, false) == 3 &&
                    germ::zeta_invariant(HJString{3, 2}, false) == 3 &&
                    germ::zeta_invariant(HJString{2, 3, 2}, false) == 3,
                "excess-1 rows");
         expect(germ::zeta_invariant(HJString{4}, false) == 4 &&
                    germ::zeta_invariant(HJString{3, 3}, false) == 4 &&
                    germ::zeta_invariant(HJString{3, 2, 3}, false) == 4,
                "excess-2 rows");
       }},
      {"smoothing-margins",
       [&] {
         expect(germ::smoothing_margin_remark(-4, -1, HJString{}) == 0,
                "frozen (-4,-1,[]) margin");
         expect(germ::smoothing_margin_remark(-1, -1, HJString{3}) == 2,
                "frozen (-1,-1,[3]) margin");
         expect(germ::smoothing_margin_remark(-5, -2, HJString{}) == -2 &&
                    !germ::smoothing_feasible(-5, -2, HJString{}),
                "frozen (-5,-2,[]) margin");
         expect(germ::smoothing_margin_remark(-3, -3, HJString{4}) == -3 &&
                    !germ::smoothing_feasible(-3, -3, HJString{4}),
                "frozen (-3,-3,[4]) margin");
         const std::vector<HJString> chains = {
             HJString{},     HJString{2},    HJString{3},
             HJString{4},    HJString{2, 2}, HJString{3, 3},
             HJString{2, 3}, HJString{3, 2, 3}};
         for (long c1 = -6; c1 <= -1; ++c1)
           for (long c2 = -6; c2 <= -1; ++c2)
             for (const HJString& d : chains) {
               Int r = germ::smoothing_margin_remark(c1, c2, d);
               expect(r == germ::smoothing_margin_delta(c1, c2, d),
                      "margin forms disagree at " + d.to_string());
               expect(germ::smoothing_feasible(c1, c2, d) == (r >= 0),
                      "feasibility threshold broke at " + d.to_string());
             }
       }},
      {"phi-degrees",
       [&] {
         germ::PhiReport r = germ::phi_weighted_check(3, 1);
         expect(r.all_ok && r.expected_degree == 6 && r.entries.size() == 8,
                "weighted degrees at (3,1) changed");
         std::vector<std::string> monos;
         for (const auto& e : r.entries) monos.push_back(e.mono.to_string());
         expect(monos == std::vector<std::string>(
                             {"x^4 y^2", "x^2 z^2", "u y z", "x^5 y",
                              "u x^2 y", "x^6", "u x^3", "u^2"}),
                "monomial list at (3,1) changed");
         for (long m = 2; m <= 12; ++m)
           for (long a = 1; a < m; ++a) {
             if (gcd(Int(m), Int(a)) != 1) continue;
             germ::PhiReport rr = germ::phi_weighted_check(m, a);
             expect(rr.all_ok && rr.entries.size() == 8,
                    "degree check failed at m=" + std::to_string(m));
           }
       }},
      {"fixture-round-trip",
       [&] {
         for (const char* name : kAllFixtureNames) {
           std::string raw = read_file(dir / name);
           DualGraph g = graph::parse_graph(raw);
           expect(graph::serialize_graph(g) == raw,
                  std::string(name) + " is not in canonical form");
         }
       }},
  };

  bool machine = p.format == Format::machine;
  int passed = 0;
  for (const BatteryCheck& c : checks) {
    std::string failure;
    try {
      c.fn();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    if (!failure.empty()) {
      if (machine) {
        out << "check." << c.name << "=fail\n";
        out << "result=fail\n";
      } else {
        out << "FAIL: " << c.name << "\n";
        std::istringstream lines(failure);
        std::string line;
        while (std::getline(lines, line)) out << "  " << line << "\n";
      }
      return exit_verify_failed;
    }
    if (machine)
      out << "check." << c.name << "=ok\n";
    else
      out << "ok: " << c.name << "\n";
    ++passed;
  }
  if (machine)
    out << "result=pass\n";
  else
    out << "all checks passed (" << passed << ")\n";
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return exit_usage;
  }
  const std::string& cmd = args[0];
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    out << kUsage;
    return exit_ok;
  }
  try {
    if (cmd == "hj") return cmd_hj(args, out);
    if (cmd == "conjugate") return cmd_conjugate(args, out);
    if (cmd == "tstring") return cmd_tstring(args, out);
    if (cmd == "enumerate") return cmd_enumerate(args, out);
    if (cmd == "graph") return cmd_graph(args, out);
    if (cmd == "cycle") return cmd_cycle(args, out);
    if (cmd == "contract") return cmd_contract(args, out);
    if (cmd == "germ") return cmd_germ(args, out);
    if (cmd == "verify-paper") return cmd_verify(args, out);
    err << "error: unknown subcommand '" << cmd << "'\n" << kUsage;
    return exit_usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const graph::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_bad_graph_file;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_verify_failed;
  }
}

}  // namespace germcalc::cli
