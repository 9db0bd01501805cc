#include "germcalc/germs.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace germcalc::germ {

namespace {

using graph::Cycle;
using graph::DualGraph;
using graph::VertexKind;
using hj::Fraction;
using hj::HJString;

void require_tail(int tail, int lo, int hi) {
  if (tail < lo || tail > hi)
    throw std::invalid_argument("tail length out of range: " +
                                std::to_string(tail));
}

// Validated (m, a): order of a cyclic quotient point, 2 <= m, gcd(a, m) = 1.
void require_order(const Int& m, const Int& a) {
  if (m < 2) throw std::invalid_argument("order m must be >= 2");
  if (a < 1 || a >= m)
    throw std::invalid_argument("residue a must satisfy 1 <= a < m");
  if (gcd(m, a) != 1) throw std::invalid_argument("a and m must be coprime");
}

DualGraph build_cd3(const Cd3Config& cfg) {
  switch (cfg.kind) {
    case Cd3Kind::simple:
    case Cd3Kind::double_: require_tail(cfg.tail, 0, 1); break;
    case Cd3Kind::triple: require_tail(cfg.tail, 0, 0); break;
  }
  DualGraph g;
  if (cfg.tail == 1) g.add_vertex("t1", 2, VertexKind::exceptional);
  g.add_vertex("c", 1, VertexKind::curve);
  auto chain = [&](const std::vector<long>& weights) {
    for (std::size_t i = 0; i < weights.size(); ++i)
      g.add_vertex("e" + std::to_string(i + 1), weights[i],
                   VertexKind::exceptional);
    g.add_edge("c", "e1");
    if (cfg.tail == 1) g.add_edge("c", "t1");
  };
  switch (cfg.kind) {
    case Cd3Kind::simple:
      // stem e1-e2 with two arms off e2
      chain({3, 2, 3, 3});
      g.add_edge("e1", "e2");
      g.add_edge("e2", "e3");
      g.add_edge("e2", "e4");
      break;
    case Cd3Kind::double_:
      // stem e1-e2-e3 with three (-2)-arms off e3
      chain({3, 2, 3, 2, 2, 2});
      g.add_edge("e1", "e2");
      g.add_edge("e2", "e3");
      g.add_edge("e3", "e4");
      g.add_edge("e3", "e5");
      g.add_edge("e3", "e6");
      break;
    case Cd3Kind::triple:
      // stem e1-e2-e3 with arms e4-e5, e6-e7, e8 off the (-3)-vertex e3
      chain({2, 2, 3, 2, 2, 2, 2, 2});
      g.add_edge("e1", "e2");
      g.add_edge("e2", "e3");
      g.add_edge("e3", "e4");
      g.add_edge("e4", "e5");
      g.add_edge("e3", "e6");
      g.add_edge("e6", "e7");
      g.add_edge("e3", "e8");
      break;
  }
  return g;
}

DualGraph build_normal(const NormalBirationalConfig& cfg) {
  if (cfg.t_string.empty())
    throw std::invalid_argument("T-chain must be nonempty");
  if (!hj::is_t_string(cfg.t_string))
    throw std::invalid_argument("chain " + cfg.t_string.to_string() +
                                " is not a T-string");
  if (cfg.t_string.all_twos())
    throw std::invalid_argument("T-chain must not be Du Val");
  if (cfg.attach < 1 || static_cast<std::size_t>(cfg.attach) > cfg.t_string.size())
    throw std::invalid_argument("attachment index out of range");
  if (cfg.duval_tail < 0)
    throw std::invalid_argument("Du Val tail length must be >= 0");

  DualGraph g;
  for (std::size_t i = 0; i < cfg.t_string.size(); ++i)
    g.add_vertex("c" + std::to_string(i + 1), cfg.t_string[i],
                 VertexKind::exceptional);
  for (std::size_t i = 1; i < cfg.t_string.size(); ++i)
    g.add_edge("c" + std::to_string(i), "c" + std::to_string(i + 1));
  g.add_vertex("b", 1, VertexKind::curve);
  g.add_edge("b", "c" + std::to_string(cfg.attach));
  for (int i = 1; i <= cfg.duval_tail; ++i)
    g.add_vertex("d" + std::to_string(i), 2, VertexKind::exceptional);
  if (cfg.duval_tail >= 1) g.add_edge("b", "d1");
  for (int i = 2; i <= cfg.duval_tail; ++i)
    g.add_edge("d" + std::to_string(i - 1), "d" + std::to_string(i));
  return g;
}

// Shared chain layout of the degenerate fiber: reversed m/a expansion, the
// bullet, then the m/(m-a) expansion.  Boundary boxes optional.
DualGraph build_fiber(const Int& m, const Int& a, bool with_boundary) {
  require_order(m, a);
  HJString left = hj::hj_expand(Fraction(m, a));
  HJString right = hj::hj_expand(Fraction(m, m - a));
  DualGraph g;
  if (with_boundary) g.add_vertex("bl", 1, VertexKind::boundary);
  for (std::size_t i = 0; i < left.size(); ++i)
    g.add_vertex("l" + std::to_string(i + 1), left[left.size() - 1 - i],
                 VertexKind::exceptional);
  g.add_vertex("c", 1, VertexKind::curve);
  for (std::size_t i = 0; i < right.size(); ++i)
    g.add_vertex("r" + std::to_string(i + 1), right[i],
                 VertexKind::exceptional);
  if (with_boundary) g.add_vertex("br", 1, VertexKind::boundary);

  if (with_boundary) g.add_edge("bl", "l1");
  for (std::size_t i = 1; i < left.size(); ++i)
    g.add_edge("l" + std::to_string(i), "l" + std::to_string(i + 1));
  g.add_edge("c", "l" + std::to_string(left.size()));
  g.add_edge("c", "r1");
  for (std::size_t i = 1; i < right.size(); ++i)
    g.add_edge("r" + std::to_string(i), "r" + std::to_string(i + 1));
  if (with_boundary) g.add_edge("br", "r" + std::to_string(right.size()));
  return g;
}

DualGraph build_reducible(const NonnormalReducibleConfig& cfg) {
  require_order(cfg.m, cfg.a);
  if (cfg.c1_sq > -1 || cfg.c2_sq > -1)
    throw std::invalid_argument("curve self-intersections must be <= -1");
  HJString left = hj::hj_expand(Fraction(cfg.m, cfg.a));
  HJString right = hj::hj_expand(Fraction(cfg.m, cfg.m - cfg.a));
  DualGraph g;
  g.add_vertex("bl", 1, VertexKind::boundary);
  for (std::size_t i = 0; i < left.size(); ++i)
    g.add_vertex("l" + std::to_string(i + 1), left[left.size() - 1 - i],
                 VertexKind::exceptional);
  g.add_vertex("x1", -cfg.c1_sq, VertexKind::curve);
  for (std::size_t i = 0; i < cfg.delta3.size(); ++i)
    g.add_vertex("d" + std::to_string(i + 1), cfg.delta3[i],
                 VertexKind::exceptional);
  g.add_vertex("x2", -cfg.c2_sq, VertexKind::curve);
  for (std::size_t i = 0; i < right.size(); ++i)
    g.add_vertex("r" + std::to_string(i + 1), right[i],
                 VertexKind::exceptional);
  g.add_vertex("br", 1, VertexKind::boundary);

  g.add_edge("bl", "l1");
  for (std::size_t i = 1; i < left.size(); ++i)
    g.add_edge("l" + std::to_string(i), "l" + std::to_string(i + 1));
  g.add_edge("l" + std::to_string(left.size()), "x1");
  if (cfg.delta3.empty()) {
    g.add_edge("x1", "x2");
  } else {
    g.add_edge("x1", "d1");
    for (std::size_t i = 1; i < cfg.delta3.size(); ++i)
      g.add_edge("d" + std::to_string(i), "d" + std::to_string(i + 1));
    g.add_edge("d" + std::to_string(cfg.delta3.size()), "x2");
  }
  g.add_edge("x2", "r1");
  for (std::size_t i = 1; i < right.size(); ++i)
    g.add_edge("r" + std::to_string(i), "r" + std::to_string(i + 1));
  g.add_edge("br", "r" + std::to_string(right.size()));
  return g;
}

}  // namespace

std::string family_name(const GermConfig& cfg) {
  struct Visitor {
    std::string operator()(const Cd3Config& c) const {
      switch (c.kind) {
        case Cd3Kind::simple: return "cd3_simple";
        case Cd3Kind::double_: return "cd3_double";
        case Cd3Kind::triple: return "cd3_triple";
      }
      throw std::logic_error("unreachable cd3 kind");
    }
    std::string operator()(const NormalBirationalConfig&) const {
      return "normal_birational";
    }
    std::string operator()(const NormalConicConfig&) const {
      return "normal_conic";
    }
    std::string operator()(const NonnormalIrreducibleConfig&) const {
      return "nonnormal_irreducible";
    }
    std::string operator()(const NonnormalReducibleConfig&) const {
      return "nonnormal_reducible";
    }
    std::string operator()(const PltFibrationConfig&) const {
      return "plt_fibration";
    }
  };
  return std::visit(Visitor{}, cfg);
}

DualGraph build_germ(const GermConfig& cfg) {
  struct Visitor {
    DualGraph operator()(const Cd3Config& c) const { return build_cd3(c); }
    DualGraph operator()(const NormalBirationalConfig& c) const {
      return build_normal(c);
    }
    DualGraph operator()(const NormalConicConfig&) const {
      return build_normal(NormalBirationalConfig{HJString{4}, 1, 3});
    }
    DualGraph operator()(const NonnormalIrreducibleConfig& c) const {
      return build_fiber(c.m, c.a, true);
    }
    DualGraph operator()(const NonnormalReducibleConfig& c) const {
      return build_reducible(c);
    }
    DualGraph operator()(const PltFibrationConfig& c) const {
      return build_fiber(c.m, c.a, false);
    }
  };
  return std::visit(Visitor{}, cfg);
}

bool GermReport::ok() const {
  for (const Check& c : checks)
    if (!c.ok) return false;
  return true;
}

namespace {

// Shared tail of the two report builders: record definiteness, contract when
// definite, optionally insist on a specific Du Val image.
GermReport run_contraction_report(DualGraph g,
                                  const std::optional<std::string>& want_image) {
  graph::DefinitenessResult def = graph::definiteness(g);
  GermReport r{std::move(g), std::move(def), {}, std::nullopt, std::nullopt};
  bool nd = r.definiteness.cls == graph::Definiteness::negative_definite;
  r.checks.push_back(Check{"negative_definite", nd,
                           graph::definiteness_token(r.definiteness.cls)});
  if (nd) {
    graph::ContractionResult res = graph::minimal_model(r.g);
    r.contracted_image = res.graph;
    r.image_type = graph::classify_du_val(res.graph);
  }
  if (want_image) {
    bool hit = r.image_type && r.image_type->name() == *want_image;
    r.checks.push_back(Check{
        "du_val_image", hit,
        "expected " + *want_image + ", got " +
            (r.image_type ? r.image_type->name() : std::string("none"))});
  }
  return r;
}

}  // namespace

GermReport check_cd3(const Cd3Config& cfg) {
  DualGraph g = build_germ(cfg);
  std::optional<std::string> want;
  if (cfg.kind == Cd3Kind::triple) want = "E6";
  else if (cfg.tail == 1)
    want = cfg.kind == Cd3Kind::simple ? "A2" : "D4";
  return run_contraction_report(std::move(g), want);
}

GermReport check_normal_h(const NormalBirationalConfig& cfg) {
  DualGraph g = build_germ(cfg);
  graph::DefinitenessResult def = graph::definiteness(g);
  GermReport r{std::move(g), std::move(def), {}, std::nullopt, std::nullopt};
  bool acceptable = r.definiteness.cls != graph::Definiteness::indefinite;
  r.checks.push_back(Check{"definiteness", acceptable,
                           graph::definiteness_token(r.definiteness.cls)});
  if (r.definiteness.cls == graph::Definiteness::negative_definite) {
    graph::ContractionResult res = graph::minimal_model(r.g);
    r.contracted_image = res.graph;
    r.image_type = graph::classify_du_val(res.graph);
  }
  return r;
}

GlueSearchResult verify_duval_glue_claim(const Int& max_m) {
  GlueSearchResult res{true, 0, {}};
  for (Int m = 2; m <= max_m; ++m) {
    for (Int a = 1; a < m; ++a) {
      if (gcd(m, a) != 1) continue;
      HJString left = hj::hj_expand(Fraction(m, a));
      HJString right = hj::hj_expand(Fraction(m, m - a));
      std::vector<Int> base;
      for (std::size_t i = 0; i < left.size(); ++i)
        base.push_back(left[left.size() - 1 - i]);
      base.push_back(0);  // slot for the central weight
      for (std::size_t i = 0; i < right.size(); ++i)
        base.push_back(right[i]);
      for (Int c = 2; c <= max_m; ++c) {
        base[left.size()] = c;
        HJString glued{base};
        ++res.checked;
        if (hj::is_t_string(glued) && !glued.all_twos()) {
          res.ok = false;
          res.counterexamples.push_back(GlueCounterexample{m, a, c, glued});
        }
      }
    }
  }
  return res;
}

bool nonnormal_criterion(const graph::DualGraph& g) {
  bool any_curve = false;
  for (const auto& v : g.vertices())
    if (v.compact() && v.kind == VertexKind::curve) any_curve = true;
  if (!any_curve) return true;
  Cycle z = graph::fundamental_cycle(g);
  for (const auto& v : g.vertices()) {
    if (!v.compact() || v.kind != VertexKind::curve) continue;
    if (graph::cycle_coeff(z, v.id) <= 1) return false;
  }
  return true;
}

MuTrivialDivisors mu_trivial_divisors(const MuTrivialConfig& cfg) {
  if (cfg.a < 2 || cfg.b < 2)
    throw std::invalid_argument("arm parameters must be >= 2");
  bool dbl = cfg.shape == MuTrivialShape::double3;
  if (dbl && cfg.c < 2)
    throw std::invalid_argument("third parameter must be >= 2");

  // Walk the chain left to right, collecting (id, weight).
  std::vector<std::pair<std::string, Int>> spine;
  long a = cfg.a.get_si(), b = cfg.b.get_si(), c = dbl ? cfg.c.get_si() : 0;
  for (long i = 1; i <= a - 2; ++i) spine.emplace_back("x" + std::to_string(i), 2);
  if (dbl) {
    spine.emplace_back("z1", 3);
    for (long j = 1; j <= b - 2; ++j)
      spine.emplace_back("w" + std::to_string(j), 2);
    spine.emplace_back("z2", 3);
    for (long k = 1; k <= c - 2; ++k)
      spine.emplace_back("y" + std::to_string(k), 2);
  } else {
    spine.emplace_back("z", 4);
    for (long j = 1; j <= b - 2; ++j)
      spine.emplace_back("y" + std::to_string(j), 2);
  }

  MuTrivialDivisors out;
  out.g.add_vertex("c1", 1, VertexKind::curve);
  for (const auto& [id, w] : spine) {
    out.g.add_vertex(id, w, VertexKind::exceptional);
    out.interior.push_back(id);
  }
  out.g.add_vertex("c2", 1, VertexKind::curve);
  std::string prev = "c1";
  for (const auto& [id, w] : spine) {
    (void)w;
    out.g.add_edge(prev, id);
    prev = id;
  }
  out.g.add_edge(prev, "c2");

  // Coefficient rows: m_A is reduced on the left flank, m_B its mirror, and
  // m_C the row that stays 1 on the central part.
  auto row_a = [&](long aa, long bb, long cc) {
    Cycle m;
    m["c1"] = 1;
    for (long i = 1; i <= aa - 2; ++i) m["x" + std::to_string(i)] = 1;
    if (dbl) {
      m["z1"] = 1;
      for (long j = 1; j <= bb - 2; ++j) m["w" + std::to_string(j)] = j + 1;
      m["z2"] = bb;
      for (long k = 1; k <= cc - 2; ++k)
        m["y" + std::to_string(k)] = bb + k * (bb + 1);
      m["c2"] = bb * cc + cc - 1;
    } else {
      m["z"] = 1;
      for (long j = 1; j <= bb - 2; ++j) m["y" + std::to_string(j)] = 2 * j + 1;
      m["c2"] = 2 * bb - 1;
    }
    return m;
  };
  out.m_a = row_a(a, b, c);

  out.m_c["c1"] = a;
  for (long i = 1; i <= a - 2; ++i) out.m_c["x" + std::to_string(i)] = a - i;
  if (dbl) {
    out.m_c["z1"] = 1;
    for (long j = 1; j <= b - 2; ++j) out.m_c["w" + std::to_string(j)] = 1;
    out.m_c["z2"] = 1;
    for (long k = 1; k <= c - 2; ++k) out.m_c["y" + std::to_string(k)] = k + 1;
    out.m_c["c2"] = c;
  } else {
    out.m_c["z"] = 1;
    for (long j = 1; j <= b - 2; ++j) out.m_c["y" + std::to_string(j)] = j + 1;
    out.m_c["c2"] = b;
  }

  // m_B: mirror image of m_A (swap the roles of the two ends).
  if (dbl) {
    out.m_b["c2"] = 1;
    for (long k = 1; k <= c - 2; ++k) out.m_b["y" + std::to_string(k)] = 1;
    out.m_b["z2"] = 1;
    for (long j = 1; j <= b - 2; ++j) out.m_b["w" + std::to_string(j)] = b - j;
    out.m_b["z1"] = b;
    for (long i = 1; i <= a - 2; ++i)
      out.m_b["x" + std::to_string(i)] = b + (a - 1 - i) * (b + 1);
    out.m_b["c1"] = a * b + a - 1;
  } else {
    out.m_b["c2"] = 1;
    for (long j = 1; j <= b - 2; ++j) out.m_b["y" + std::to_string(j)] = 1;
    out.m_b["z"] = 1;
    for (long i = 1; i <= a - 2; ++i)
      out.m_b["x" + std::to_string(i)] = 2 * (a - i) - 1;
    out.m_b["c1"] = 2 * a - 1;
  }
  return out;
}

bool emb_dim_bound_check(const hj::HJString& delta3) {
  Int excess = delta3.entry_sum() - 2 * Int(delta3.size());
  return excess <= 2;
}

int zeta_invariant(const hj::HJString& delta3, bool q_smooth) {
  if (q_smooth) {
    if (!delta3.empty())
      throw std::invalid_argument("smooth point cannot carry a chain");
    return 1;
  }
  if (delta3.empty())
    throw std::invalid_argument("singular point needs a nonempty chain");
  Int excess = delta3.entry_sum() - 2 * Int(delta3.size());
  if (excess == 0) return 2;
  if (excess == 1) return 3;
  if (excess == 2) return 4;
  throw std::invalid_argument("chain excess exceeds 2; no such cusp point");
}

Int smoothing_margin_remark(const Int& c1_sq, const Int& c2_sq,
                            const hj::HJString& delta3) {
  Int excess = delta3.entry_sum() - 2 * Int(delta3.size());
  return c1_sq + c2_sq + 5 - excess;
}

Int smoothing_margin_delta(const Int& c1_sq, const Int& c2_sq,
                           const hj::HJString& delta3) {
  int zeta = zeta_invariant(delta3, delta3.empty());
  static const int add[] = {4, 4, 3, 2};  // indexed by zeta - 1
  return c1_sq + c2_sq + 1 + add[zeta - 1];
}

bool smoothing_feasible(const Int& c1_sq, const Int& c2_sq,
                        const hj::HJString& delta3) {
  return smoothing_margin_remark(c1_sq, c2_sq, delta3) >= 0;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [var, exp] : exps) {
    if (exp == 0) continue;
    if (!out.empty()) out += " ";
    out += var;
    if (exp != 1) out += "^" + std::to_string(exp);
  }
  return out;
}

PhiReport phi_weighted_check(const Int& m, const Int& a) {
  require_order(m, a);
  PhiReport r{m, a, 2 * m, {}, true};
  std::map<std::string, Int> weight{
      {"x", 1}, {"y", a}, {"z", m - a}, {"u", m}};
  auto add = [&](std::map<std::string, int> exps) {
    Monomial mono{std::move(exps)};
    Int deg = 0;
    for (const auto& [var, exp] : mono.exps) deg += weight.at(var) * exp;
    bool ok = deg == r.expected_degree;
    if (!ok) r.all_ok = false;
    r.entries.push_back(PhiDegreeEntry{std::move(mono), std::move(deg), ok});
  };
  long ml = m.get_si(), al = a.get_si();
  // the equation itself ...
  add({{"x", static_cast<int>(2 * ml - 2 * al)}, {"y", 2}});
  add({{"x", static_cast<int>(2 * al)}, {"z", 2}});
  add({{"y", 1}, {"z", 1}, {"u", 1}});
  // ... and the five general perturbation monomials
  add({{"x", static_cast<int>(2 * ml - al)}, {"y", 1}});
  add({{"x", static_cast<int>(ml - al)}, {"y", 1}, {"u", 1}});
  add({{"x", static_cast<int>(2 * ml)}});
  add({{"x", static_cast<int>(ml)}, {"u", 1}});
  add({{"u", 2}});
  return r;
}

}  // namespace germcalc::germ
