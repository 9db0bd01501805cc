#pragma once
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "germcalc/dualgraph.hpp"
#include "germcalc/hj.hpp"
#include "germcalc/numeric.hpp"

// Germ configurations: the dual-graph shapes that arise for a general member
// H of |O_X|_C on an extremal curve germ, together with the feasibility
// checks attached to each shape.
//
// Families (the bullet is always a weight-1 curve vertex):
//
//   cd3_simple / cd3_double    [tail a in {0,1}]
//       (tail) - bullet - T-chain body with one extra arm; a = 1 is the
//       divisorial case (image A2 resp. D4), a = 0 the flipping case.
//   cd3_triple                 bullet - E6-shaped body, divisorial only.
//   normal_birational          T-chain c1..cn, bullet under c_r, Du Val
//                              tail of (-2)-vertices hanging off the bullet.
//   normal_conic               the chain o-o-o-bullet-(4): the unique
//                              semidefinite instance of the previous shape.
//   nonnormal_irreducible      box - rev(m/a chain) - bullet - m/(m-a) chain - box.
//   nonnormal_reducible        box - rev(m/a chain) - diamond - Delta3 chain -
//                              diamond - m/(m-a) chain - box, diamond weights
//                              given by the curve self-intersections.
//   plt_fibration              rev(m/a chain) - bullet - m/(m-a) chain: the
//                              degenerate fiber of (P^1 x C)/mu_m(1,a).

namespace germcalc::germ {

enum class Cd3Kind { simple, double_, triple };

struct Cd3Config {
  Cd3Kind kind;
  int tail = 1;  // Du Val tail length; {0,1} for simple/double, 0 for triple
  bool operator==(const Cd3Config&) const = default;
};

struct NormalBirationalConfig {
  hj::HJString t_string;  // non-Du-Val T-string
  int attach = 1;         // 1-based index r of the chain vertex above the bullet
  int duval_tail = 0;     // number of (-2)-vertices behind the bullet
  bool operator==(const NormalBirationalConfig&) const = default;
};

struct NormalConicConfig {
  bool operator==(const NormalConicConfig&) const = default;
};

struct NonnormalIrreducibleConfig {
  Int m, a;  // 2 <= m, 1 <= a < m, gcd(a,m) = 1
  bool operator==(const NonnormalIrreducibleConfig&) const = default;
};

struct NonnormalReducibleConfig {
  Int m, a;
  hj::HJString delta3;  // chain between the two curve components; may be empty
  Int c1_sq, c2_sq;     // curve self-intersections, <= -1
  bool operator==(const NonnormalReducibleConfig&) const = default;
};

struct PltFibrationConfig {
  Int m, a;
  bool operator==(const PltFibrationConfig&) const = default;
};

using GermConfig =
    std::variant<Cd3Config, NormalBirationalConfig, NormalConicConfig,
                 NonnormalIrreducibleConfig, NonnormalReducibleConfig,
                 PltFibrationConfig>;

// Family names as used by the CLI and reports.
std::string family_name(const GermConfig& cfg);

graph::DualGraph build_germ(const GermConfig& cfg);

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

struct GermReport {
  graph::DualGraph g;
  graph::DefinitenessResult definiteness;
  std::vector<Check> checks;
  std::optional<graph::DualGraph> contracted_image;
  std::optional<graph::DuValType> image_type;
  bool ok() const;
};

GermReport check_cd3(const Cd3Config& cfg);
GermReport check_normal_h(const NormalBirationalConfig& cfg);

// Search for T-strings of the glued form [a_r..a_1, c, b_1..b_s] with
// conjugate flanks that are not Du Val; the claim is that none exist.
struct GlueCounterexample {
  Int m, a, c;
  hj::HJString glued;
};

struct GlueSearchResult {
  bool ok;  // no counterexample found
  long checked;
  std::vector<GlueCounterexample> counterexamples;
};

GlueSearchResult verify_duval_glue_claim(const Int& max_m);

// True iff every compact curve-kind vertex has fundamental-cycle
// coefficient > 1 (then no member of the linear system is normal).
bool nonnormal_criterion(const graph::DualGraph& g);

// The two local shapes at the degenerate-cusp point, with the three
// mu-trivial divisors m_A, m_B, m_C supported on Delta3 and the two curve
// components (pairing 0 against every interior vertex).
enum class MuTrivialShape { single4, double3 };

struct MuTrivialConfig {
  MuTrivialShape shape;
  Int a, b;      // arm parameters, >= 2
  Int c = 0;     // third parameter, >= 2 for double3 (ignored for single4)
  bool operator==(const MuTrivialConfig&) const = default;
};

struct MuTrivialDivisors {
  graph::DualGraph g;                 // diamond - interior chain - diamond
  graph::Cycle m_a, m_b, m_c;
  std::vector<std::string> interior;  // the Delta3 vertex ids, left to right
};

MuTrivialDivisors mu_trivial_divisors(const MuTrivialConfig& cfg);

// sum(c_i - 2) <= 2 for the chain at the cusp point.
bool emb_dim_bound_check(const hj::HJString& delta3);

// Degenerate-cusp invariant: 1 smooth, 2 Du Val A_n, 3 when sum(c_i-2) = 1,
// 4 when sum(c_i-2) = 2.  Throws when sum(c_i-2) > 2 or when q_smooth is
// false but delta3 is empty.
int zeta_invariant(const hj::HJString& delta3, bool q_smooth);

// Terminal one-parameter smoothing criterion, in its two equivalent forms:
//   remark form:   C1^2 + C2^2 + 5 - sum(c_i - 2)            (sum 0 if empty)
//   delta form:    C1^2 + C2^2 + 1 + {4,4,3,2}[zeta]
Int smoothing_margin_remark(const Int& c1_sq, const Int& c2_sq,
                            const hj::HJString& delta3);
Int smoothing_margin_delta(const Int& c1_sq, const Int& c2_sq,
                           const hj::HJString& delta3);
bool smoothing_feasible(const Int& c1_sq, const Int& c2_sq,
                        const hj::HJString& delta3);

// Weighted-homogeneity of phi = x^{2m-2a} y^2 + x^{2a} z^2 + yzu and of the
// five perturbation monomials, under weights (x,y,z,u) = (1, a, m-a, m);
// every degree must equal 2m.
struct Monomial {
  std::map<std::string, int> exps;  // variable -> exponent
  std::string to_string() const;    // "x^3 y z^2"
};

struct PhiDegreeEntry {
  Monomial mono;
  Int degree;
  bool ok;
};

struct PhiReport {
  Int m, a;
  Int expected_degree;  // 2m
  std::vector<PhiDegreeEntry> entries;
  bool all_ok;
};

PhiReport phi_weighted_check(const Int& m, const Int& a);

}  // namespace germcalc::germ
