#pragma once
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "germcalc/numeric.hpp"

// Hirzebruch-Jung continued fractions and T-strings.
//
// A string [a1,...,ar] with all ai >= 2 denotes the continued fraction
//
//     a1 - 1/(a2 - 1/(... - 1/ar))  =  m/q,   gcd(m,q) = 1,  0 < q < m,
//
// and encodes the minimal resolution of the cyclic quotient singularity
// 1/m(1,q): a chain of rational curves with self-intersections -a1,...,-ar.
// The expansion is unique, and the empty string stands for the smooth case
// m/q = 1/1.  The conjugate of a string is the expansion of m/(m-q).
//
// A string is "of type T" when its singularity admits a Q-Gorenstein
// one-parameter smoothing; for 1/m(1,q) this is exactly the congruence
// (1+q)^2 = 0 (mod m).  Du Val chains [2,...,2] count as T here.  The
// non-Du-Val T-strings are generated from the seeds [4], [3,3], [3,2,..,2,3]
// by the two steps  s -> [2, s..., last+1]  and  s -> [first+1, ...s, 2].

namespace germcalc::hj {

class HJString {
 public:
  HJString() = default;
  explicit HJString(std::vector<Int> entries);  // throws if some entry < 2
  HJString(std::initializer_list<long> entries);

  const std::vector<Int>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Int& operator[](std::size_t i) const { return entries_[i]; }

  Int entry_sum() const;
  bool all_twos() const;  // vacuously true for the empty string
  HJString reversed() const;
  std::string to_string() const;  // "[3,2,3]", "[]" for empty

  // "3,2,3" or "[3,2,3]"; "[]" or "-" mean the empty string.
  static HJString parse(const std::string& text);

  bool operator==(const HJString&) const = default;

 private:
  std::vector<Int> entries_;
};

// Order by (length, entries); the canonical enumeration order.
bool length_lex_less(const HJString& a, const HJString& b);

// m/q in lowest terms with 1 <= q <= m; q = m only for the smooth 1/1.
struct Fraction {
  Int m, q;
  Fraction(Int m_, Int q_);  // validates the invariant
  bool operator==(const Fraction&) const = default;
};

Fraction hj_eval(const HJString& s);    // [] -> 1/1
HJString hj_expand(const Fraction& f);  // unique expansion; 1/1 -> []

HJString conjugate(const HJString& s);  // expansion of m/(m-q); [] -> []
bool is_conjugate_pair(const HJString& a, const HJString& b);

bool is_t_string(const HJString& s);  // throws on the empty string

// All T-strings with entry sum <= bound, sorted by (length, entries).
// Du Val chains [2,...,2] are included only when include_du_val is set.
std::vector<HJString> enumerate_t_strings(const Int& max_entry_sum,
                                          bool include_du_val = false);

// Embedding dimension of the cyclic quotient: 3 + sum(ai - 2).
Int emb_dim_cyclic(const HJString& s);  // throws on the empty string

}  // namespace germcalc::hj
