#include "doctest.h"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "germcalc/hj.hpp"

// Oracle for the continued-fraction value a1 - 1/(a2 - 1/(...)), computed
// directly in rational arithmetic.  Deliberately a different algorithm from
// the library's integer recurrence so the two can check each other.
namespace {

using germcalc::Int;
using germcalc::Rat;
using namespace germcalc::hj;

std::pair<Int, Int> cf_value(const std::vector<long>& entries) {
  if (entries.empty()) return {1, 1};
  Rat v = 0;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    Rat cur = *it;
    if (v != 0) cur -= 1 / v;
    v = cur;  // always > 1 once set, so never divides by zero
  }
  v.canonicalize();
  return {v.get_num(), v.get_den()};
}

std::vector<long> to_longs(const HJString& s) {
  std::vector<long> out;
  for (const Int& e : s.entries()) out.push_back(e.get_si());
  return out;
}

// (1+q)^2 = 0 mod m, with (m,q) taken from the rational oracle.
bool t_by_congruence(const std::vector<long>& entries) {
  auto [m, q] = cf_value(entries);
  return ((1 + q) * (1 + q)) % m == 0;
}

bool all_twos_vec(const std::vector<long>& v) {
  return std::all_of(v.begin(), v.end(), [](long e) { return e == 2; });
}

// All strings with entries >= 2 and entry sum <= bound, any length >= 1.
void all_strings(long bound, std::vector<long>& cur,
                 std::vector<std::vector<long>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (long e = 2; e <= bound; ++e) {
    cur.push_back(e);
    all_strings(bound - e, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<long>> all_strings(long bound) {
  std::vector<long> cur;
  std::vector<std::vector<long>> out;
  all_strings(bound, cur, out);
  return out;
}

}  // namespace

TEST_SUITE("hj") {

TEST_CASE("construction validates entries") {
  CHECK_NOTHROW(HJString{});
  CHECK_NOTHROW(HJString({2, 2, 17}));
  CHECK_THROWS(HJString({1}));
  CHECK_THROWS(HJString({3, 1, 3}));
  CHECK_THROWS(HJString({0}));
  CHECK_THROWS(HJString({-2}));
}

TEST_CASE("basic accessors") {
  HJString s{3, 2, 3};
  CHECK(s.size() == 3);
  CHECK_FALSE(s.empty());
  CHECK(s[0] == 3);
  CHECK(s[1] == 2);
  CHECK(s.entry_sum() == 8);
  CHECK_FALSE(s.all_twos());
  CHECK(HJString{2, 2}.all_twos());
  CHECK(HJString{}.all_twos());  // vacuously
  CHECK(HJString{}.entry_sum() == 0);
  CHECK(HJString{3, 2, 3}.reversed() == HJString{3, 2, 3});
  CHECK(HJString{5, 2}.reversed() == HJString{2, 5});
  CHECK(HJString{}.reversed() == HJString{});
}

TEST_CASE("to_string and parse") {
  CHECK(HJString{3, 2, 3}.to_string() == "[3,2,3]");
  CHECK(HJString{}.to_string() == "[]");
  CHECK(HJString::parse("3,2,3") == HJString{3, 2, 3});
  CHECK(HJString::parse("[3,2,3]") == HJString{3, 2, 3});
  CHECK(HJString::parse(" [ 3 , 2 , 3 ] ") == HJString{3, 2, 3});
  CHECK(HJString::parse("[]") == HJString{});
  CHECK(HJString::parse("-") == HJString{});
  CHECK(HJString::parse("17") == HJString{17});
  CHECK_THROWS(HJString::parse(""));
  CHECK_THROWS(HJString::parse("abc"));
  CHECK_THROWS(HJString::parse("[3,2"));
  CHECK_THROWS(HJString::parse("3,,2"));
  CHECK_THROWS(HJString::parse("3,2,"));
  CHECK_THROWS(HJString::parse("[1,2]"));  // entry < 2
  CHECK_THROWS(HJString::parse("[3,2]]"));
}

TEST_CASE("length-lex order") {
  CHECK(length_lex_less(HJString{4}, HJString{2, 2}));   // shorter first
  CHECK(length_lex_less(HJString{2, 2}, HJString{3, 3}));
  CHECK(length_lex_less(HJString{2}, HJString{4}));
  CHECK_FALSE(length_lex_less(HJString{3, 3}, HJString{3, 3}));
  CHECK_FALSE(length_lex_less(HJString{2, 2}, HJString{4}));
}

TEST_CASE("fraction invariants") {
  CHECK_NOTHROW(Fraction(1, 1));
  CHECK_NOTHROW(Fraction(7, 5));
  CHECK_THROWS(Fraction(4, 2));   // not coprime
  CHECK_THROWS(Fraction(5, 5));
  CHECK_THROWS(Fraction(3, 5));   // q > m
  CHECK_THROWS(Fraction(0, 1));
  CHECK_THROWS(Fraction(5, 0));
  CHECK_THROWS(Fraction(5, -2));
}

TEST_CASE("expansion: frozen values") {
  CHECK(hj_expand(Fraction(1, 1)) == HJString{});
  CHECK(hj_expand(Fraction(2, 1)) == HJString{2});
  CHECK(hj_expand(Fraction(5, 2)) == HJString{3, 2});
  CHECK(hj_expand(Fraction(7, 5)) == HJString{2, 2, 3});
  CHECK(hj_expand(Fraction(7, 2)) == HJString{4, 2});
  CHECK(hj_expand(Fraction(4, 1)) == HJString{4});
  CHECK(hj_expand(Fraction(4, 3)) == HJString{2, 2, 2});
  CHECK(hj_expand(Fraction(9, 4)) == HJString{3, 2, 2, 2});
  CHECK(hj_expand(Fraction(19, 7)) == HJString{3, 4, 2});
  CHECK(hj_expand(Fraction(12, 5)) == HJString{3, 2, 3});
}

TEST_CASE("eval: frozen values and rational oracle") {
  CHECK(hj_eval(HJString{}) == Fraction(1, 1));
  CHECK(hj_eval(HJString{2}) == Fraction(2, 1));
  CHECK(hj_eval(HJString{3, 2}) == Fraction(5, 2));
  CHECK(hj_eval(HJString{2, 2, 3}) == Fraction(7, 5));
  CHECK(hj_eval(HJString{2, 5}) == Fraction(9, 5));
  CHECK(hj_eval(HJString{5, 2}) == Fraction(9, 2));
  CHECK(hj_eval(HJString{3, 2, 3}) == Fraction(12, 5));

  // Every string with entry sum <= 12 evaluates to the same fraction as the
  // direct rational computation.
  for (const auto& v : all_strings(12)) {
    auto [m, q] = cf_value(v);
    Fraction got = hj_eval(HJString(std::vector<Int>(v.begin(), v.end())));
    CHECK(got.m == m);
    CHECK(got.q == q);
  }
}

TEST_CASE("round trip expand/eval for all m <= 500") {
  for (long m = 1; m <= 500; ++m) {
    for (long q = 1; q <= m; ++q) {
      if (gcd(Int(m), Int(q)) != 1) continue;
      if (q == m && m != 1) continue;
      Fraction f(m, q);
      HJString s = hj_expand(f);
      for (const Int& e : s.entries()) CHECK(e >= 2);
      CHECK(hj_eval(s) == f);
    }
  }
}

TEST_CASE("conjugate: frozen values") {
  CHECK(conjugate(HJString{}) == HJString{});
  CHECK(conjugate(HJString{2}) == HJString{2});
  CHECK(conjugate(HJString{4}) == HJString{2, 2, 2});
  CHECK(conjugate(HJString{3, 2}) == HJString{2, 3});
  CHECK(conjugate(HJString{2, 5}) == HJString{3, 2, 2, 2});
  CHECK(is_conjugate_pair(HJString{4}, HJString{2, 2, 2}));
  CHECK(is_conjugate_pair(HJString{}, HJString{}));
  CHECK_FALSE(is_conjugate_pair(HJString{4}, HJString{4}));
  CHECK_FALSE(is_conjugate_pair(HJString{4}, HJString{2, 2}));
}

TEST_CASE("conjugation is an involution and swaps q with m-q") {
  for (long m = 2; m <= 200; ++m) {
    for (long q = 1; q < m; ++q) {
      if (gcd(Int(m), Int(q)) != 1) continue;
      HJString s = hj_expand(Fraction(m, q));
      HJString c = conjugate(s);
      CHECK(hj_eval(c) == Fraction(m, m - q));
      CHECK(conjugate(c) == s);
      CHECK(is_conjugate_pair(s, c));
    }
  }
}

// The three structure laws for a conjugate pair (a, b) of expansions of
// m/q and m/(m-q):
//   (i)   a or b starts with 2 (exactly one of q, m-q exceeds m/2);
//   (ii)  if a = [2, a2, ...] with r > 1, then dropping the leading 2 from a
//         and lowering b's first entry by 1 gives a conjugate pair again,
//         and conversely prepending 2 / raising the first entry preserves
//         conjugacy;
//   (iii) conjugacy is preserved by reversing both strings.
TEST_CASE("conjugate pair structure laws") {
  for (long m = 2; m <= 200; ++m) {
    for (long q = 1; q < m; ++q) {
      if (gcd(Int(m), Int(q)) != 1) continue;
      HJString a = hj_expand(Fraction(m, q));
      HJString b = conjugate(a);

      // (i)
      CHECK((a[0] == 2 || b[0] == 2));

      // (ii), peeling direction
      if (a[0] == 2 && a.size() > 1) {
        REQUIRE(b[0] >= 3);  // both flanks starting with 2 forces m = 2
        std::vector<Int> at(a.entries().begin() + 1, a.entries().end());
        std::vector<Int> bt(b.entries());
        bt[0] -= 1;
        CHECK(is_conjugate_pair(HJString(at), HJString(bt)));
      }

      // (ii), growing direction
      if (!a.empty()) {
        std::vector<Int> a2;
        a2.push_back(2);
        a2.insert(a2.end(), a.entries().begin(), a.entries().end());
        std::vector<Int> b2(b.entries());
        b2[0] += 1;
        CHECK(is_conjugate_pair(HJString(a2), HJString(b2)));
      }

      // (iii)
      CHECK(is_conjugate_pair(a.reversed(), b.reversed()));
    }
  }
}

TEST_CASE("t-strings: frozen values") {
  CHECK(is_t_string(HJString{4}));
  CHECK(is_t_string(HJString{3, 3}));
  CHECK(is_t_string(HJString{2, 5}));
  CHECK(is_t_string(HJString{5, 2}));
  CHECK(is_t_string(HJString{3, 2, 3}));
  CHECK_FALSE(is_t_string(HJString{3}));
  CHECK_FALSE(is_t_string(HJString{4, 2}));
  CHECK_FALSE(is_t_string(HJString{2, 3}));
  // Du Val chains count.
  CHECK(is_t_string(HJString{2}));
  CHECK(is_t_string(HJString{2, 2}));
  CHECK(is_t_string(HJString{2, 2, 2, 2}));
  CHECK_THROWS(is_t_string(HJString{}));
}

TEST_CASE("t-ness is preserved by reversal but not by conjugation") {
  // Reversal sends m/q to m/q' with q q' = 1 mod m, and
  // (1+q')^2 = (q')^2 (1+q)^2 mod m, so the class is reversal-closed.
  for (const auto& v : all_strings(14)) {
    HJString s(std::vector<Int>(v.begin(), v.end()));
    CHECK(is_t_string(s) == is_t_string(s.reversed()));
  }
  // Conjugation does not preserve it: [2,5] is 9/5 with (1+5)^2 = 36 = 0
  // mod 9, but its conjugate [3,2,2,2] is 9/4 with (1+4)^2 = 25 = 7 mod 9.
  CHECK(is_t_string(HJString{2, 5}));
  CHECK(conjugate(HJString{2, 5}) == HJString{3, 2, 2, 2});
  CHECK_FALSE(is_t_string(HJString{3, 2, 2, 2}));
}

TEST_CASE("enumerate_t_strings: frozen small sets") {
  using V = std::vector<HJString>;
  CHECK(enumerate_t_strings(3) == V{});
  CHECK(enumerate_t_strings(6) == V{HJString{4}, HJString{3, 3}});
  CHECK(enumerate_t_strings(8) == V{HJString{4}, HJString{2, 5},
                                    HJString{3, 3}, HJString{5, 2},
                                    HJString{3, 2, 3}});
  CHECK(enumerate_t_strings(6, true) ==
        V{HJString{2}, HJString{4}, HJString{2, 2}, HJString{3, 3},
          HJString{2, 2, 2}});
}

TEST_CASE("enumerate_t_strings equals the congruence filter up to sum 14") {
  for (int du_val = 0; du_val <= 1; ++du_val) {
    std::vector<HJString> expected;
    for (const auto& v : all_strings(14)) {
      if (!du_val && all_twos_vec(v)) continue;
      if (t_by_congruence(v))
        expected.push_back(HJString(std::vector<Int>(v.begin(), v.end())));
    }
    std::sort(expected.begin(), expected.end(), length_lex_less);
    std::vector<HJString> got = enumerate_t_strings(14, du_val != 0);
    CHECK(got == expected);
  }
}

TEST_CASE("enumeration is sorted and duplicate-free") {
  std::vector<HJString> got = enumerate_t_strings(20, true);
  for (std::size_t i = 1; i < got.size(); ++i)
    CHECK(length_lex_less(got[i - 1], got[i]));
}

TEST_CASE("embedding dimension") {
  CHECK(emb_dim_cyclic(HJString{2, 2}) == 3);
  CHECK(emb_dim_cyclic(HJString{3, 3}) == 5);
  CHECK(emb_dim_cyclic(HJString{4}) == 5);
  CHECK(emb_dim_cyclic(HJString{2, 5}) == 6);
  CHECK(emb_dim_cyclic(HJString{2}) == 3);
  CHECK_THROWS(emb_dim_cyclic(HJString{}));
}

}  // TEST_SUITE("hj")
