#include "germcalc/hj.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <utility>

namespace germcalc::hj {

namespace {

void require_entry(const Int& e) {
  if (e < 2)
    throw std::invalid_argument("string entry below 2: " + e.get_str());
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Int parse_entry(const std::string& raw, const std::string& whole) {
  std::string t = trim(raw);
  if (t.empty())
    throw std::invalid_argument("empty entry in string '" + whole + "'");
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad entry '" + t + "' in string '" + whole +
                                  "'");
  return Int(t);
}

}  // namespace

HJString::HJString(std::vector<Int> entries) : entries_(std::move(entries)) {
  for (const Int& e : entries_) require_entry(e);
}

HJString::HJString(std::initializer_list<long> entries) {
  entries_.reserve(entries.size());
  for (long e : entries) {
    Int v(e);
    require_entry(v);
    entries_.push_back(std::move(v));
  }
}

Int HJString::entry_sum() const {
  Int s = 0;
  for (const Int& e : entries_) s += e;
  return s;
}

bool HJString::all_twos() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Int& e) { return e == 2; });
}

HJString HJString::reversed() const {
  std::vector<Int> r(entries_.rbegin(), entries_.rend());
  return HJString(std::move(r));
}

std::string HJString::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += entries_[i].get_str();
  }
  out += ']';
  return out;
}

HJString HJString::parse(const std::string& text) {
  std::string t = trim(text);
  if (t.empty())
    throw std::invalid_argument("cannot parse an empty string literal");
  if (t == "-") return HJString{};
  if (t.front() == '[') {
    if (t.size() < 2 || t.back() != ']')
      throw std::invalid_argument("unbalanced brackets in '" + text + "'");
    t = trim(t.substr(1, t.size() - 2));
    if (t.empty()) return HJString{};
  }
  std::vector<Int> entries;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = t.find(',', pos);
    std::string piece =
        comma == std::string::npos ? t.substr(pos) : t.substr(pos, comma - pos);
    entries.push_back(parse_entry(piece, text));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return HJString(std::move(entries));
}

bool length_lex_less(const HJString& a, const HJString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.entries() < b.entries();
}

Fraction::Fraction(Int m_, Int q_) : m(std::move(m_)), q(std::move(q_)) {
  if (m < 1 || q < 1 || q > m)
    throw std::invalid_argument("fraction " + m.get_str() + "/" + q.get_str() +
                                " out of range");
  if (q == m && m != 1)
    throw std::invalid_argument("fraction " + m.get_str() + "/" + q.get_str() +
                                " not in lowest terms");
  if (gcd(m, q) != 1)
    throw std::invalid_argument("fraction " + m.get_str() + "/" + q.get_str() +
                                " not in lowest terms");
}

Fraction hj_eval(const HJString& s) {
  if (s.empty()) return Fraction(1, 1);
  // fold from the right: a - 1/(num/den) = (a*num - den)/num
  Int num = 1, den = 0;
  for (std::size_t i = s.size(); i-- > 0;) {
    Int next = s[i] * num - den;
    den = num;
    num = std::move(next);
  }
  return Fraction(std::move(num), std::move(den));
}

HJString hj_expand(const Fraction& f) {
  Int m = f.m, q = f.q;
  std::vector<Int> entries;
  if (m == 1) return HJString{};
  while (q != 0) {
    Int a = (m + q - 1) / q;  // ceil(m/q)
    Int next_q = a * q - m;
    m = q;
    q = std::move(next_q);
    entries.push_back(std::move(a));
  }
  return HJString(std::move(entries));
}

HJString conjugate(const HJString& s) {
  if (s.empty()) return HJString{};
  Fraction f = hj_eval(s);
  return hj_expand(Fraction(f.m, f.m - f.q));
}

bool is_conjugate_pair(const HJString& a, const HJString& b) {
  return conjugate(a) == b;
}

bool is_t_string(const HJString& s) {
  if (s.empty())
    throw std::invalid_argument("the empty string has no singularity type");
  Fraction f = hj_eval(s);
  return (f.q + 1) * (f.q + 1) % f.m == 0;
}

std::vector<HJString> enumerate_t_strings(const Int& max_entry_sum,
                                          bool include_du_val) {
  std::vector<HJString> out;
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> frontier;

  auto push = [&](std::vector<Int> s) {
    Int sum = 0;
    for (const Int& e : s) sum += e;
    if (sum > max_entry_sum) return;
    if (!seen.insert(s).second) return;
    frontier.push_back(std::move(s));
  };

  // seeds: [4], [3,3], [3,2,...,2,3]
  push({4});
  push({3, 3});
  for (Int k = 1; 6 + 2 * k <= max_entry_sum; ++k) {
    std::vector<Int> s;
    s.push_back(3);
    for (Int i = 0; i < k; ++i) s.push_back(2);
    s.push_back(3);
    push(std::move(s));
  }

  // closure under s -> [2, s..., last+1] and s -> [first+1, ...s, 2]
  while (!frontier.empty()) {
    std::vector<Int> s = std::move(frontier.back());
    frontier.pop_back();

    std::vector<Int> left;
    left.reserve(s.size() + 1);
    left.push_back(2);
    left.insert(left.end(), s.begin(), s.end());
    left.back() += 1;
    push(std::move(left));

    std::vector<Int> right;
    right.reserve(s.size() + 1);
    right.insert(right.end(), s.begin(), s.end());
    right.front() += 1;
    right.push_back(2);
    push(std::move(right));

    out.push_back(HJString(std::move(s)));
  }

  if (include_du_val) {
    for (Int k = 1; 2 * k <= max_entry_sum; ++k) {
      std::vector<Int> s;
      for (Int i = 0; i < k; ++i) s.push_back(2);
      out.push_back(HJString(std::move(s)));
    }
  }

  std::sort(out.begin(), out.end(), length_lex_less);
  return out;
}

Int emb_dim_cyclic(const HJString& s) {
  if (s.empty())
    throw std::invalid_argument("embedding dimension needs a singular point");
  Int d = 3;
  for (const Int& e : s.entries()) d += e - 2;
  return d;
}

}  // namespace germcalc::hj
