#pragma once
// Test-side helpers for exhaustive sweeps over small weighted trees:
//
//   * enumeration of free tree shapes up to 8 vertices,
//   * an exact int64 rational classifier for the associated quadratic forms
//     (independent of the library's GMP path; values stay far below 2^63
//     at these sizes),
//   * a packed canonical code for weighted trees, to sweep isomorphism
//     classes exactly once,
//   * the brute-force minimality certificate for fundamental cycles: no
//     nonzero cycle strictly inside the candidate box is anti-nef.
//
// Everything here is deliberately small-scale and self-contained so the
// sweeps can serve as an oracle for the library rather than leaning on it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeenum {

constexpr int kMaxN = 8;

// --- exact rationals on int64 --------------------------------------------

struct R64 {
  long long n = 0, d = 1;
  void reduce() {
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n == 0) d = 1;
  }
  static R64 of(long long v) { return {v, 1}; }
  R64 operator+(R64 o) const { R64 r{n * o.d + o.n * d, d * o.d}; r.reduce(); return r; }
  R64 operator-(R64 o) const { R64 r{n * o.d - o.n * d, d * o.d}; r.reduce(); return r; }
  R64 operator*(R64 o) const { R64 r{n * o.n, d * o.d}; r.reduce(); return r; }
  R64 operator/(R64 o) const {
    if (o.n == 0) throw std::runtime_error("R64 division by zero");
    R64 r{n * o.d, d * o.n};
    r.reduce();
    return r;
  }
  int sign() const { return n > 0 ? 1 : n < 0 ? -1 : 0; }
};

// --- free tree shapes -----------------------------------------------------

struct TreeShape {
  int n = 0;
  std::vector<std::pair<int, int>> edges;       // parent < child pairs
  std::vector<std::vector<int>> adj;            // adjacency lists
  std::vector<int> centers;                     // 1 or 2 tree centers
};

namespace detail {

// Rooted AHU code as a string; children codes sorted.
inline std::string rooted_code(const std::vector<std::vector<int>>& adj,
                               int v, int parent) {
  std::vector<std::string> kids;
  for (int u : adj[v])
    if (u != parent) kids.push_back(rooted_code(adj, u, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

inline std::vector<int> tree_centers(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 1) return {0};
  std::vector<int> deg(n), order;
  for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(adj[i].size());
  std::vector<int> layer;
  std::vector<bool> removed(n, false);
  for (int i = 0; i < n; ++i)
    if (deg[i] == 1) layer.push_back(i);
  int left = n;
  while (left > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = true;
      --left;
      for (int u : adj[v])
        if (!removed[u] && --deg[u] == 1) next.push_back(u);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int i = 0; i < n; ++i)
    if (!removed[i]) centers.push_back(i);
  return centers;
}

inline std::string free_code(const std::vector<std::vector<int>>& adj) {
  std::string best;
  for (int c : tree_centers(adj)) {
    std::string code = rooted_code(adj, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace detail

// All free trees with 1..max_n vertices, one representative per isomorphism
// class, enumerated from parent arrays and deduplicated by canonical code.
inline std::vector<TreeShape> enumerate_tree_shapes(int max_n) {
  std::vector<TreeShape> shapes;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::string> seen;
    std::vector<int> parent(n, -1);
    // Odometer over parent choices: parent[i] in [0, i-1].
    std::vector<int> idx(n, 0);
    while (true) {
      std::vector<std::vector<int>> adj(n);
      for (int i = 1; i < n; ++i) {
        adj[i].push_back(idx[i]);
        adj[idx[i]].push_back(i);
      }
      std::string code = detail::free_code(adj);
      if (std::find(seen.begin(), seen.end(), code) == seen.end()) {
        seen.push_back(code);
        TreeShape s;
        s.n = n;
        for (int i = 1; i < n; ++i) s.edges.push_back({idx[i], i});
        s.adj = adj;
        s.centers = detail::tree_centers(adj);
        shapes.push_back(std::move(s));
      }
      int i = n - 1;
      while (i >= 1 && idx[i] == i - 1) idx[i--] = 0;
      if (i < 1) break;
      ++idx[i];
    }
  }
  return shapes;
}

// Frozen free-tree counts for n = 1..8; callers assert against these so a
// broken enumeration cannot silently shrink a sweep.
inline constexpr std::array<int, 9> kFreeTreeCounts = {0, 1, 1, 1, 2, 3, 6, 11, 23};

// --- exact classification of the intersection form -----------------------

enum class Class3 { nd, nsd, indef };

// Classify X (symmetric, X = diag(weights) - edge multiplicities) by
// symmetric elimination: positive pivots are eliminated, a negative pivot
// means indefinite, a zero pivot with a nonzero residual row means
// indefinite, and a zero pivot with a zero row is a kernel direction.
inline Class3 classify_form(int n, const std::array<std::array<long long, kMaxN>, kMaxN>& x0) {
  std::array<std::array<R64, kMaxN>, kMaxN> x;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[i][j] = R64::of(x0[i][j]);
  bool kernel = false;
  for (int k = 0; k < n; ++k) {
    int s = x[k][k].sign();
    if (s < 0) return Class3::indef;
    if (s == 0) {
      for (int j = k + 1; j < n; ++j)
        if (x[k][j].sign() != 0) return Class3::indef;
      kernel = true;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      if (x[i][k].sign() == 0) continue;
      R64 f = x[i][k] / x[k][k];
      for (int j = k; j < n; ++j) x[i][j] = x[i][j] - f * x[k][j];
    }
  }
  return kernel ? Class3::nsd : Class3::nd;
}

// Fast tree-only negative-definiteness test: eliminate leaves inward.  The
// order never matters for the verdict on a tree because each leaf touches
// only its parent.
inline bool tree_negative_definite(const TreeShape& s, const std::array<int, kMaxN>& w) {
  int n = s.n;
  std::array<R64, kMaxN> val;
  std::array<int, kMaxN> deg{};
  std::array<bool, kMaxN> done{};
  for (int i = 0; i < n; ++i) {
    val[i] = R64::of(w[i]);
    deg[i] = static_cast<int>(s.adj[i].size());
    done[i] = false;
  }
  std::array<int, kMaxN> stack;
  int top = 0;
  for (int i = 0; i < n; ++i)
    if (deg[i] <= 1) stack[top++] = i;
  while (top > 0) {
    int v = stack[--top];
    if (done[v]) continue;
    done[v] = true;
    if (val[v].sign() <= 0) return false;  // nonpositive pivot
    int parent = -1;
    for (int u : s.adj[v])
      if (!done[u]) { parent = u; break; }
    if (parent < 0) continue;  // root: its pivot was just checked
    val[parent] = val[parent] - R64{1, 1} / val[v];
    if (--deg[parent] <= 1) stack[top++] = parent;
  }
  return true;
}

// --- canonical code for weighted trees ------------------------------------

namespace detail {

struct PackedCode {
  std::uint64_t bits = 0;
  int len = 0;
  bool operator<(const PackedCode& o) const {
    return len != o.len ? len < o.len : bits < o.bits;
  }
  void append(const PackedCode& o) {
    bits = (bits << o.len) | o.bits;
    len += o.len;
  }
};

// Per vertex: 1, weight (3 bits), sorted children codes, 0.  At most
// 5 bits per vertex, 40 bits total for n <= 8 — fits one uint64 exactly.
inline PackedCode weighted_rooted(const std::vector<std::vector<int>>& adj,
                                  const std::array<int, kMaxN>& w, int v,
                                  int parent) {
  std::vector<PackedCode> kids;
  for (int u : adj[v])
    if (u != parent) kids.push_back(weighted_rooted(adj, w, u, v));
  std::sort(kids.begin(), kids.end());
  PackedCode out{1, 1};
  out.bits = (out.bits << 3) | static_cast<std::uint64_t>(w[v] & 7);
  out.len += 3;
  for (const auto& k : kids) out.append(k);
  out.bits <<= 1;
  out.len += 1;
  return out;
}

}  // namespace detail

// Canonical code of a weighted tree: minimum of the rooted codes over the
// (weight-independent) tree centers.  Weights must fit 3 bits.
inline std::uint64_t weighted_tree_code(const TreeShape& s,
                                        const std::array<int, kMaxN>& w) {
  detail::PackedCode best;
  bool first = true;
  for (int c : s.centers) {
    detail::PackedCode code = detail::weighted_rooted(s.adj, w, c, -1);
    if (first || code < best) { best = code; first = false; }
  }
  return best.bits;
}

// --- fundamental-cycle box oracle -----------------------------------------

// Pairing of cycle z with the vertex v: -w_v z_v + sum of neighbors.
inline long long pairing_at(const TreeShape& s, const std::array<int, kMaxN>& w,
                            const std::array<long long, kMaxN>& z, int v) {
  long long p = -static_cast<long long>(w[v]) * z[v];
  for (int u : s.adj[v]) p += z[u];
  return p;
}

inline bool anti_nef(const TreeShape& s, const std::array<int, kMaxN>& w,
                     const std::array<long long, kMaxN>& z) {
  for (int v = 0; v < s.n; ++v)
    if (pairing_at(s, w, z, v) > 0) return false;
  return true;
}

// Certifies that cand is the fundamental cycle: it is anti-nef, strictly
// positive, and no other cycle in the box [1, cand] is anti-nef.  (Anti-nef
// cycles are closed under componentwise min and have full support on a
// connected graph, so that box is exhaustive.)  Pairings are maintained
// incrementally while the odometer walks the box.  Throws if the box is
// unexpectedly large — nothing may be skipped silently.
inline bool box_minimal_fundamental_cycle(const TreeShape& s,
                                          const std::array<int, kMaxN>& w,
                                          const std::array<long long, kMaxN>& cand,
                                          long long box_limit = 12000000) {
  int n = s.n;
  long long box = 1;
  for (int i = 0; i < n; ++i) {
    if (cand[i] < 1) return false;  // full support is part of the claim
    box *= cand[i];
    if (box > box_limit)
      throw std::runtime_error("fundamental-cycle box larger than the cap");
  }
  if (!anti_nef(s, w, cand)) return false;
  std::array<long long, kMaxN> z{}, pr{};
  int violations = 0, at_cand = 0;
  for (int i = 0; i < n; ++i) z[i] = 1;
  for (int v = 0; v < n; ++v) {
    pr[v] = pairing_at(s, w, z, v);
    if (pr[v] > 0) ++violations;
    if (z[v] == cand[v]) ++at_cand;
  }
  auto bump = [&](int t, long long delta) {
    violations -= pr[t] > 0 ? 1 : 0;
    pr[t] += delta;
    violations += pr[t] > 0 ? 1 : 0;
  };
  auto set_coord = [&](int v, long long value) {
    long long d = value - z[v];
    if (d == 0) return;
    at_cand -= z[v] == cand[v] ? 1 : 0;
    z[v] = value;
    at_cand += z[v] == cand[v] ? 1 : 0;
    bump(v, -static_cast<long long>(w[v]) * d);
    for (int u : s.adj[v]) bump(u, d);
  };
  while (true) {
    if (violations == 0 && at_cand != n)
      return false;  // something smaller is anti-nef
    int i = 0;
    while (i < n && z[i] == cand[i]) set_coord(i++, 1);
    if (i == n) break;
    set_coord(i, z[i] + 1);
  }
  return true;
}

// The least strictly positive anti-nef cycle, by ceiling propagation from
// the all-ones vector: raise z_v to ceil((sum of neighbors) / w_v) until
// nothing moves.  Every step preserves "z <= x for each positive anti-nef
// x" (x satisfies the same ceiling bound), and the stopping condition
// z_v >= ceil(.../w_v) at every vertex is exactly anti-nefness, so the
// result is anti-nef and below everything anti-nef: the least element.
// Together with full support on connected graphs this certifies candidates
// of any size where the box search would be astronomically large.  Diverges
// beyond the cap when no positive anti-nef cycle exists (indefinite forms).
inline std::array<long long, kMaxN> least_anti_nef_fixpoint(
    const TreeShape& s, const std::array<int, kMaxN>& w,
    long long cap = 1000000) {
  std::array<long long, kMaxN> z{};
  for (int i = 0; i < s.n; ++i) z[i] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < s.n; ++v) {
      long long need = 0;
      for (int u : s.adj[v]) need += z[u];
      if (w[v] == 0 && need > 0)
        throw std::runtime_error(
            "anti-nef fixpoint diverged (no positive anti-nef cycle?)");
      long long lb = w[v] == 0 ? 1 : (need + w[v] - 1) / w[v];
      if (lb > z[v]) {
        z[v] = lb;
        changed = true;
        if (z[v] > cap)
          throw std::runtime_error(
              "anti-nef fixpoint diverged (no positive anti-nef cycle?)");
      }
    }
  }
  return z;
}

// --- blow-down mirror on dense int data -----------------------------------

struct DenseGraph {
  int n = 0;
  std::array<int, kMaxN> w{};
  std::array<std::array<int, kMaxN>, kMaxN> mult{};
};

inline DenseGraph dense_from_shape(const TreeShape& s, const std::array<int, kMaxN>& w) {
  DenseGraph g;
  g.n = s.n;
  g.w = w;
  for (auto [a, b] : s.edges) {
    g.mult[a][b] = 1;
    g.mult[b][a] = 1;
  }
  return g;
}

// Contract vertex v (weight 1, simple edges): drop it, lower each neighbor's
// weight by 1, and add one edge between every pair of former neighbors.
inline DenseGraph dense_blow_down(const DenseGraph& g, int v) {
  if (g.w[v] != 1) throw std::runtime_error("blow-down mirror: weight must be 1");
  std::vector<int> nb;
  for (int u = 0; u < g.n; ++u)
    if (u != v && g.mult[v][u] > 0) {
      if (g.mult[v][u] != 1)
        throw std::runtime_error("blow-down mirror: edge not simple");
      nb.push_back(u);
    }
  DenseGraph out;
  out.n = g.n - 1;
  std::array<int, kMaxN> remap{};
  int k = 0;
  for (int u = 0; u < g.n; ++u)
    if (u != v) remap[u] = k++;
  for (int u = 0; u < g.n; ++u) {
    if (u == v) continue;
    out.w[remap[u]] = g.w[u];
    for (int t = u + 1; t < g.n; ++t)
      if (t != v) out.mult[remap[u]][remap[t]] = out.mult[remap[t]][remap[u]] = g.mult[u][t];
  }
  for (int u : nb) out.w[remap[u]] -= 1;
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      out.mult[remap[nb[i]]][remap[nb[j]]] += 1;
      out.mult[remap[nb[j]]][remap[nb[i]]] += 1;
    }
  return out;
}

inline Class3 classify_dense(const DenseGraph& g) {
  std::array<std::array<long long, kMaxN>, kMaxN> x{};
  for (int i = 0; i < g.n; ++i) {
    x[i][i] = g.w[i];
    for (int j = 0; j < g.n; ++j)
      if (j != i) x[i][j] = -g.mult[i][j];
  }
  return classify_form(g.n, x);
}

}  // namespace treeenum
