#include "germcalc/dualgraph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace germcalc::graph {

std::string kind_token(VertexKind k) {
  switch (k) {
    case VertexKind::exceptional: return "exc";
    case VertexKind::curve: return "curve";
    case VertexKind::boundary: return "boundary";
  }
  throw std::logic_error("unreachable vertex kind");
}

void DualGraph::add_vertex(std::string id, Int weight, VertexKind kind) {
  if (id.empty()) throw std::invalid_argument("empty vertex id");
  if (weight < 0)
    throw std::invalid_argument("negative weight for vertex '" + id + "'");
  if (index_.count(id))
    throw std::invalid_argument("duplicate vertex '" + id + "'");
  index_.emplace(id, verts_.size());
  verts_.push_back(Vertex{std::move(id), std::move(weight), kind});
}

void DualGraph::add_edge(const std::string& a, const std::string& b,
                         int multiplicity) {
  if (multiplicity < 1)
    throw std::invalid_argument("edge multiplicity must be positive");
  if (a == b) throw std::invalid_argument("loop edge at '" + a + "'");
  if (!has_vertex(a)) throw std::invalid_argument("unknown vertex '" + a + "'");
  if (!has_vertex(b)) throw std::invalid_argument("unknown vertex '" + b + "'");
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  edges_[key] += multiplicity;
}

bool DualGraph::has_vertex(const std::string& id) const {
  return index_.count(id) != 0;
}

const Vertex& DualGraph::vertex(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw std::invalid_argument("unknown vertex '" + id + "'");
  return verts_[it->second];
}

int DualGraph::multiplicity(const std::string& a, const std::string& b) const {
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = edges_.find(key);
  return it == edges_.end() ? 0 : it->second;
}

std::vector<Edge> DualGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [key, mult] : edges_)
    out.push_back(Edge{key.first, key.second, mult});
  return out;  // map order is already (a, b) lexicographic
}

std::vector<std::pair<std::string, int>> DualGraph::neighbors(
    const std::string& id) const {
  if (!has_vertex(id))
    throw std::invalid_argument("unknown vertex '" + id + "'");
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [key, mult] : edges_) {
    if (key.first == id) out.emplace_back(key.second, mult);
    else if (key.second == id) out.emplace_back(key.first, mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> DualGraph::compact_ids() const {
  std::vector<std::string> out;
  for (const Vertex& v : verts_)
    if (v.compact()) out.push_back(v.id);
  return out;
}

bool DualGraph::compact_connected() const {
  std::vector<std::string> ids = compact_ids();
  if (ids.empty()) return true;
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
  std::vector<char> seen(ids.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [key, mult] : edges_) {
      (void)mult;
      const std::string* other = nullptr;
      if (key.first == ids[v]) other = &key.second;
      else if (key.second == ids[v]) other = &key.first;
      if (!other) continue;
      auto it = pos.find(*other);
      if (it == pos.end()) continue;  // boundary does not connect
      if (!seen[it->second]) {
        seen[it->second] = 1;
        ++reached;
        stack.push_back(it->second);
      }
    }
  }
  return reached == ids.size();
}

Int cycle_coeff(const Cycle& z, const std::string& id) {
  auto it = z.find(id);
  return it == z.end() ? Int(0) : it->second;
}

std::string definiteness_token(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::negative_semidefinite: return "negative_semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  throw std::logic_error("unreachable definiteness class");
}

std::vector<std::vector<Int>> intersection_matrix(const DualGraph& g) {
  std::vector<std::string> ids = g.compact_ids();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
  std::vector<std::vector<Int>> m(ids.size(), std::vector<Int>(ids.size(), 0));
  for (std::size_t i = 0; i < ids.size(); ++i) m[i][i] = -g.vertex(ids[i]).weight;
  for (const Edge& e : g.edges()) {
    auto a = pos.find(e.a), b = pos.find(e.b);
    if (a == pos.end() || b == pos.end()) continue;
    m[a->second][b->second] = e.multiplicity;
    m[b->second][a->second] = e.multiplicity;
  }
  return m;
}

namespace {

// Index-based view of the compact part, for the numeric algorithms.
struct CompactView {
  std::vector<std::string> ids;
  std::vector<Int> weight;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, mult)
  std::vector<int> id_order;  // indices sorted by id, for tie-breaks
};

CompactView compact_view(const DualGraph& g) {
  CompactView v;
  v.ids = g.compact_ids();
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < v.ids.size(); ++i) {
    pos[v.ids[i]] = static_cast<int>(i);
    v.weight.push_back(g.vertex(v.ids[i]).weight);
  }
  v.adj.resize(v.ids.size());
  for (const Edge& e : g.edges()) {
    auto a = pos.find(e.a), b = pos.find(e.b);
    if (a == pos.end() || b == pos.end()) continue;
    v.adj[a->second].emplace_back(b->second, e.multiplicity);
    v.adj[b->second].emplace_back(a->second, e.multiplicity);
  }
  for (const auto& [id, idx] : pos) {
    (void)id;
    v.id_order.push_back(idx);
  }
  return v;
}

// Artin's algorithm on the compact part.  Returns the coefficient vector;
// throws when the increment count exceeds the cap.
std::vector<Int> artin_cycle(const CompactView& v, long iteration_cap) {
  const int n = static_cast<int>(v.ids.size());
  Int cap;
  if (iteration_cap >= 0) {
    cap = iteration_cap;
  } else {
    Int max_w = 0;
    for (const Int& w : v.weight) max_w = std::max(max_w, w);
    cap = Int(10) * n * max_w * n;
  }
  std::vector<Int> z(n, 1), pairing(n);
  for (int i = 0; i < n; ++i) {
    pairing[i] = -v.weight[i];
    for (const auto& [u, mult] : v.adj[i]) {
      (void)u;
      pairing[i] += mult;
    }
  }
  Int steps = 0;
  while (true) {
    int violator = -1;
    for (int idx : v.id_order) {
      if (pairing[idx] > 0) {
        violator = idx;
        break;
      }
    }
    if (violator < 0) break;
    if (++steps > cap)
      throw std::runtime_error(
          "fundamental cycle did not stabilize within the iteration cap "
          "(indefinite intersection form?)");
    z[violator] += 1;
    pairing[violator] -= v.weight[violator];
    for (const auto& [u, mult] : v.adj[violator]) pairing[u] += mult;
  }
  return z;
}

}  // namespace

DefinitenessResult definiteness(const DualGraph& g) {
  if (!g.compact_connected())
    throw std::invalid_argument("compact part must be connected");
  CompactView view = compact_view(g);
  const int n = static_cast<int>(view.ids.size());
  if (n == 0) return {Definiteness::negative_definite, std::nullopt};

  // X = -M is positive (semi)definite iff M is negative (semi)definite.
  std::vector<std::vector<Rat>> x(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) {
    x[i][i] = Rat(view.weight[i]);
    for (const auto& [j, mult] : view.adj[i]) x[i][j] = Rat(-mult);
  }

  bool semidefinite = false;
  for (int p = 0; p < n; ++p) {
    if (x[p][p] < 0) return {Definiteness::indefinite, std::nullopt};
    if (x[p][p] == 0) {
      for (int j = p + 1; j < n; ++j)
        if (x[p][j] != 0) return {Definiteness::indefinite, std::nullopt};
      semidefinite = true;  // clean kernel direction
      continue;
    }
    for (int i = p + 1; i < n; ++i) {
      if (x[i][p] == 0) continue;
      Rat f = x[i][p] / x[p][p];
      for (int j = p; j < n; ++j) {
        if (x[p][j] == 0) continue;
        x[i][j] -= f * x[p][j];
      }
    }
  }
  if (!semidefinite) return {Definiteness::negative_definite, std::nullopt};

  // Connected semidefinite: the kernel is one-dimensional and its primitive
  // nonnegative generator is exactly the minimal anti-nef cycle.
  std::vector<Int> z = artin_cycle(view, -1);
  Cycle kernel;
  for (int i = 0; i < n; ++i) {
    Int pair = -view.weight[i] * z[i];
    for (const auto& [u, mult] : view.adj[i]) pair += Int(mult) * z[u];
    if (pair != 0)
      throw std::logic_error("semidefinite kernel reconstruction failed");
    kernel[view.ids[i]] = z[i];
  }
  return {Definiteness::negative_semidefinite, std::move(kernel)};
}

Int cycle_pairing(const Cycle& z, const DualGraph& g, const std::string& v) {
  const Vertex& vert = g.vertex(v);
  if (!vert.compact())
    throw std::invalid_argument("pairing against boundary vertex '" + v + "'");
  Int out = -vert.weight * cycle_coeff(z, v);
  for (const auto& [other, mult] : g.neighbors(v)) {
    if (!g.vertex(other).compact()) continue;
    out += Int(mult) * cycle_coeff(z, other);
  }
  return out;
}

Cycle fundamental_cycle(const DualGraph& g, long iteration_cap) {
  CompactView view = compact_view(g);
  if (view.ids.empty())
    throw std::invalid_argument("no compact vertices to support a cycle");
  if (!g.compact_connected())
    throw std::invalid_argument("compact part must be connected");
  std::vector<Int> z = artin_cycle(view, iteration_cap);
  Cycle out;
  for (std::size_t i = 0; i < view.ids.size(); ++i) out[view.ids[i]] = z[i];
  return out;
}

DualGraph blow_down(const DualGraph& g, const std::string& v) {
  const Vertex& vert = g.vertex(v);
  if (!vert.compact())
    throw std::invalid_argument("cannot contract boundary vertex '" + v + "'");
  if (vert.weight != 1)
    throw std::invalid_argument("vertex '" + v + "' has weight " +
                                vert.weight.get_str() + ", not 1");
  auto nbrs = g.neighbors(v);
  for (const auto& [other, mult] : nbrs) {
    if (mult > 1)
      throw std::invalid_argument("contracting '" + v +
                                  "' would create a loop at '" + other + "'");
    if (g.vertex(other).weight < 1)
      throw std::invalid_argument("neighbor '" + other +
                                  "' already has weight 0");
  }

  DualGraph out;
  for (const Vertex& w : g.vertices()) {
    if (w.id == v) continue;
    bool adjacent = g.multiplicity(w.id, v) > 0;
    out.add_vertex(w.id, adjacent ? Int(w.weight - 1) : w.weight, w.kind);
  }
  for (const Edge& e : g.edges()) {
    if (e.a == v || e.b == v) continue;
    out.add_edge(e.a, e.b, e.multiplicity);
  }
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      out.add_edge(nbrs[i].first, nbrs[j].first, 1);
  return out;
}

ContractionResult minimal_model(const DualGraph& g) {
  ContractionResult res{g, {}};
  while (true) {
    std::string best;
    for (const Vertex& v : res.graph.vertices()) {
      if (!v.compact() || v.weight != 1) continue;
      bool blocked = false;
      for (const auto& [other, mult] : res.graph.neighbors(v.id)) {
        (void)mult;
        if (res.graph.vertex(other).weight == 0) blocked = true;
      }
      if (blocked) continue;
      if (best.empty() || v.id < best) best = v.id;
    }
    if (best.empty()) break;
    res.graph = blow_down(res.graph, best);
    res.order.push_back(best);
  }
  return res;
}

std::string DuValType::name() const {
  const char* letter = family == Family::A ? "A" : family == Family::D ? "D" : "E";
  return letter + std::to_string(rank);
}

std::optional<DuValType> classify_du_val(const DualGraph& g) {
  CompactView view = compact_view(g);
  const int n = static_cast<int>(view.ids.size());
  if (n == 0) return std::nullopt;
  for (const Int& w : view.weight)
    if (w != 2) return std::nullopt;
  if (!g.compact_connected()) return std::nullopt;

  int edge_count = 0;
  for (int i = 0; i < n; ++i)
    for (const auto& [j, mult] : view.adj[i]) {
      if (mult != 1) return std::nullopt;
      if (j > i) ++edge_count;
    }
  if (edge_count != n - 1) return std::nullopt;  // not a tree

  std::vector<int> deg(n);
  int fork = -1, forks = 0;
  for (int i = 0; i < n; ++i) {
    deg[i] = static_cast<int>(view.adj[i].size());
    if (deg[i] >= 4) return std::nullopt;
    if (deg[i] == 3) {
      fork = i;
      ++forks;
    }
  }
  if (forks == 0) return DuValType{DuValType::Family::A, n};
  if (forks > 1) return std::nullopt;

  std::vector<int> arms;
  for (const auto& [start, mult] : view.adj[fork]) {
    (void)mult;
    int len = 1, prev = fork, cur = start;
    while (deg[cur] == 2) {
      for (const auto& [next, m2] : view.adj[cur]) {
        (void)m2;
        if (next != prev) {
          prev = cur;
          cur = next;
          break;
        }
      }
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] != 1) return std::nullopt;
  if (arms[1] == 1) return DuValType{DuValType::Family::D, arms[2] + 3};
  if (arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
    return DuValType{DuValType::Family::E, arms[2] + 4};
  return std::nullopt;
}

DualGraph resolution_chain(const hj::Fraction& f, VertexKind kind,
                           const std::string& id_prefix) {
  hj::HJString s = hj::hj_expand(f);
  DualGraph g;
  for (std::size_t i = 0; i < s.size(); ++i)
    g.add_vertex(id_prefix + std::to_string(i + 1), s[i], kind);
  for (std::size_t i = 1; i < s.size(); ++i)
    g.add_edge(id_prefix + std::to_string(i),
               id_prefix + std::to_string(i + 1));
  return g;
}

ParseError::ParseError(int line_, const std::string& what)
    : std::runtime_error(what), line(line_) {}

namespace {

Int parse_weight(const std::string& tok, int line) {
  if (tok.empty()) throw ParseError(line, "missing weight");
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line, "bad weight '" + tok + "'");
  Int w(tok);
  if (w < 1) throw ParseError(line, "vertex weight must be >= 1");
  return w;
}

VertexKind parse_kind(const std::string& tok, int line) {
  if (tok == "exc") return VertexKind::exceptional;
  if (tok == "curve") return VertexKind::curve;
  if (tok == "boundary") return VertexKind::boundary;
  throw ParseError(line, "bad vertex kind '" + tok + "'");
}

}  // namespace

DualGraph parse_graph(const std::string& text) {
  DualGraph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (tok[0] == "vertex") {
      if (tok.size() != 4)
        throw ParseError(lineno, "expected: vertex <id> <weight> <kind>");
      if (g.has_vertex(tok[1]))
        throw ParseError(lineno, "duplicate vertex '" + tok[1] + "'");
      g.add_vertex(tok[1], parse_weight(tok[2], lineno),
                   parse_kind(tok[3], lineno));
    } else if (tok[0] == "edge") {
      if (tok.size() != 3 && tok.size() != 4)
        throw ParseError(lineno, "expected: edge <id> <id> [multiplicity]");
      if (tok[1] == tok[2])
        throw ParseError(lineno, "loop edge at '" + tok[1] + "'");
      if (!g.has_vertex(tok[1]))
        throw ParseError(lineno, "unknown vertex '" + tok[1] + "'");
      if (!g.has_vertex(tok[2]))
        throw ParseError(lineno, "unknown vertex '" + tok[2] + "'");
      int mult = 1;
      if (tok.size() == 4) {
        for (char c : tok[3])
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(lineno, "bad multiplicity '" + tok[3] + "'");
        try {
          mult = std::stoi(tok[3]);
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad multiplicity '" + tok[3] + "'");
        }
        if (mult < 1)
          throw ParseError(lineno, "edge multiplicity must be >= 1");
      }
      g.add_edge(tok[1], tok[2], mult);
    } else {
      throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  return g;
}

DualGraph parse_graph_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

std::string serialize_graph(const DualGraph& g) {
  std::string out;
  for (const Vertex& v : g.vertices())
    out += "vertex " + v.id + " " + v.weight.get_str() + " " +
           kind_token(v.kind) + "\n";
  for (const Edge& e : g.edges()) {
    out += "edge " + e.a + " " + e.b;
    if (e.multiplicity != 1) out += " " + std::to_string(e.multiplicity);
    out += "\n";
  }
  return out;
}

}  // namespace germcalc::graph
