#pragma once
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "germcalc/hj.hpp"
#include "germcalc/numeric.hpp"

// Weighted dual graphs of curve configurations on a smooth surface.
//
// A vertex is a curve with weight w = -C^2 > 0 (w = 0 only as the terminal
// state of a contraction, a fiber).  Kinds: "exc" for exceptional curves of
// a resolution, "curve" for distinguished non-exceptional components (the
// bullet/diamond vertices of the configurations we care about), "boundary"
// for the box vertices.  Boundary vertices are carried along for display but
// excluded from every numerical computation; "compact" below always means
// non-boundary.  Edges are unordered with a positive multiplicity; loops are
// not allowed.
//
// The intersection matrix has -weight on the diagonal and the edge
// multiplicity off-diagonal.  Definiteness is decided exactly over the
// rationals (fraction-free elimination; no eigenvalue numerics), and the
// fundamental cycle is computed by Artin's algorithm.

namespace germcalc::graph {

enum class VertexKind { exceptional, curve, boundary };

std::string kind_token(VertexKind k);  // "exc", "curve", "boundary"

struct Vertex {
  std::string id;
  Int weight;
  VertexKind kind;
  bool compact() const { return kind != VertexKind::boundary; }
  bool operator==(const Vertex&) const = default;
};

struct Edge {
  std::string a, b;  // a < b lexicographically
  int multiplicity;
  bool operator==(const Edge&) const = default;
};

class DualGraph {
 public:
  void add_vertex(std::string id, Int weight, VertexKind kind);
  void add_edge(const std::string& a, const std::string& b,
                int multiplicity = 1);  // accumulates

  const std::vector<Vertex>& vertices() const { return verts_; }
  bool has_vertex(const std::string& id) const;
  const Vertex& vertex(const std::string& id) const;
  std::size_t size() const { return verts_.size(); }

  int multiplicity(const std::string& a, const std::string& b) const;
  std::vector<Edge> edges() const;  // sorted by (a, b)
  // Neighbors of id with edge multiplicities, sorted by id.
  std::vector<std::pair<std::string, int>> neighbors(
      const std::string& id) const;

  std::vector<std::string> compact_ids() const;  // in insertion order
  bool compact_connected() const;                // empty graph counts as connected

  bool operator==(const DualGraph&) const = default;

 private:
  std::vector<Vertex> verts_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::string, std::string>, int> edges_;
};

// Effective cycle supported on compact vertices: id -> coefficient >= 0.
using Cycle = std::map<std::string, Int>;

Int cycle_coeff(const Cycle& z, const std::string& id);  // 0 when absent

enum class Definiteness { negative_definite, negative_semidefinite, indefinite };

std::string definiteness_token(Definiteness d);

struct DefinitenessResult {
  Definiteness cls;
  // Primitive nonnegative generator of the kernel; present iff semidefinite.
  std::optional<Cycle> kernel;
};

// Rows/columns over compact vertices in insertion order.
std::vector<std::vector<Int>> intersection_matrix(const DualGraph& g);

// Requires the compact part to be connected.
DefinitenessResult definiteness(const DualGraph& g);

// Z.E_v for a compact vertex v: -weight(v) z(v) + sum over edges at v.
Int cycle_pairing(const Cycle& z, const DualGraph& g, const std::string& v);

// Artin's algorithm: start at all-ones on the compact part; while some
// pairing is positive, increment the smallest-id violating vertex.  The cap
// (default 10 * |V| * max-weight * |V|) turns divergence on an indefinite
// graph into an error.
Cycle fundamental_cycle(const DualGraph& g, long iteration_cap = -1);

// Contract a compact weight-1 vertex with only simple edges: neighbors drop
// weight by 1 and every pair of distinct former neighbors gains one edge.
DualGraph blow_down(const DualGraph& g, const std::string& v);

struct ContractionResult {
  DualGraph graph;
  std::vector<std::string> order;  // contracted vertex ids
};

// Repeatedly blow down the smallest-id compact weight-1 vertex; stops when
// none remains or only weight-0 neighbors block progress.
ContractionResult minimal_model(const DualGraph& g);

struct DuValType {
  enum class Family { A, D, E } family;
  int rank;
  std::string name() const;  // "A2", "D4", "E6", ...
  bool operator==(const DuValType&) const = default;
};

// All compact weights 2 and the shape is one of the A/D/E trees.
std::optional<DuValType> classify_du_val(const DualGraph& g);

// Chain with weights hj_expand(f); empty graph for 1/1.
DualGraph resolution_chain(const hj::Fraction& f,
                           VertexKind kind = VertexKind::exceptional,
                           const std::string& id_prefix = "e");

// --- text format ---------------------------------------------------------
//
//   # comment
//   vertex <id> <weight> <exc|curve|boundary>
//   edge <id> <id> [multiplicity]
//
// Parsed weights must be >= 1.  The serializer writes vertices in insertion
// order, then edges sorted by (id,id), omitting multiplicity 1.

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what);
};

DualGraph parse_graph(const std::string& text);
DualGraph parse_graph_file(const std::filesystem::path& path);
std::string serialize_graph(const DualGraph& g);

}  // namespace germcalc::graph
