#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace feynhopf {

enum class Orient : std::uint8_t { none, in, out };

inline Orient opposite(Orient o) {
  if (o == Orient::in) return Orient::out;
  if (o == Orient::out) return Orient::in;
  return Orient::none;
}

std::string orient_name(Orient o);

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

/// Half-edge Feynman graph. A graph is a finite set of typed half-edges, a
/// finite set of vertices, an involution `sigma` pairing half-edges into
/// internal edges (fixed points are external legs), and an incidence map
/// attaching every half-edge to a vertex. Vertices additionally carry a
/// refined-type index; half-edges of oriented field types carry an in/out
/// tag. Instances are immutable once built and safe to share across threads.
class Graph {
 public:
  struct HalfEdge {
    int id = 0;              // external id, kept for I/O and diagnostics
    std::string type;        // half-edge type label
    Orient orient = Orient::none;
    int vertex = -1;         // incident vertex slot
  };
  struct Vertex {
    int id = 0;
    int refined = 0;         // refined-type index of this vertex
  };

  Graph() = default;

  // ---- construction (used by parsers, generators, contraction) ----
  int add_vertex(int id, int refined = 0);
  int add_half_edge(int id, std::string type, Orient orient, int vertex_slot);
  void pair_half_edges(int a, int b);  // declare {a, sigma(a)=b} internal

  // ---- basic access ----
  int half_edge_count() const { return static_cast<int>(half_edges_.size()); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const HalfEdge& half_edge(int slot) const { return half_edges_[slot]; }
  const Vertex& vertex(int slot) const { return vertices_[slot]; }
  int sigma(int slot) const { return sigma_[slot]; }
  bool is_external(int slot) const { return sigma_[slot] == slot; }

  int internal_edge_count() const;
  int external_edge_count() const;
  std::vector<int> star(int vertex_slot) const;
  /// Internal edges as (min,max) half-edge slot pairs, sorted ascending.
  /// This ordering is the canonical internal-edge ordering used everywhere
  /// covering subgraphs are enumerated.
  std::vector<std::pair<int, int>> internal_edges() const;
  std::vector<int> external_half_edges() const;

  /// Structural validity: sigma is an involution, incidence is total,
  /// paired half-edges have equal types. Throws GraphError with a witness.
  void validate() const;

  // ---- component structure ----
  /// Component index per vertex slot; components numbered by minimum vertex
  /// slot, ascending.
  std::vector<int> vertex_component() const;
  int component_count() const;
  std::vector<std::vector<int>> component_vertex_sets() const;
  bool is_connected() const;  // empty graph counts as not connected

  int loop_number() const;

  /// Connected and still connected after deleting any single internal edge.
  bool is_one_particle_irreducible() const;
  /// Every connected component is 1PI; true for the empty graph.
  bool is_locally_irreducible() const;

  /// Extract one connected component as a standalone graph. If he_map is
  /// given it receives, per component half-edge slot, the slot in *this*.
  Graph component_subgraph(int component, std::vector<int>* he_map = nullptr,
                           std::vector<int>* vertex_map = nullptr) const;

  Graph relabeled(const std::vector<int>& he_perm,
                  const std::vector<int>& v_perm) const;

  bool same_structure(const Graph& other) const;  // slotwise equality

 private:
  std::vector<HalfEdge> half_edges_;
  std::vector<Vertex> vertices_;
  std::vector<int> sigma_;
};

/// A covering subgraph of `parent`: identical vertices and half-edges, with
/// sigma restricted to a chosen subset of the parent's internal edges. The
/// subset is a keep-mask over parent.internal_edges() order.
class CoveringSubgraph {
 public:
  CoveringSubgraph(const Graph& parent, std::vector<char> keep);

  const Graph& parent() const { return *parent_; }
  const std::vector<char>& keep() const { return keep_; }
  bool keeps_all() const;
  bool keeps_none() const;

  /// The subgraph as a graph value: sigma pairs only the kept edges.
  Graph materialize() const;

 private:
  const Graph* parent_;
  std::vector<char> keep_;
};

/// All 2^I covering subgraphs, in lexicographic order on the canonical
/// internal-edge ordering (mask bit k = internal_edges()[k] kept).
std::vector<CoveringSubgraph> covering_subgraphs(const Graph& g);

struct ContractionResult {
  Graph graph;
  /// Half-edge slot in the contracted graph -> slot in the parent.
  std::vector<int> he_to_parent;
  /// Vertex slot in the contracted graph -> subgraph component index.
  std::vector<int> vertex_component;
};

/// Contract every connected component of the covering subgraph onto one
/// vertex. The contracted vertex id is the minimum vertex id of its
/// component. `produced_refined`, indexed by subgraph component, gives the
/// refined index of each produced vertex; components with no kept internal
/// edge (single vertices) always retain their original refined type and
/// their entry is ignored. An empty vector defaults every produced index
/// to 0.
ContractionResult contract(const Graph& g, const CoveringSubgraph& sub,
                           const std::vector<int>& produced_refined = {});

Graph residue(const Graph& g);
Graph skeleton(const Graph& g);

/// Disjoint union; half-edge slots of `a` come first, then `b`'s.
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace feynhopf
