#include "feynhopf/graph.hpp"

#include <algorithm>
#include <numeric>

namespace feynhopf {

std::string orient_name(Orient o) {
  switch (o) {
    case Orient::in: return "in";
    case Orient::out: return "out";
    default: return "none";
  }
}

int Graph::add_vertex(int id, int refined) {
  vertices_.push_back(Vertex{id, refined});
  return static_cast<int>(vertices_.size()) - 1;
}

int Graph::add_half_edge(int id, std::string type, Orient orient,
                         int vertex_slot) {
  if (vertex_slot < 0 || vertex_slot >= vertex_count())
    throw GraphError("half-edge " + std::to_string(id) +
                     " attached to unknown vertex slot");
  half_edges_.push_back(HalfEdge{id, std::move(type), orient, vertex_slot});
  sigma_.push_back(static_cast<int>(half_edges_.size()) - 1);
  return static_cast<int>(half_edges_.size()) - 1;
}

void Graph::pair_half_edges(int a, int b) {
  if (a < 0 || b < 0 || a >= half_edge_count() || b >= half_edge_count())
    throw GraphError("pair references unknown half-edge slot");
  if (a == b) throw GraphError("cannot pair a half-edge with itself");
  if (sigma_[a] != a || sigma_[b] != b)
    throw GraphError("half-edge paired twice (id " +
                     std::to_string(half_edges_[a].id) + " or " +
                     std::to_string(half_edges_[b].id) + ")");
  sigma_[a] = b;
  sigma_[b] = a;
}

int Graph::internal_edge_count() const {
  int n = 0;
  for (int e = 0; e < half_edge_count(); ++e)
    if (sigma_[e] != e) ++n;
  return n / 2;
}

int Graph::external_edge_count() const {
  int n = 0;
  for (int e = 0; e < half_edge_count(); ++e)
    if (sigma_[e] == e) ++n;
  return n;
}

std::vector<int> Graph::star(int vertex_slot) const {
  std::vector<int> out;
  for (int e = 0; e < half_edge_count(); ++e)
    if (half_edges_[e].vertex == vertex_slot) out.push_back(e);
  return out;
}

std::vector<std::pair<int, int>> Graph::internal_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < half_edge_count(); ++e)
    if (sigma_[e] > e) out.emplace_back(e, sigma_[e]);
  return out;  // already sorted by first slot
}

std::vector<int> Graph::external_half_edges() const {
  std::vector<int> out;
  for (int e = 0; e < half_edge_count(); ++e)
    if (sigma_[e] == e) out.push_back(e);
  return out;
}

void Graph::validate() const {
  for (int e = 0; e < half_edge_count(); ++e) {
    int s = sigma_[e];
    if (s < 0 || s >= half_edge_count())
      throw GraphError("sigma leaves the half-edge set at half-edge id " +
                       std::to_string(half_edges_[e].id));
    if (sigma_[s] != e)
      throw GraphError("sigma is not an involution at half-edge id " +
                       std::to_string(half_edges_[e].id));
    if (s != e && half_edges_[s].type != half_edges_[e].type)
      throw GraphError("paired half-edges of different types: ids " +
                       std::to_string(half_edges_[e].id) + ", " +
                       std::to_string(half_edges_[s].id));
    int v = half_edges_[e].vertex;
    if (v < 0 || v >= vertex_count())
      throw GraphError("half-edge id " + std::to_string(half_edges_[e].id) +
                       " has no incident vertex");
  }
}

namespace {

// Union-find over vertex slots.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> Graph::vertex_component() const {
  DisjointSets ds(vertex_count());
  for (int e = 0; e < half_edge_count(); ++e) {
    int s = sigma_[e];
    if (s != e) ds.unite(half_edges_[e].vertex, half_edges_[s].vertex);
  }
  // Number components by minimum vertex slot.
  std::vector<int> root_to_comp(vertex_count(), -1);
  std::vector<int> comp(vertex_count(), -1);
  int next = 0;
  for (int v = 0; v < vertex_count(); ++v) {
    int r = ds.find(v);
    if (root_to_comp[r] < 0) root_to_comp[r] = next++;
    comp[v] = root_to_comp[r];
  }
  return comp;
}

int Graph::component_count() const {
  auto comp = vertex_component();
  int m = 0;
  for (int c : comp) m = std::max(m, c + 1);
  return m;
}

std::vector<std::vector<int>> Graph::component_vertex_sets() const {
  auto comp = vertex_component();
  std::vector<std::vector<int>> out(component_count());
  for (int v = 0; v < vertex_count(); ++v) out[comp[v]].push_back(v);
  return out;
}

bool Graph::is_connected() const { return component_count() == 1; }

int Graph::loop_number() const {
  if (vertex_count() == 0) return 0;
  return internal_edge_count() - vertex_count() + component_count();
}

namespace {

// Connectivity of a vertex set under a set of edges, with one edge skipped.
bool connected_with_skip(int nvertices, const std::vector<std::pair<int, int>>& edges,
                         int skip) {
  if (nvertices == 0) return false;
  DisjointSets ds(nvertices);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (i == skip) continue;
    ds.unite(edges[i].first, edges[i].second);
  }
  int root = ds.find(0);
  for (int v = 1; v < nvertices; ++v)
    if (ds.find(v) != root) return false;
  return true;
}

}  // namespace

bool Graph::is_one_particle_irreducible() const {
  if (!is_connected()) return false;
  std::vector<std::pair<int, int>> vedges;
  for (auto [a, b] : internal_edges())
    vedges.emplace_back(half_edges_[a].vertex, half_edges_[b].vertex);
  for (int i = 0; i < static_cast<int>(vedges.size()); ++i)
    if (!connected_with_skip(vertex_count(), vedges, i)) return false;
  return true;
}

bool Graph::is_locally_irreducible() const {
  int n = component_count();
  for (int c = 0; c < n; ++c)
    if (!component_subgraph(c).is_one_particle_irreducible()) return false;
  return true;
}

Graph Graph::component_subgraph(int component, std::vector<int>* he_map,
                                std::vector<int>* vertex_map) const {
  auto comp = vertex_component();
  Graph out;
  std::vector<int> vmap(vertex_count(), -1);
  for (int v = 0; v < vertex_count(); ++v)
    if (comp[v] == component)
      vmap[v] = out.add_vertex(vertices_[v].id, vertices_[v].refined);
  std::vector<int> emap(half_edge_count(), -1);
  for (int e = 0; e < half_edge_count(); ++e) {
    int v = half_edges_[e].vertex;
    if (comp[v] == component)
      emap[e] = out.add_half_edge(half_edges_[e].id, half_edges_[e].type,
                                  half_edges_[e].orient, vmap[v]);
  }
  for (int e = 0; e < half_edge_count(); ++e) {
    int s = sigma_[e];
    if (s > e && emap[e] >= 0 && emap[s] >= 0)
      out.pair_half_edges(emap[e], emap[s]);
  }
  if (he_map) {
    he_map->assign(out.half_edge_count(), -1);
    for (int e = 0; e < half_edge_count(); ++e)
      if (emap[e] >= 0) (*he_map)[emap[e]] = e;
  }
  if (vertex_map) {
    vertex_map->assign(out.vertex_count(), -1);
    for (int v = 0; v < vertex_count(); ++v)
      if (vmap[v] >= 0) (*vertex_map)[vmap[v]] = v;
  }
  return out;
}

Graph Graph::relabeled(const std::vector<int>& he_perm,
                       const std::vector<int>& v_perm) const {
  // he_perm/v_perm: old slot -> new slot.
  Graph out;
  std::vector<int> v_inv(vertex_count()), e_inv(half_edge_count());
  for (int v = 0; v < vertex_count(); ++v) v_inv[v_perm[v]] = v;
  for (int e = 0; e < half_edge_count(); ++e) e_inv[he_perm[e]] = e;
  for (int v = 0; v < vertex_count(); ++v) {
    const Vertex& old = vertices_[v_inv[v]];
    out.add_vertex(old.id, old.refined);
  }
  for (int e = 0; e < half_edge_count(); ++e) {
    const HalfEdge& old = half_edges_[e_inv[e]];
    out.add_half_edge(old.id, old.type, old.orient, v_perm[old.vertex]);
  }
  for (int e = 0; e < half_edge_count(); ++e) {
    int old = e_inv[e];
    int s = he_perm[sigma_[old]];
    if (s > e) out.pair_half_edges(e, s);
  }
  return out;
}

bool Graph::same_structure(const Graph& other) const {
  if (vertex_count() != other.vertex_count() ||
      half_edge_count() != other.half_edge_count())
    return false;
  for (int v = 0; v < vertex_count(); ++v) {
    if (vertices_[v].id != other.vertices_[v].id ||
        vertices_[v].refined != other.vertices_[v].refined)
      return false;
  }
  for (int e = 0; e < half_edge_count(); ++e) {
    const HalfEdge& a = half_edges_[e];
    const HalfEdge& b = other.half_edges_[e];
    if (a.id != b.id || a.type != b.type || a.orient != b.orient ||
        a.vertex != b.vertex || sigma_[e] != other.sigma_[e])
      return false;
  }
  return true;
}

CoveringSubgraph::CoveringSubgraph(const Graph& parent, std::vector<char> keep)
    : parent_(&parent), keep_(std::move(keep)) {
  if (static_cast<int>(keep_.size()) != parent.internal_edge_count())
    throw GraphError("covering subgraph mask does not match internal edges");
}

bool CoveringSubgraph::keeps_all() const {
  return std::all_of(keep_.begin(), keep_.end(), [](char c) { return c; });
}

bool CoveringSubgraph::keeps_none() const {
  return std::none_of(keep_.begin(), keep_.end(), [](char c) { return c; });
}

Graph CoveringSubgraph::materialize() const {
  const Graph& g = *parent_;
  Graph out;
  for (int v = 0; v < g.vertex_count(); ++v)
    out.add_vertex(g.vertex(v).id, g.vertex(v).refined);
  for (int e = 0; e < g.half_edge_count(); ++e) {
    const auto& he = g.half_edge(e);
    out.add_half_edge(he.id, he.type, he.orient, he.vertex);
  }
  auto edges = g.internal_edges();
  for (int k = 0; k < static_cast<int>(edges.size()); ++k)
    if (keep_[k]) out.pair_half_edges(edges[k].first, edges[k].second);
  return out;
}

std::vector<CoveringSubgraph> covering_subgraphs(const Graph& g) {
  int n = g.internal_edge_count();
  if (n > 30) throw GraphError("too many internal edges to enumerate");
  std::vector<CoveringSubgraph> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<char> keep(n, 0);
    for (int k = 0; k < n; ++k) keep[k] = (mask >> k) & 1u;
    out.emplace_back(g, std::move(keep));
  }
  return out;
}

ContractionResult contract(const Graph& g, const CoveringSubgraph& sub,
                           const std::vector<int>& produced_refined) {
  if (&sub.parent() != &g)
    throw GraphError("covering subgraph does not belong to this graph");
  Graph subg = sub.materialize();
  auto comp = subg.vertex_component();
  int ncomp = 0;
  for (int c : comp) ncomp = std::max(ncomp, c + 1);

  // Whether a component keeps at least one internal edge.
  std::vector<char> has_edge(ncomp, 0);
  auto edges = g.internal_edges();
  for (int k = 0; k < static_cast<int>(edges.size()); ++k)
    if (sub.keep()[k]) has_edge[comp[g.half_edge(edges[k].first).vertex]] = 1;

  // The contracted vertex id is the minimum vertex id of its component.
  std::vector<int> rep(ncomp, -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    int c = comp[v];
    if (rep[c] < 0 || g.vertex(v).id < g.vertex(rep[c]).id) rep[c] = v;
  }

  ContractionResult res;
  res.vertex_component.resize(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    int refined;
    if (!has_edge[c]) {
      refined = g.vertex(rep[c]).refined;  // contracting a point is the identity
    } else if (produced_refined.empty()) {
      refined = 0;
    } else {
      refined = produced_refined[c];
    }
    res.graph.add_vertex(g.vertex(rep[c]).id, refined);
    res.vertex_component[c] = c;
  }

  // Half-edges internal to the subgraph disappear; the rest survive with
  // incidence redirected to the component vertex.
  std::vector<char> kept_half(g.half_edge_count(), 0);
  for (int k = 0; k < static_cast<int>(edges.size()); ++k)
    if (sub.keep()[k]) {
      kept_half[edges[k].first] = 1;
      kept_half[edges[k].second] = 1;
    }
  std::vector<int> emap(g.half_edge_count(), -1);
  for (int e = 0; e < g.half_edge_count(); ++e) {
    if (kept_half[e]) continue;
    const auto& he = g.half_edge(e);
    emap[e] = res.graph.add_half_edge(he.id, he.type, he.orient,
                                      comp[he.vertex]);
    res.he_to_parent.push_back(e);
  }
  for (int e = 0; e < g.half_edge_count(); ++e) {
    int s = g.sigma(e);
    if (s > e && emap[e] >= 0 && emap[s] >= 0)
      res.graph.pair_half_edges(emap[e], emap[s]);
  }
  return res;
}

Graph residue(const Graph& g) {
  std::vector<char> keep(g.internal_edge_count(), 1);
  return contract(g, CoveringSubgraph(g, keep)).graph;
}

Graph skeleton(const Graph& g) {
  std::vector<char> keep(g.internal_edge_count(), 0);
  return CoveringSubgraph(g, keep).materialize();
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph out;
  for (int v = 0; v < a.vertex_count(); ++v)
    out.add_vertex(a.vertex(v).id, a.vertex(v).refined);
  for (int v = 0; v < b.vertex_count(); ++v)
    out.add_vertex(b.vertex(v).id, b.vertex(v).refined);
  for (int e = 0; e < a.half_edge_count(); ++e) {
    const auto& he = a.half_edge(e);
    out.add_half_edge(he.id, he.type, he.orient, he.vertex);
  }
  for (int e = 0; e < b.half_edge_count(); ++e) {
    const auto& he = b.half_edge(e);
    out.add_half_edge(he.id, he.type, he.orient,
                      a.vertex_count() + he.vertex);
  }
  for (auto [x, y] : a.internal_edges()) out.pair_half_edges(x, y);
  int off = a.half_edge_count();
  for (auto [x, y] : b.internal_edges())
    out.pair_half_edges(off + x, off + y);
  return out;
}

}  // namespace feynhopf
