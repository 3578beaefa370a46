#include "feynhopf/specified.hpp"

#include <algorithm>
#include <sstream>

namespace feynhopf {

std::string specified_canonical_key(const Graph& g,
                                    const std::vector<int>& spec) {
  CanonicalForm cf = canonical_form(g);
  // Order the spec indices by canonical component (minimum canonical vertex
  // slot), so the key is relabeling-invariant.
  auto comp = g.vertex_component();
  int ncomp = g.component_count();
  std::vector<int> min_canonical(ncomp, 1 << 30);
  for (int v = 0; v < g.vertex_count(); ++v)
    min_canonical[comp[v]] =
        std::min(min_canonical[comp[v]], cf.vertex_map[v]);
  std::vector<int> order(ncomp);
  for (int c = 0; c < ncomp; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return min_canonical[a] < min_canonical[b];
  });
  std::ostringstream os;
  os << cf.key << "|s";
  for (int c : order) os << ":" << spec[c];
  return os.str();
}

SpecifiedGraph make_specified(Graph g, std::vector<int> spec) {
  if (static_cast<int>(spec.size()) != g.component_count())
    throw GraphError("specification size differs from component count");
  SpecifiedGraph out;
  out.canon = specified_canonical_key(g, spec);
  out.graph = std::move(g);
  out.spec = std::move(spec);
  return out;
}

std::set<int> admissible_specs(const Graph& connected, const Theory& t) {
  if (!connected.is_connected())
    throw GraphError("admissible_specs expects a connected graph");
  if (connected.internal_edge_count() == 0)
    return {connected.vertex(0).refined};
  Graph res = residue(connected);
  return t.refinement_indices(vertex_signature(res, 0));
}

void validate_specified(const SpecifiedGraph& g, const Theory& t) {
  g.graph.validate();
  if (auto why = theory_violation(g.graph, t))
    throw TheoryError(*why);
  if (!sigma_pairing_allowed(g.graph, t))
    throw TheoryError("an internal edge joins orientations the theory forbids");
  if (!refined_types_declared(g.graph, t))
    throw TheoryError("a vertex carries an undeclared refined type index");
  if (!g.graph.is_locally_irreducible())
    throw TheoryError("graph is not locally one-particle irreducible");
  auto comps = g.graph.component_vertex_sets();
  if (g.spec.size() != comps.size())
    throw TheoryError("specification size differs from component count");
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Graph sub = g.graph.component_subgraph(static_cast<int>(c));
    if (!is_superficially_divergent(sub, t))
      throw TheoryError("component with residue signature " +
                        vertex_signature(residue(sub), 0).to_string() +
                        " is not superficially divergent");
    auto adm = admissible_specs(sub, t);
    if (!adm.count(g.spec[c]))
      throw TheoryError("specification index " + std::to_string(g.spec[c]) +
                        " is not admissible for component " +
                        std::to_string(c));
  }
}

std::vector<std::vector<int>> admissible_index_vectors(
    const SpecifiedGraph& g, const Theory& t, const std::vector<char>& keep) {
  const Graph& parent = g.graph;
  auto edges = parent.internal_edges();
  int nedges = static_cast<int>(edges.size());

  CoveringSubgraph cover(parent, keep);
  Graph sub = cover.materialize();
  if (!sub.is_locally_irreducible()) return {};

  auto parent_comp = parent.vertex_component();
  auto parent_comps = parent.component_vertex_sets();
  auto comp = sub.vertex_component();
  auto comps = sub.component_vertex_sets();
  int ncomp = static_cast<int>(comps.size());

  // Kept-edge count per subgraph component.
  std::vector<int> kept_edges(ncomp, 0);
  std::vector<int> span_edges(ncomp, 0);  // parent edges inside the span
  for (int k = 0; k < nedges; ++k) {
    int ca = comp[parent.half_edge(edges[k].first).vertex];
    int cb = comp[parent.half_edge(edges[k].second).vertex];
    if (ca == cb) {
      span_edges[ca] += 1;
      if (keep[k]) kept_edges[ca] += 1;
    }
  }

  // Admissible index set per component.
  std::vector<std::vector<int>> choices(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    int pc = parent_comp[comps[c][0]];
    bool full = comps[c].size() == parent_comps[pc].size() &&
                kept_edges[c] == span_edges[c];
    if (full) {
      choices[c] = {g.spec[pc]};
    } else if (kept_edges[c] == 0) {
      // single vertex with no kept edge: contraction is the identity
      choices[c] = {parent.vertex(comps[c][0]).refined};
    } else {
      Graph cg = sub.component_subgraph(c);
      auto adm = admissible_specs(cg, t);
      if (adm.empty()) return {};
      choices[c].assign(adm.begin(), adm.end());
    }
  }

  // Odometer over the index vectors, lexicographic.
  std::vector<std::vector<int>> out;
  std::vector<int> pick(ncomp, 0);
  while (true) {
    std::vector<int> jvec(ncomp);
    for (int c = 0; c < ncomp; ++c) jvec[c] = choices[c][pick[c]];
    out.push_back(std::move(jvec));
    int c = ncomp - 1;
    for (; c >= 0; --c) {
      if (++pick[c] < static_cast<int>(choices[c].size())) break;
      pick[c] = 0;
    }
    if (c < 0) break;
  }
  return out;
}

std::vector<SpecifiedCover> specified_covering_subgraphs(
    const SpecifiedGraph& g, const Theory& t) {
  int nedges = g.graph.internal_edge_count();
  if (nedges > 30) throw GraphError("too many internal edges to enumerate");

  std::vector<SpecifiedCover> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << nedges); ++mask) {
    std::vector<char> keep(nedges, 0);
    for (int k = 0; k < nedges; ++k) keep[k] = (mask >> k) & 1u;
    for (auto& jvec : admissible_index_vectors(g, t, keep))
      out.push_back(SpecifiedCover{keep, std::move(jvec)});
  }
  return out;
}

SpecifiedContraction specified_contract(const SpecifiedGraph& g,
                                        const SpecifiedCover& cover) {
  CoveringSubgraph cs(g.graph, cover.keep);
  ContractionResult res = contract(g.graph, cs, cover.sub_spec);

  // The contracted graph's components correspond one-to-one to the parent's;
  // the specification is inherited.
  Graph sub = cs.materialize();
  auto sub_comp = sub.vertex_component();
  auto parent_comp = g.graph.vertex_component();
  // contracted vertex slot == subgraph component index (both ordered by
  // minimum vertex slot)
  std::vector<int> subcomp_to_parentcomp(res.graph.vertex_count());
  for (int v = 0; v < g.graph.vertex_count(); ++v)
    subcomp_to_parentcomp[sub_comp[v]] = parent_comp[v];

  auto rcomps = res.graph.component_vertex_sets();
  std::vector<int> spec(rcomps.size());
  for (std::size_t rc = 0; rc < rcomps.size(); ++rc)
    spec[rc] = g.spec[subcomp_to_parentcomp[rcomps[rc][0]]];

  SpecifiedContraction out;
  out.graph = make_specified(std::move(res.graph), std::move(spec));
  out.he_to_parent = std::move(res.he_to_parent);
  return out;
}

std::vector<SpecifiedGraph> specified_components(const Graph& g,
                                                 const std::vector<int>& spec) {
  std::vector<SpecifiedGraph> out;
  int n = g.component_count();
  for (int c = 0; c < n; ++c)
    out.push_back(make_specified(g.component_subgraph(c), {spec[c]}));
  return out;
}

SpecifiedGraph specified_union(const SpecifiedGraph& a,
                               const SpecifiedGraph& b) {
  Graph u = disjoint_union(a.graph, b.graph);
  // Components of the union keep the minimum-vertex-slot order: a's
  // components first (slots unchanged), then b's.
  std::vector<int> spec = a.spec;
  spec.insert(spec.end(), b.spec.begin(), b.spec.end());
  return make_specified(std::move(u), std::move(spec));
}

}  // namespace feynhopf
