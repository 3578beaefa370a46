#pragma once

#include <set>
#include <string>
#include <vector>

#include "feynhopf/canonical.hpp"
#include "feynhopf/graph.hpp"
#include "feynhopf/theory.hpp"

namespace feynhopf {

/// A specified graph: a graph plus one refinement index per connected
/// component, naming the refined type of the vertex its contraction
/// produces. Components are indexed by minimum vertex slot, ascending.
struct SpecifiedGraph {
  Graph graph;
  std::vector<int> spec;
  std::string canon;  // canonical key including the specification

  int degree() const { return graph.loop_number(); }
};

/// Canonical key of (graph, spec): the graph key plus the spec indices in
/// canonical component order, so it is invariant under relabeling.
std::string specified_canonical_key(const Graph& g,
                                    const std::vector<int>& spec);

SpecifiedGraph make_specified(Graph g, std::vector<int> spec);

/// Admissible specification indices of one connected graph:
/// a bare vertex can only be "contracted" to itself, so its only index is
/// its own refined index; any other connected graph admits every refinement
/// index of its residue signature.
std::set<int> admissible_specs(const Graph& connected, const Theory& t);

/// Checks the defining conditions: locally 1PI, in theory, sigma respects
/// the pairing rules, every vertex refined type declared, every component
/// superficially divergent with an admissible spec index. Throws with a
/// witness.
void validate_specified(const SpecifiedGraph& g, const Theory& t);

/// A specified covering subgraph: kept internal edges plus a refinement
/// index per subgraph component (minimum-vertex-slot order).
struct SpecifiedCover {
  std::vector<char> keep;
  std::vector<int> sub_spec;
};

/// Admissible index vectors for one kept-edge mask, in lexicographic order.
/// Empty when the subgraph is not locally 1PI or some component admits no
/// index. Full components are forced to the parent's index; components with
/// no kept edge keep their vertex's own refined index; other components
/// range over the refinement indices of their residue signature (empty when
/// the component is not superficially divergent, which drops the cover).
std::vector<std::vector<int>> admissible_index_vectors(
    const SpecifiedGraph& g, const Theory& t, const std::vector<char>& keep);

/// All specified covering subgraphs of g: locally 1PI covering subgraphs
/// together with every admissible index vector. Deterministic order:
/// lexicographic on the keep mask, then on the index vector.
std::vector<SpecifiedCover> specified_covering_subgraphs(
    const SpecifiedGraph& g, const Theory& t);

struct SpecifiedContraction {
  SpecifiedGraph graph;
  std::vector<int> he_to_parent;
};

/// Contract each subgraph component onto a vertex of refined type given by
/// the cover's index vector; the result keeps the parent's specification.
SpecifiedContraction specified_contract(const SpecifiedGraph& g,
                                        const SpecifiedCover& cover);

/// Split a specified graph into its connected factors (each a standalone
/// specified graph), in component order.
std::vector<SpecifiedGraph> specified_components(const Graph& g,
                                                 const std::vector<int>& spec);

/// Disjoint union with concatenated specifications.
SpecifiedGraph specified_union(const SpecifiedGraph& a,
                               const SpecifiedGraph& b);

}  // namespace feynhopf
