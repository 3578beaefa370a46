#pragma once

#include <string>
#include <vector>

#include "feynhopf/graph.hpp"

namespace feynhopf {

/// Result of canonicalizing a graph. `key` is a byte-encodable normal form,
/// equal for two graphs iff they are isomorphic (type-, orientation- and
/// refined-index-preserving relabeling of vertices and half-edges).
/// `graph` is the canonical representative, rebuilt deterministically from
/// the key alone, so equal keys always yield structurally identical
/// representatives. `he_map` / `vertex_map` form an isomorphism from the
/// input onto the representative; when the input already is its own
/// representative both maps are the identity.
struct CanonicalForm {
  std::string key;
  Graph graph;
  std::vector<int> he_map;      // input half-edge slot -> canonical slot
  std::vector<int> vertex_map;  // input vertex slot -> canonical slot
};

/// Canonicalize by backtracking over type/degree-refined vertex orderings,
/// minimizing a lexicographic adjacency encoding. Exponential worst case;
/// intended for desk-scale graphs. With `with_refined = false` the vertex
/// refined indices are ignored (normal form of the underlying unrefined
/// graph).
CanonicalForm canonical_form(const Graph& g, bool with_refined = true);

std::string canonical_key(const Graph& g, bool with_refined = true);

bool is_isomorphic(const Graph& a, const Graph& b);

}  // namespace feynhopf
