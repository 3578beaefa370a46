#pragma once

#include <map>
#include <string>
#include <vector>

#include "feynhopf/canonical.hpp"
#include "feynhopf/graph.hpp"
#include "feynhopf/poly.hpp"

namespace feynhopf {

/// Momentum space of a graph: one D-vector per half-edge, subject to
/// momentum conservation at every vertex and opposite momenta across every
/// internal edge. Solved exactly over the rationals; the free coordinates
/// are a deterministic subset of the raw half-edge variables (external legs
/// preferred, leftover internal representatives are the loop momenta).
class MomentumSpace {
 public:
  MomentumSpace() = default;
  MomentumSpace(const Graph& g, int dimension);

  int dimension() const { return dimension_; }
  /// Free coordinates of the D=1 structure; total variables = nfree * D.
  int nfree() const { return static_cast<int>(frees_.size()); }
  int var_count() const { return nfree() * dimension_; }

  bool free_is_external(int free_index) const {
    return frees_[free_index].external;
  }
  int free_half_edge(int free_index) const { return frees_[free_index].slot; }

  /// Variable index of (free coordinate, vector component).
  int var_index(int free_index, int component) const {
    return free_index * dimension_ + component;
  }
  std::string var_name(int var) const;
  std::vector<std::string> var_names() const;

  /// The raw momentum component of a half-edge as a polynomial in the free
  /// coordinates.
  Poly half_edge_momentum(int he_slot, int component) const;

  /// Polynomial in this graph's free coordinates.
  Poly zero() const { return Poly(var_count()); }
  Poly one() const { return Poly::constant(var_count(), 1); }
  Poly coordinate(int free_index, int component) const {
    return Poly::variable(var_count(), var_index(free_index, component));
  }

  /// Point of the momentum space from free-coordinate values: raw momentum
  /// component per half-edge; satisfies all constraints by construction.
  std::vector<std::vector<Rat>> raw_point(const std::vector<Rat>& free_values)
      const;

 private:
  int dimension_ = 1;
  struct Free {
    int slot;       // half-edge slot carrying this coordinate
    bool external;
  };
  std::vector<Free> frees_;
  // he_expr_[slot] = coefficients over the free coordinates (D=1 structure)
  std::vector<std::vector<Rat>> he_expr_;
};

/// Pullback of f along a momentum-space map induced by a half-edge map:
/// every free coordinate of `from` is the raw variable of some half-edge;
/// substitute the `to`-expression of the mapped half-edge. This one
/// mechanism implements the pullback along contraction (half-edge map =
/// surviving-edge injection), the pullback along subgraph inclusion
/// (identity map, stronger constraints) and transport along a graph
/// isomorphism. `he_map[slot in from-graph] = slot in to-graph`.
Poly transport(const Poly& f, const MomentumSpace& from,
               const MomentumSpace& to, const std::vector<int>& he_map);

/// Pullback V_{g/sub} -> V_g along the contraction projection.
/// `he_to_parent` comes from the contraction result.
Poly pullback_contraction(const Poly& f, const MomentumSpace& contracted,
                          const MomentumSpace& parent,
                          const std::vector<int>& he_to_parent);

/// Pullback V_sub -> V_g along the inclusion of constraint spaces (the
/// covering subgraph has the same half-edges, fewer constraints).
Poly pullback_inclusion(const Poly& f, const MomentumSpace& subgraph,
                        const MomentumSpace& parent);

/// Element of the graph-indexed function algebra: finitely many components,
/// keyed by graph canonical form, each a polynomial on that canonical
/// representative's momentum space.
class BElement {
 public:
  struct Component {
    Graph graph;  // canonical representative
    Poly fn;
  };

  BElement() = default;

  static BElement one(int dimension);  // unit: empty graph -> 1

  bool is_zero() const { return parts_.empty(); }
  const std::map<std::string, Component>& parts() const { return parts_; }

  /// Set the component for a graph; the polynomial must live on the
  /// canonical representative's momentum space (transport first if not).
  void set_component(const Graph& canonical_rep, Poly fn);

  BElement operator+(const BElement&) const;
  BElement operator-(const BElement&) const;
  BElement scaled(const Rat& c) const;
  bool operator==(const BElement&) const;

  /// Componentwise (pointwise) product: the ring structure of the product
  /// algebra. Components missing on one side are zero.
  BElement pointwise_product(const BElement& o) const;

  /// Concatenation product: components merge along disjoint unions of their
  /// graphs, functions multiply on the product of momentum spaces.
  BElement bullet(const BElement& o, int dimension) const;

 private:
  std::map<std::string, Component> parts_;
};

}  // namespace feynhopf
