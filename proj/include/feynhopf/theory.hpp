#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "feynhopf/graph.hpp"

namespace feynhopf {

/// Multiset of (half-edge type, orientation) pairs incident to a vertex.
struct Signature {
  std::map<std::pair<std::string, Orient>, int> counts;

  bool operator==(const Signature&) const = default;
  auto operator<=>(const Signature&) const = default;
  std::string to_string() const;  // "electron@in:1,electron@out:1,photon:1"
};

struct TheoryError : std::runtime_error {
  explicit TheoryError(const std::string& what) : std::runtime_error(what) {}
};

struct HalfEdgeTypeDecl {
  std::string name;
  bool oriented = false;
  // Orientation pairs sigma may join; oriented types default to {in,out}.
  std::vector<std::pair<Orient, Orient>> pairings;
};

/// A physical theory: declared half-edge types, vertex types (signatures)
/// and refined vertex types. Theories are data, parsed from text files;
/// immutable after construction.
class Theory {
 public:
  Theory() = default;

  void set_name(std::string n) { name_ = std::move(n); }
  const std::string& name() const { return name_; }

  void add_half_edge_type(HalfEdgeTypeDecl decl);
  void add_vertex_type(const std::string& name, Signature sig);
  void add_refined(const std::string& vertex_type_name, int index);

  /// Consistency: every refined type names a declared vertex type, every
  /// vertex type has at least one refinement index, signatures use declared
  /// half-edge types.
  void validate() const;

  bool has_half_edge_type(const std::string& type) const;
  const HalfEdgeTypeDecl* half_edge_type(const std::string& type) const;
  bool orientation_valid(const std::string& type, Orient o) const;
  bool pairing_allowed(const std::string& type, Orient a, Orient b) const;

  bool has_vertex_signature(const Signature& sig) const;
  std::optional<std::string> vertex_type_name(const Signature& sig) const;
  const std::map<std::string, Signature>& vertex_types() const {
    return vertex_types_;
  }

  /// Refinement indices of a signature; empty when the signature is not a
  /// declared vertex type or has no refinements.
  std::set<int> refinement_indices(const Signature& sig) const;
  const std::set<int>& refinement_indices_of(const std::string& name) const;

 private:
  std::string name_;
  std::map<std::string, HalfEdgeTypeDecl> he_types_;
  std::map<std::string, Signature> vertex_types_;
  std::map<Signature, std::string> sig_to_name_;
  std::map<std::string, std::set<int>> refined_;
};

Signature vertex_signature(const Graph& g, int vertex_slot);

/// Every half-edge type declared (with a legal orientation tag) and every
/// vertex signature a declared vertex type.
bool is_in_theory(const Graph& g, const Theory& t);

/// Diagnostic variant: description of the first violation, or nullopt.
std::optional<std::string> theory_violation(const Graph& g, const Theory& t);

/// Residue signature is a declared vertex type. Input must be connected.
bool is_superficially_divergent(const Graph& g, const Theory& t);

/// Internal edges only join orientation pairs the theory allows.
bool sigma_pairing_allowed(const Graph& g, const Theory& t);

/// Every vertex's (signature, refined index) is a declared refined type.
bool refined_types_declared(const Graph& g, const Theory& t);

}  // namespace feynhopf
