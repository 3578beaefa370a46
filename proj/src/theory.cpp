#include "feynhopf/theory.hpp"

#include <algorithm>
#include <sstream>

namespace feynhopf {

std::string Signature::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, count] : counts) {
    if (!first) os << ",";
    first = false;
    os << key.first;
    if (key.second != Orient::none) os << "@" << orient_name(key.second);
    os << ":" << count;
  }
  if (first) os << "(empty)";
  return os.str();
}

void Theory::add_half_edge_type(HalfEdgeTypeDecl decl) {
  if (he_types_.count(decl.name))
    throw TheoryError("duplicate half-edge type " + decl.name);
  if (decl.oriented && decl.pairings.empty())
    decl.pairings.emplace_back(Orient::in, Orient::out);
  if (!decl.oriented)
    decl.pairings.assign(1, {Orient::none, Orient::none});
  he_types_[decl.name] = std::move(decl);
}

void Theory::add_vertex_type(const std::string& name, Signature sig) {
  if (vertex_types_.count(name))
    throw TheoryError("duplicate vertex type " + name);
  if (sig_to_name_.count(sig))
    throw TheoryError("vertex types " + sig_to_name_[sig] + " and " + name +
                      " share the signature " + sig.to_string());
  sig_to_name_[sig] = name;
  vertex_types_[name] = std::move(sig);
}

void Theory::add_refined(const std::string& vertex_type_name, int index) {
  if (!vertex_types_.count(vertex_type_name))
    throw TheoryError("refined declaration for unknown vertex type " +
                      vertex_type_name);
  auto [it, inserted] = refined_[vertex_type_name].insert(index);
  (void)it;
  if (!inserted)
    throw TheoryError("duplicate refinement index " + std::to_string(index) +
                      " for vertex type " + vertex_type_name);
}

void Theory::validate() const {
  for (const auto& [name, sig] : vertex_types_) {
    for (const auto& [key, count] : sig.counts) {
      (void)count;
      auto it = he_types_.find(key.first);
      if (it == he_types_.end())
        throw TheoryError("vertex type " + name +
                          " uses undeclared half-edge type " + key.first);
      if (it->second.oriented && key.second == Orient::none)
        throw TheoryError("vertex type " + name + " uses oriented type " +
                          key.first + " without an orientation");
      if (!it->second.oriented && key.second != Orient::none)
        throw TheoryError("vertex type " + name +
                          " orients the unoriented type " + key.first);
    }
    if (!refined_.count(name) || refined_.at(name).empty())
      throw TheoryError("vertex type " + name +
                        " has no refined index declared");
  }
}

bool Theory::has_half_edge_type(const std::string& type) const {
  return he_types_.count(type) != 0;
}

const HalfEdgeTypeDecl* Theory::half_edge_type(const std::string& type) const {
  auto it = he_types_.find(type);
  return it == he_types_.end() ? nullptr : &it->second;
}

bool Theory::orientation_valid(const std::string& type, Orient o) const {
  const HalfEdgeTypeDecl* d = half_edge_type(type);
  if (!d) return false;
  return d->oriented ? o != Orient::none : o == Orient::none;
}

bool Theory::pairing_allowed(const std::string& type, Orient a, Orient b) const {
  const HalfEdgeTypeDecl* d = half_edge_type(type);
  if (!d) return false;
  for (auto [x, y] : d->pairings)
    if ((x == a && y == b) || (x == b && y == a)) return true;
  return false;
}

bool Theory::has_vertex_signature(const Signature& sig) const {
  return sig_to_name_.count(sig) != 0;
}

std::optional<std::string> Theory::vertex_type_name(const Signature& sig) const {
  auto it = sig_to_name_.find(sig);
  if (it == sig_to_name_.end()) return std::nullopt;
  return it->second;
}

std::set<int> Theory::refinement_indices(const Signature& sig) const {
  auto name = vertex_type_name(sig);
  if (!name) return {};
  auto it = refined_.find(*name);
  return it == refined_.end() ? std::set<int>{} : it->second;
}

const std::set<int>& Theory::refinement_indices_of(const std::string& name) const {
  static const std::set<int> empty;
  auto it = refined_.find(name);
  return it == refined_.end() ? empty : it->second;
}

Signature vertex_signature(const Graph& g, int vertex_slot) {
  Signature sig;
  for (int e : g.star(vertex_slot)) {
    const auto& he = g.half_edge(e);
    sig.counts[{he.type, he.orient}] += 1;
  }
  return sig;
}

std::optional<std::string> theory_violation(const Graph& g, const Theory& t) {
  for (int e = 0; e < g.half_edge_count(); ++e) {
    const auto& he = g.half_edge(e);
    if (!t.has_half_edge_type(he.type))
      return "half-edge id " + std::to_string(he.id) +
             " has undeclared type " + he.type;
    if (!t.orientation_valid(he.type, he.orient))
      return "half-edge id " + std::to_string(he.id) + " of type " + he.type +
             " has orientation " + orient_name(he.orient);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    Signature sig = vertex_signature(g, v);
    if (!t.has_vertex_signature(sig))
      return "vertex id " + std::to_string(g.vertex(v).id) +
             " has signature " + sig.to_string() +
             " which is not a vertex type of theory " + t.name();
  }
  return std::nullopt;
}

bool is_in_theory(const Graph& g, const Theory& t) {
  return !theory_violation(g, t).has_value();
}

bool is_superficially_divergent(const Graph& g, const Theory& t) {
  if (!g.is_connected())
    throw TheoryError(
        "superficial divergence is defined per connected component");
  Graph res = residue(g);
  return t.has_vertex_signature(vertex_signature(res, 0));
}

bool sigma_pairing_allowed(const Graph& g, const Theory& t) {
  for (auto [a, b] : g.internal_edges()) {
    const auto& ha = g.half_edge(a);
    const auto& hb = g.half_edge(b);
    if (!t.pairing_allowed(ha.type, ha.orient, hb.orient)) return false;
  }
  return true;
}

bool refined_types_declared(const Graph& g, const Theory& t) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    Signature sig = vertex_signature(g, v);
    auto indices = t.refinement_indices(sig);
    if (!indices.count(g.vertex(v).refined)) return false;
  }
  return true;
}

}  // namespace feynhopf
