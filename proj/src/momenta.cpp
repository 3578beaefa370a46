#include "feynhopf/momenta.hpp"

#include <algorithm>
#include <stdexcept>

namespace feynhopf {

namespace {

// Exact reduced row echelon form. Returns pivot column per row; frees are
// the non-pivot columns.
struct Rref {
  std::vector<std::vector<Rat>> rows;
  std::vector<int> pivot_col;
};

Rref rref(std::vector<std::vector<Rat>> m) {
  Rref out;
  int nrows = static_cast<int>(m.size());
  int ncols = nrows == 0 ? 0 : static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < ncols && rank < nrows; ++col) {
    int pivot = -1;
    for (int r = rank; r < nrows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rat inv = m[rank][col];
    for (int c = col; c < ncols; ++c) m[rank][c] /= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int c = col; c < ncols; ++c) m[r][c] -= f * m[rank][c];
    }
    out.pivot_col.push_back(col);
    ++rank;
  }
  m.resize(rank);
  out.rows = std::move(m);
  return out;
}

}  // namespace

MomentumSpace::MomentumSpace(const Graph& g, int dimension)
    : dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");

  // Columns: internal-edge representatives first (so elimination binds them
  // and external legs stay free), then external half-edges. The momentum of
  // the partner half-edge is minus the representative's.
  auto edges = g.internal_edges();
  std::vector<int> col_of(g.half_edge_count(), -1);
  std::vector<Rat> sign_of(g.half_edge_count(), 1);
  std::vector<int> col_slot;  // half-edge carrying each column
  for (auto [a, b] : edges) {
    col_of[a] = static_cast<int>(col_slot.size());
    col_of[b] = col_of[a];
    sign_of[b] = -1;
    col_slot.push_back(a);
  }
  int n_internal_cols = static_cast<int>(col_slot.size());
  for (int e = 0; e < g.half_edge_count(); ++e)
    if (g.is_external(e)) {
      col_of[e] = static_cast<int>(col_slot.size());
      col_slot.push_back(e);
    }
  int ncols = static_cast<int>(col_slot.size());

  // One conservation row per vertex (self-loop contributions cancel).
  std::vector<std::vector<Rat>> m(g.vertex_count(),
                                  std::vector<Rat>(ncols, 0));
  for (int e = 0; e < g.half_edge_count(); ++e)
    m[g.half_edge(e).vertex][col_of[e]] += sign_of[e];

  Rref r = rref(std::move(m));

  std::vector<char> is_pivot(ncols, 0);
  for (int c : r.pivot_col) is_pivot[c] = 1;
  std::vector<int> free_cols;
  // External coordinates first, then loop momenta, each in slot order.
  for (int c = n_internal_cols; c < ncols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  for (int c = 0; c < n_internal_cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  std::vector<int> free_rank(ncols, -1);
  for (std::size_t i = 0; i < free_cols.size(); ++i)
    free_rank[free_cols[i]] = static_cast<int>(i);
  for (int c : free_cols)
    frees_.push_back(Free{col_slot[c], c >= n_internal_cols});

  // Expression of every column over the free coordinates.
  std::vector<std::vector<Rat>> col_expr(
      ncols, std::vector<Rat>(free_cols.size(), 0));
  for (int c = 0; c < ncols; ++c)
    if (!is_pivot[c]) col_expr[c][free_rank[c]] = 1;
  for (std::size_t row = 0; row < r.rows.size(); ++row) {
    int pc = r.pivot_col[row];
    for (int c = 0; c < ncols; ++c) {
      if (c == pc || r.rows[row][c] == 0) continue;
      // pivot = -sum of free contributions (after full reduction only free
      // columns remain)
      col_expr[pc][free_rank[c]] -= r.rows[row][c];
    }
  }

  he_expr_.assign(g.half_edge_count(), {});
  for (int e = 0; e < g.half_edge_count(); ++e) {
    he_expr_[e] = col_expr[col_of[e]];
    if (sign_of[e] < 0)
      for (auto& x : he_expr_[e]) x = -x;
  }
}

std::string MomentumSpace::var_name(int var) const {
  int free_index = var / dimension_;
  int component = var % dimension_;
  int rank = 0;
  for (int i = 0; i < free_index; ++i)
    if (frees_[i].external == frees_[free_index].external) ++rank;
  std::string base =
      (frees_[free_index].external ? "q" : "l") + std::to_string(rank + 1);
  if (dimension_ > 1) base += "_" + std::to_string(component);
  return base;
}

std::vector<std::string> MomentumSpace::var_names() const {
  std::vector<std::string> out;
  for (int v = 0; v < var_count(); ++v) out.push_back(var_name(v));
  return out;
}

Poly MomentumSpace::half_edge_momentum(int he_slot, int component) const {
  Poly out(var_count());
  const auto& expr = he_expr_[he_slot];
  for (int i = 0; i < nfree(); ++i) {
    if (expr[i] == 0) continue;
    Poly::Exponents e(var_count(), 0);
    e[var_index(i, component)] = 1;
    out.add_term(e, expr[i]);
  }
  return out;
}

std::vector<std::vector<Rat>> MomentumSpace::raw_point(
    const std::vector<Rat>& free_values) const {
  if (static_cast<int>(free_values.size()) != var_count())
    throw std::invalid_argument("wrong number of free-coordinate values");
  std::vector<std::vector<Rat>> out(he_expr_.size(),
                                    std::vector<Rat>(dimension_, 0));
  for (std::size_t e = 0; e < he_expr_.size(); ++e)
    for (int d = 0; d < dimension_; ++d) {
      Rat v = 0;
      for (int i = 0; i < nfree(); ++i)
        v += he_expr_[e][i] * free_values[var_index(i, d)];
      out[e][d] = v;
    }
  return out;
}

Poly transport(const Poly& f, const MomentumSpace& from,
               const MomentumSpace& to, const std::vector<int>& he_map) {
  if (f.nvars() != from.var_count())
    throw std::invalid_argument("polynomial does not live on `from`");
  std::vector<Poly> images;
  images.reserve(from.var_count());
  for (int i = 0; i < from.nfree(); ++i) {
    int slot = from.free_half_edge(i);
    int mapped = he_map.at(slot);
    if (mapped < 0)
      throw std::invalid_argument("half-edge map undefined on a coordinate");
    for (int d = 0; d < from.dimension(); ++d)
      images.push_back(to.half_edge_momentum(mapped, d));
  }
  return f.substitute(images, to.var_count());
}

Poly pullback_contraction(const Poly& f, const MomentumSpace& contracted,
                          const MomentumSpace& parent,
                          const std::vector<int>& he_to_parent) {
  return transport(f, contracted, parent, he_to_parent);
}

Poly pullback_inclusion(const Poly& f, const MomentumSpace& subgraph,
                        const MomentumSpace& parent) {
  // Same half-edge set, stronger constraints on the parent side: the
  // induced map is transport along the identity half-edge map.
  int n = 0;
  for (int i = 0; i < subgraph.nfree(); ++i)
    n = std::max(n, subgraph.free_half_edge(i) + 1);
  std::vector<int> id_map(n);
  for (int i = 0; i < n; ++i) id_map[i] = i;
  return transport(f, subgraph, parent, id_map);
}

BElement BElement::one(int dimension) {
  BElement out;
  Graph empty;
  CanonicalForm cf = canonical_form(empty);
  MomentumSpace ms(cf.graph, dimension);
  out.parts_.emplace(cf.key, Component{cf.graph, ms.one()});
  return out;
}

void BElement::set_component(const Graph& canonical_rep, Poly fn) {
  if (fn.is_zero()) return;
  std::string key = canonical_key(canonical_rep);
  parts_[key] = Component{canonical_rep, std::move(fn)};
}

BElement BElement::operator+(const BElement& o) const {
  BElement out = *this;
  for (const auto& [k, comp] : o.parts_) {
    auto it = out.parts_.find(k);
    if (it == out.parts_.end()) {
      out.parts_.emplace(k, comp);
    } else {
      it->second.fn = it->second.fn + comp.fn;
      if (it->second.fn.is_zero()) out.parts_.erase(it);
    }
  }
  return out;
}

BElement BElement::operator-(const BElement& o) const {
  return *this + o.scaled(-1);
}

BElement BElement::scaled(const Rat& c) const {
  BElement out;
  if (c == 0) return out;
  for (const auto& [k, comp] : parts_)
    out.parts_.emplace(k, Component{comp.graph, comp.fn.scaled(c)});
  return out;
}

bool BElement::operator==(const BElement& o) const {
  if (parts_.size() != o.parts_.size()) return false;
  auto it = o.parts_.begin();
  for (const auto& [k, comp] : parts_) {
    if (k != it->first || !(comp.fn == it->second.fn)) return false;
    ++it;
  }
  return true;
}

BElement BElement::pointwise_product(const BElement& o) const {
  BElement out;
  for (const auto& [k, comp] : parts_) {
    auto it = o.parts_.find(k);
    if (it == o.parts_.end()) continue;
    Poly p = comp.fn * it->second.fn;
    if (!p.is_zero()) out.parts_.emplace(k, Component{comp.graph, std::move(p)});
  }
  return out;
}

BElement BElement::bullet(const BElement& o, int dimension) const {
  BElement out;
  for (const auto& [ka, a] : parts_) {
    (void)ka;
    for (const auto& [kb, b] : o.parts_) {
      (void)kb;
      Graph u = disjoint_union(a.graph, b.graph);
      CanonicalForm cf = canonical_form(u);
      MomentumSpace mu(u, dimension);
      MomentumSpace mrep(cf.graph, dimension);
      MomentumSpace ma(a.graph, dimension);
      MomentumSpace mb(b.graph, dimension);
      // embed both factors into the union, multiply, then move to the
      // union's canonical representative
      std::vector<int> map_a(a.graph.half_edge_count());
      for (int e = 0; e < a.graph.half_edge_count(); ++e) map_a[e] = e;
      std::vector<int> map_b(b.graph.half_edge_count());
      for (int e = 0; e < b.graph.half_edge_count(); ++e)
        map_b[e] = a.graph.half_edge_count() + e;
      Poly fa = transport(a.fn, ma, mu, map_a);
      Poly fb = transport(b.fn, mb, mu, map_b);
      Poly prod = transport(fa * fb, mu, mrep, cf.he_map);
      if (prod.is_zero()) continue;
      auto it = out.parts_.find(cf.key);
      if (it == out.parts_.end()) {
        out.parts_.emplace(cf.key, Component{cf.graph, std::move(prod)});
      } else {
        it->second.fn = it->second.fn + prod;
        if (it->second.fn.is_zero()) out.parts_.erase(it);
      }
    }
  }
  return out;
}

}  // namespace feynhopf
