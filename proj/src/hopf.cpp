#include "feynhopf/hopf.hpp"

#include <algorithm>

#include "feynhopf/parallel.hpp"

namespace feynhopf {

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.degree();
  return d;
}

Monomial unit_monomial() { return Monomial{}; }

Monomial make_monomial(std::vector<SpecifiedGraph> factors) {
  Monomial m;
  m.factors = std::move(factors);
  std::sort(m.factors.begin(), m.factors.end(),
            [](const SpecifiedGraph& a, const SpecifiedGraph& b) {
              return a.canon < b.canon;
            });
  if (m.factors.empty()) {
    m.key = "1";
    return m;
  }
  std::string key;
  for (const auto& f : m.factors) {
    if (!key.empty()) key += "*";
    key += f.canon;
  }
  m.key = std::move(key);
  return m;
}

Monomial monomial_of(const SpecifiedGraph& g) {
  return make_monomial(specified_components(g.graph, g.spec));
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  std::vector<SpecifiedGraph> factors = a.factors;
  factors.insert(factors.end(), b.factors.begin(), b.factors.end());
  return make_monomial(std::move(factors));
}

AlgebraElement AlgebraElement::one() { return from(unit_monomial()); }

AlgebraElement AlgebraElement::from(const Monomial& m, Rat coeff) {
  AlgebraElement x;
  x.add(m, coeff);
  return x;
}

AlgebraElement& AlgebraElement::add(const Monomial& m, const Rat& coeff) {
  if (coeff == 0) return *this;
  auto it = terms.find(m.key);
  if (it == terms.end()) {
    terms.emplace(m.key, std::make_pair(coeff, m));
  } else {
    it->second.first += coeff;
    if (it->second.first == 0) terms.erase(it);
  }
  return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  for (const auto& [k, t] : o.terms) {
    (void)k;
    out.add(t.second, t.first);
  }
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  for (const auto& [k, t] : o.terms) {
    (void)k;
    out.add(t.second, -t.first);
  }
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  AlgebraElement out;
  for (const auto& [ka, ta] : terms) {
    (void)ka;
    for (const auto& [kb, tb] : o.terms) {
      (void)kb;
      out.add(monomial_product(ta.second, tb.second), ta.first * tb.first);
    }
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(const Rat& c) const {
  AlgebraElement out;
  if (c == 0) return out;
  for (const auto& [k, t] : terms) {
    (void)k;
    out.add(t.second, t.first * c);
  }
  return out;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto it = o.terms.begin();
  for (const auto& [k, t] : terms) {
    if (k != it->first || t.first != it->second.first) return false;
    ++it;
  }
  return true;
}

TensorSum& TensorSum::add(const Monomial& left, const Monomial& right,
                          const Rat& coeff) {
  if (coeff == 0) return *this;
  auto key = std::make_pair(left.key, right.key);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, TensorTerm{coeff, left, right});
  } else {
    it->second.coeff += coeff;
    if (it->second.coeff == 0) terms.erase(it);
  }
  return *this;
}

TensorSum TensorSum::operator+(const TensorSum& o) const {
  TensorSum out = *this;
  for (const auto& [k, t] : o.terms) {
    (void)k;
    out.add(t.left, t.right, t.coeff);
  }
  return out;
}

TensorSum TensorSum::operator-(const TensorSum& o) const {
  TensorSum out = *this;
  for (const auto& [k, t] : o.terms) {
    (void)k;
    out.add(t.left, t.right, -t.coeff);
  }
  return out;
}

bool TensorSum::operator==(const TensorSum& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto it = o.terms.begin();
  for (const auto& [k, t] : terms) {
    if (k != it->first || t.coeff != it->second.coeff) return false;
    ++it;
  }
  return true;
}

Rat counit(const Monomial& m) {
  for (const auto& f : m.factors)
    if (f.graph.internal_edge_count() > 0) return 0;
  return 1;
}

Rat counit(const AlgebraElement& x) {
  Rat out = 0;
  for (const auto& [k, t] : x.terms) {
    (void)k;
    out += t.first * counit(t.second);
  }
  return out;
}

Monomial hopf_project(const Monomial& m) {
  std::vector<SpecifiedGraph> kept;
  for (const auto& f : m.factors)
    if (f.graph.internal_edge_count() > 0) kept.push_back(f);
  return make_monomial(std::move(kept));
}

AlgebraElement hopf_project(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [k, t] : x.terms) {
    (void)k;
    out.add(hopf_project(t.second), t.first);
  }
  return out;
}

std::map<int, AlgebraElement> grade(const AlgebraElement& x) {
  std::map<int, AlgebraElement> out;
  for (const auto& [k, t] : x.terms) {
    (void)k;
    out[t.second.degree()].add(t.second, t.first);
  }
  return out;
}

namespace {

// One coproduct term per admissible specified cover, or nothing when the
// contracted graph leaves the theory.
bool cover_term(const SpecifiedGraph& g, const Theory& t,
                const SpecifiedCover& cover, Monomial* left,
                Monomial* right) {
  SpecifiedContraction sc = specified_contract(g, cover);
  if (!is_in_theory(sc.graph.graph, t)) return false;
  if (!refined_types_declared(sc.graph.graph, t)) return false;
  Graph sub = CoveringSubgraph(g.graph, cover.keep).materialize();
  *left = make_monomial(specified_components(sub, cover.sub_spec));
  *right = make_monomial(
      specified_components(sc.graph.graph, sc.graph.spec));
  return true;
}

TensorSum project_both_legs(const TensorSum& full) {
  TensorSum out;
  for (const auto& [k, t] : full.terms) {
    (void)k;
    out.add(hopf_project(t.left), hopf_project(t.right), t.coeff);
  }
  return out;
}

TensorSum tensor_product(const TensorSum& a, const TensorSum& b) {
  TensorSum out;
  for (const auto& [ka, ta] : a.terms) {
    (void)ka;
    for (const auto& [kb, tb] : b.terms) {
      (void)kb;
      out.add(monomial_product(ta.left, tb.left),
              monomial_product(ta.right, tb.right), ta.coeff * tb.coeff);
    }
  }
  return out;
}

}  // namespace

TensorSum HopfAlgebra::coproduct_connected(const SpecifiedGraph& g) const {
  auto edges = g.graph.internal_edges();
  int nedges = static_cast<int>(edges.size());
  if (nedges > 30) throw GraphError("too many internal edges to enumerate");
  std::size_t nmasks = std::size_t{1} << nedges;

  // OpenMP kernel: one slot per kept-edge subset, merged in subset order so
  // the result is independent of the schedule.
  std::vector<std::vector<std::pair<Monomial, Monomial>>> slots(nmasks);
  parallel::parallel_for(nmasks, [&](std::size_t mask) {
    std::vector<char> keep(nedges, 0);
    for (int k = 0; k < nedges; ++k) keep[k] = (mask >> k) & 1u;
    for (const auto& jvec : admissible_index_vectors(g, *theory_, keep)) {
      SpecifiedCover cover{keep, jvec};
      Monomial left, right;
      if (cover_term(g, *theory_, cover, &left, &right))
        slots[mask].emplace_back(std::move(left), std::move(right));
    }
  });

  TensorSum out;
  for (auto& slot : slots)
    for (auto& [left, right] : slot) out.add(left, right, 1);
  return out;
}

TensorSum HopfAlgebra::coproduct(const SpecifiedGraph& g, bool reduced) const {
  return coproduct(monomial_of(g), reduced);
}

TensorSum HopfAlgebra::coproduct(const Monomial& m, bool reduced) const {
  TensorSum acc;
  acc.add(unit_monomial(), unit_monomial(), 1);
  for (const auto& f : m.factors)
    acc = tensor_product(acc, coproduct_connected(f));
  return reduced ? project_both_legs(acc) : acc;
}

TensorSum HopfAlgebra::coproduct(const AlgebraElement& x, bool reduced) const {
  TensorSum out;
  for (const auto& [k, t] : x.terms) {
    (void)k;
    TensorSum d = coproduct(t.second, reduced);
    for (const auto& [dk, dt] : d.terms) {
      (void)dk;
      out.add(dt.left, dt.right, dt.coeff * t.first);
    }
  }
  return out;
}

TensorSum HopfAlgebra::coproduct_reference(const SpecifiedGraph& g,
                                           bool reduced) const {
  // Serial reference: single pass over the specified covers.
  TensorSum acc;
  acc.add(unit_monomial(), unit_monomial(), 1);
  for (const auto& f : monomial_of(g).factors) {
    TensorSum one;
    for (const auto& cover : specified_covering_subgraphs(f, *theory_)) {
      Monomial left, right;
      if (cover_term(f, *theory_, cover, &left, &right))
        one.add(left, right, 1);
    }
    acc = tensor_product(acc, one);
  }
  return reduced ? project_both_legs(acc) : acc;
}

AlgebraElement HopfAlgebra::antipode_factor(const SpecifiedGraph& g) const {
  if (g.graph.internal_edge_count() == 0) return AlgebraElement::one();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = antipode_memo_.find(g.canon);
    if (it != antipode_memo_.end()) return it->second;
  }
  Monomial self = monomial_of(g);
  TensorSum delta = coproduct(self, /*reduced=*/true);
  AlgebraElement out = AlgebraElement::from(self, -1);
  for (const auto& [k, t] : delta.terms) {
    (void)k;
    if (t.left.is_unit() || t.right.is_unit()) continue;
    AlgebraElement s_left = AlgebraElement::one();
    for (const auto& f : t.left.factors) s_left = s_left * antipode_factor(f);
    out = out - (s_left * AlgebraElement::from(t.right)).scaled(t.coeff);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  antipode_memo_.emplace(g.canon, out);
  return out;
}

AlgebraElement HopfAlgebra::antipode(const AlgebraElement& x) const {
  AlgebraElement out;
  for (const auto& [k, t] : hopf_project(x).terms) {
    (void)k;
    AlgebraElement s = AlgebraElement::one();
    for (const auto& f : t.second.factors) s = s * antipode_factor(f);
    out = out + s.scaled(t.first);
  }
  return out;
}

UnrefinedCoproduct coproduct_unrefined(const Graph& g, const Theory& t,
                                       bool reduced) {
  auto edges = g.internal_edges();
  int nedges = static_cast<int>(edges.size());
  if (nedges > 30) throw GraphError("too many internal edges to enumerate");

  UnrefinedCoproduct out;
  auto monomial_key = [&](const Graph& graph) {
    std::vector<std::string> keys;
    std::vector<Graph> factors;
    int n = graph.component_count();
    for (int c = 0; c < n; ++c) {
      Graph sub = graph.component_subgraph(c);
      if (reduced && sub.internal_edge_count() == 0) continue;
      keys.push_back(canonical_key(sub, /*with_refined=*/false));
      factors.push_back(std::move(sub));
    }
    std::vector<int> order(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return keys[a] < keys[b]; });
    std::string key;
    std::vector<Graph> sorted;
    for (int i : order) {
      if (!key.empty()) key += "*";
      key += keys[i];
      sorted.push_back(factors[i]);
    }
    if (key.empty()) key = "1";
    out.monomials.emplace(key, std::move(sorted));
    return key;
  };

  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << nedges); ++mask) {
    std::vector<char> keep(nedges, 0);
    for (int k = 0; k < nedges; ++k) keep[k] = (mask >> k) & 1u;
    CoveringSubgraph cover(g, keep);
    Graph sub = cover.materialize();
    if (!sub.is_locally_irreducible()) continue;
    bool divergent = true;
    int n = sub.component_count();
    for (int c = 0; c < n && divergent; ++c)
      divergent = is_superficially_divergent(sub.component_subgraph(c), t);
    if (!divergent) continue;
    ContractionResult res = contract(g, cover);
    if (!is_in_theory(res.graph, t)) continue;
    std::string lk = monomial_key(sub);
    std::string rk = monomial_key(res.graph);
    out.terms[{lk, rk}] += 1;
  }
  return out;
}

}  // namespace feynhopf
