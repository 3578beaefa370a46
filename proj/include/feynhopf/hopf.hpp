#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "feynhopf/rational.hpp"
#include "feynhopf/specified.hpp"
#include "feynhopf/theory.hpp"

namespace feynhopf {

/// Commutative product of connected specified graphs; the empty multiset is
/// the unit. Factors are kept sorted by canonical key.
struct Monomial {
  std::vector<SpecifiedGraph> factors;
  std::string key = "1";

  bool is_unit() const { return factors.empty(); }
  int degree() const;
};

Monomial unit_monomial();
Monomial make_monomial(std::vector<SpecifiedGraph> factors);
Monomial monomial_of(const SpecifiedGraph& g);  // split into components
Monomial monomial_product(const Monomial& a, const Monomial& b);

/// Exact rational linear combination of monomials; no zero coefficients.
struct AlgebraElement {
  std::map<std::string, std::pair<Rat, Monomial>> terms;

  static AlgebraElement zero() { return {}; }
  static AlgebraElement one();
  static AlgebraElement from(const Monomial& m, Rat coeff = 1);

  AlgebraElement& add(const Monomial& m, const Rat& coeff);
  AlgebraElement operator+(const AlgebraElement&) const;
  AlgebraElement operator-(const AlgebraElement&) const;
  AlgebraElement operator*(const AlgebraElement&) const;
  AlgebraElement scaled(const Rat& c) const;
  bool operator==(const AlgebraElement&) const;
  bool is_zero() const { return terms.empty(); }
};

struct TensorTerm {
  Rat coeff;
  Monomial left;
  Monomial right;
};

/// Element of the tensor square: finite rational combination of pairs of
/// monomials, keyed canonically on both legs.
struct TensorSum {
  std::map<std::pair<std::string, std::string>, TensorTerm> terms;

  TensorSum& add(const Monomial& left, const Monomial& right,
                 const Rat& coeff);
  TensorSum operator+(const TensorSum&) const;
  TensorSum operator-(const TensorSum&) const;
  bool operator==(const TensorSum&) const;
  bool is_zero() const { return terms.empty(); }
};

Rat counit(const Monomial& m);
Rat counit(const AlgebraElement& x);

/// Quotient map onto the Hopf algebra: every internal-edge-free factor of a
/// monomial becomes the unit. Idempotent.
Monomial hopf_project(const Monomial& m);
AlgebraElement hopf_project(const AlgebraElement& x);

/// Decomposition by total loop number.
std::map<int, AlgebraElement> grade(const AlgebraElement& x);

/// Coproducts and antipode for a fixed theory. The coproduct enumeration
/// over kept-edge subsets is the OpenMP kernel; coproduct_reference is the
/// serial implementation kept for testing, and both produce identical sums.
class HopfAlgebra {
 public:
  explicit HopfAlgebra(const Theory& t) : theory_(&t) {}

  const Theory& theory() const { return *theory_; }

  /// Coproduct on the bialgebra of specified graphs (reduced = false) or on
  /// its Hopf quotient (reduced = true).
  TensorSum coproduct(const SpecifiedGraph& g, bool reduced) const;
  TensorSum coproduct(const Monomial& m, bool reduced) const;
  TensorSum coproduct(const AlgebraElement& x, bool reduced) const;

  TensorSum coproduct_reference(const SpecifiedGraph& g, bool reduced) const;

  /// Antipode of the Hopf quotient, defined by the usual recursion on the
  /// reduced coproduct; multiplicative over monomials.
  AlgebraElement antipode(const AlgebraElement& x) const;

 private:
  TensorSum coproduct_connected(const SpecifiedGraph& g) const;
  AlgebraElement antipode_factor(const SpecifiedGraph& g) const;

  const Theory* theory_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, AlgebraElement> antipode_memo_;
};

/// Coproduct in the unrefined setting: vertices compared without refined
/// indices and no specification choices. Used to reproduce coefficients of
/// the plain graph bialgebra.
struct UnrefinedCoproduct {
  std::map<std::pair<std::string, std::string>, Rat> terms;
  std::map<std::string, std::vector<Graph>> monomials;  // key -> factors
};

UnrefinedCoproduct coproduct_unrefined(const Graph& g, const Theory& t,
                                       bool reduced);

}  // namespace feynhopf
