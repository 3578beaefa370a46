#pragma once

#include <map>
#include <string>
#include <vector>

#include "feynhopf/rational.hpp"

namespace feynhopf {

/// Sparse multivariate polynomial over the rationals with a fixed variable
/// count. Terms are keyed by exponent vector in lexicographic order; zero
/// coefficients are never stored.
class Poly {
 public:
  using Exponents = std::vector<int>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rat& c);
  static Poly variable(int nvars, int index);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rat>& terms() const { return terms_; }

  Poly& add_term(const Exponents& e, const Rat& c);

  Poly operator+(const Poly&) const;
  Poly operator-(const Poly&) const;
  Poly operator*(const Poly&) const;
  Poly operator-() const;
  Poly scaled(const Rat& c) const;
  Poly pow(int k) const;
  bool operator==(const Poly&) const = default;

  /// Maximum total degree of a term; -1 for the zero polynomial.
  int total_degree() const;

  /// Sum of the terms of total degree <= m / > m.
  Poly truncate_total_degree(int m) const;
  Poly tail_above_degree(int m) const;

  /// Partial derivative.
  Poly derivative(int var) const;

  Rat constant_term() const;
  Rat evaluate(const std::vector<Rat>& point) const;

  /// Ring morphism sending variable i to images[i]; all images share one
  /// target variable count.
  Poly substitute(const std::vector<Poly>& images, int target_nvars) const;

  std::string to_string(const std::vector<std::string>& var_names) const;

 private:
  int nvars_;
  std::map<Exponents, Rat> terms_;
};

}  // namespace feynhopf
