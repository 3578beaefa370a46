#include "feynhopf/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace feynhopf {

Poly Poly::constant(int nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw std::out_of_range("polynomial variable index");
  Poly p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

Poly& Poly::add_term(const Exponents& e, const Rat& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw std::invalid_argument("exponent vector of wrong length");
  if (c == 0) return *this;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const Rat& c) const {
  Poly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::pow(int k) const {
  Poly out = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    (void)c;
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  }
  return d;
}

Poly Poly::truncate_total_degree(int m) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) <= m) out.terms_.emplace(e, c);
  return out;
}

Poly Poly::tail_above_degree(int m) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) > m) out.terms_.emplace(e, c);
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Rat Poly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Poly::evaluate(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("evaluation point of wrong length");
  Rat out = 0;
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    out += term;
  }
  return out;
}

Poly Poly::substitute(const std::vector<Poly>& images, int target_nvars) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw std::invalid_argument("substitute needs one image per variable");
  // cache of images[i]^k
  std::vector<std::vector<Poly>> powers(nvars_);
  for (int i = 0; i < nvars_; ++i)
    powers[i].push_back(Poly::constant(target_nvars, 1));
  Poly out(target_nvars);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(target_nvars, c);
    for (int i = 0; i < nvars_; ++i) {
      while (static_cast<int>(powers[i].size()) <= e[i])
        powers[i].push_back(powers[i].back() * images[i]);
      if (e[i] > 0) term = term * powers[i][e[i]];
    }
    out = out + term;
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print in reverse lexicographic order so leading variables come first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any_var = false;
    std::ostringstream vars;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (any_var) vars << "*";
      any_var = true;
      vars << var_names.at(i);
      if (e[i] > 1) vars << "^" << e[i];
    }
    if (!any_var) {
      os << rat_to_string(a);
    } else if (a == 1) {
      os << vars.str();
    } else {
      os << rat_to_string(a) << "*" << vars.str();
    }
  }
  return os.str();
}

}  // namespace feynhopf
