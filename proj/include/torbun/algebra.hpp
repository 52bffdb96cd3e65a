#pragma once

// Finite-rank graded commutative rings over Z (models for the Chow ring of a
// smooth base), their elements, and the mixing map delta: M -> A^1.

#include "torbun/polynomial.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace torbun {

struct BasisElement {
  std::string name;
  unsigned degree = 0;
};

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Structure constants: products[i][j] = coefficients of basis_i * basis_j.
using StructureConstants = std::vector<std::vector<std::vector<Integer>>>;

class GradedAlgebra : public std::enable_shared_from_this<GradedAlgebra> {
 public:
  // basis[0] must be the unit "1" in degree 0.
  static AlgebraPtr create(unsigned top_degree, std::vector<BasisElement> basis, StructureConstants products,
                           std::vector<std::string> generators = {}) {
    auto a = std::shared_ptr<GradedAlgebra>(new GradedAlgebra());
    a->top_ = top_degree;
    a->basis_ = std::move(basis);
    a->products_ = std::move(products);
    a->generators_ = std::move(generators);
    a->validate();
    return a;
  }

  unsigned top_degree() const { return top_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& basis_element(std::size_t i) const { return basis_[i]; }
  // Names of multiplicative generators, for expression parsing.
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Integer>& product(std::size_t i, std::size_t j) const { return products_[i][j]; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].name == name) return i;
    return std::nullopt;
  }
  std::vector<std::size_t> degree_basis(unsigned d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree == d) out.push_back(i);
    return out;
  }

  AlgebraPtr ptr() const { return shared_from_this(); }

 private:
  GradedAlgebra() = default;

  void validate() {
    const std::size_t r = basis_.size();
    require(r >= 1 && basis_[0].degree == 0, ErrorCode::InvalidInput, "basis must start with the unit");
    require(products_.size() == r, ErrorCode::InvalidInput, "multiplication table has wrong size");
    for (const auto& b : basis_) require(b.degree <= top_, ErrorCode::InvalidInput, "basis element above top degree");
    for (std::size_t i = 0; i < r; ++i) {
      require(products_[i].size() == r, ErrorCode::InvalidInput, "multiplication table has wrong size");
      for (std::size_t j = 0; j < r; ++j) {
        require(products_[i][j].size() == r, ErrorCode::InvalidInput, "multiplication table has wrong size");
        for (std::size_t k = 0; k < r; ++k)
          if (products_[i][j][k] != 0)
            require(basis_[k].degree == basis_[i].degree + basis_[j].degree, ErrorCode::InvalidInput,
                    "product " + basis_[i].name + "*" + basis_[j].name + " violates the grading");
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Integer> e(r, Integer(0));
      e[i] = 1;
      require(products_[0][i] == e && products_[i][0] == e, ErrorCode::InvalidInput, "basis[0] is not a unit");
      for (std::size_t j = 0; j < r; ++j)
        require(products_[i][j] == products_[j][i], ErrorCode::InvalidInput,
                "multiplication is not commutative on " + basis_[i].name + ", " + basis_[j].name);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
          // (b_i b_j) b_k == b_i (b_j b_k)
          std::vector<Integer> left(r, Integer(0)), right(r, Integer(0));
          for (std::size_t s = 0; s < r; ++s) {
            if (products_[i][j][s] != 0)
              for (std::size_t t = 0; t < r; ++t) left[t] += products_[i][j][s] * products_[s][k][t];
            if (products_[j][k][s] != 0)
              for (std::size_t t = 0; t < r; ++t) right[t] += products_[j][k][s] * products_[i][s][t];
          }
          require(left == right, ErrorCode::InvalidInput,
                  "multiplication is not associative on " + basis_[i].name + ", " + basis_[j].name + ", " +
                      basis_[k].name);
        }
  }

  unsigned top_ = 0;
  std::vector<BasisElement> basis_;
  StructureConstants products_;
  std::vector<std::string> generators_;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(AlgebraPtr algebra)
      : algebra_(std::move(algebra)), coeffs_(algebra_->rank(), Integer(0)) {}
  AlgebraElement(AlgebraPtr algebra, std::vector<Integer> coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    require(coeffs_.size() == algebra_->rank(), ErrorCode::InvalidInput, "coefficient vector has wrong length");
  }

  static AlgebraElement zero(const AlgebraPtr& a) { return AlgebraElement(a); }
  static AlgebraElement one(const AlgebraPtr& a) { return scalar(a, 1); }
  static AlgebraElement scalar(const AlgebraPtr& a, const Integer& k) {
    AlgebraElement e(a);
    e.coeffs_[0] = k;
    return e;
  }
  static AlgebraElement basis(const AlgebraPtr& a, std::size_t i) {
    AlgebraElement e(a);
    e.coeffs_[i] = 1;
    return e;
  }
  static AlgebraElement named(const AlgebraPtr& a, const std::string& name) {
    auto i = a->find(name);
    require(i.has_value(), ErrorCode::ParseError, "unknown base class '" + name + "'");
    return basis(a, *i);
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
  }
  bool is_homogeneous() const { return degrees().size() <= 1; }
  std::vector<unsigned> degrees() const {
    std::vector<unsigned> d;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0 && std::find(d.begin(), d.end(), algebra_->basis_element(i).degree) == d.end())
        d.push_back(algebra_->basis_element(i).degree);
    std::sort(d.begin(), d.end());
    return d;
  }
  AlgebraElement component(unsigned degree) const {
    AlgebraElement r(algebra_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (algebra_->basis_element(i).degree == degree) r.coeffs_[i] = coeffs_[i];
    return r;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  AlgebraElement operator-() const {
    AlgebraElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend AlgebraElement operator*(const Integer& k, AlgebraElement a) {
    for (auto& c : a.coeffs_) c *= k;
    return a;
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_same(b);
    const std::size_t r = a.coeffs_.size();
    AlgebraElement out(a.algebra_);
    for (std::size_t i = 0; i < r; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (b.coeffs_[j] == 0) continue;
        Integer k = a.coeffs_[i] * b.coeffs_[j];
        const auto& p = a.algebra_->product(i, j);
        for (std::size_t t = 0; t < r; ++t)
          if (p[t] != 0) out.coeffs_[t] += k * p[t];
      }
    }
    return out;
  }
  AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }
  AlgebraElement pow(unsigned k) const {
    AlgebraElement r = one(algebra_);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.coeffs_ == b.coeffs_;
  }

  // "a1*a2 - a2^2", "-1", "0"; terms in basis order.
  std::string str() const {
    std::string s;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Integer& c = coeffs_[i];
      if (c == 0) continue;
      bool neg = c < 0;
      Integer mag = neg ? Integer(-c) : c;
      s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      const std::string& name = algebra_->basis_element(i).name;
      if (i == 0)
        s += mag.str();
      else if (mag == 1)
        s += name;
      else
        s += mag.str() + "*" + name;
    }
    return first ? "0" : s;
  }
  // Wrapped in parentheses when it has more than one term.
  std::string factor_str() const {
    std::size_t terms = 0;
    for (const auto& c : coeffs_) terms += (c != 0);
    return terms > 1 ? "(" + str() + ")" : str();
  }

 private:
  void check_same(const AlgebraElement& o) const {
    require(algebra_ == o.algebra_, ErrorCode::AlgebraMismatch, "elements belong to different algebras");
  }

  AlgebraPtr algebra_;
  std::vector<Integer> coeffs_;
};

namespace detail {

inline std::string monomial_name(const std::vector<std::string>& gens, const std::vector<unsigned>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += gens[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

inline void exponents_of_weight(const std::vector<unsigned>& degrees, unsigned weight, std::size_t i,
                                std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (i == degrees.size()) {
    if (weight == 0) out.push_back(cur);
    return;
  }
  for (unsigned k = weight / degrees[i] + 1; k-- > 0;) {
    cur[i] = k;
    exponents_of_weight(degrees, weight - k * degrees[i], i + 1, cur, out);
  }
  cur[i] = 0;
}

}  // namespace detail

// Polynomial ring on the generators truncated above top_degree, with the
// monomial basis ordered by degree, then descending exponent lex.
inline AlgebraPtr make_free_truncated(const std::vector<BasisElement>& generators, unsigned top_degree) {
  std::vector<std::string> names;
  std::vector<unsigned> degrees;
  for (const auto& g : generators) {
    require(g.degree >= 1, ErrorCode::InvalidInput, "generator " + g.name + " must have positive degree");
    require(g.degree <= top_degree, ErrorCode::InvalidInput, "generator " + g.name + " lies above the top degree");
    names.push_back(g.name);
    degrees.push_back(g.degree);
  }
  std::vector<std::vector<unsigned>> monomials;
  std::vector<BasisElement> basis;
  for (unsigned d = 0; d <= top_degree; ++d) {
    std::vector<std::vector<unsigned>> layer;
    std::vector<unsigned> cur(generators.size(), 0);
    detail::exponents_of_weight(degrees, d, 0, cur, layer);
    if (generators.empty() && d > 0) layer.clear();
    for (auto& e : layer) {
      basis.push_back({detail::monomial_name(names, e), d});
      monomials.push_back(e);
    }
  }
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = i;
  const std::size_t r = basis.size();
  StructureConstants table(r, std::vector<std::vector<Integer>>(r, std::vector<Integer>(r, Integer(0))));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<unsigned> e(monomials[i].size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = monomials[i][k] + monomials[j][k];
      auto it = index.find(e);
      if (it != index.end()) table[i][j][it->second] = 1;
    }
  return GradedAlgebra::create(top_degree, std::move(basis), std::move(table), names);
}

inline AlgebraPtr make_point() { return make_free_truncated({}, 0); }

inline AlgebraPtr make_projective(unsigned n, const std::string& generator = "h") {
  return make_free_truncated({{generator, 1}}, n);
}

// A (x) B with basis pairs ordered by total degree, then by (i, j).
inline AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < a->rank(); ++i)
    for (std::size_t j = 0; j < b->rank(); ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto x, auto y) {
    return a->basis_element(x.first).degree + b->basis_element(x.second).degree <
           a->basis_element(y.first).degree + b->basis_element(y.second).degree;
  });
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<BasisElement> basis;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    index[pairs[k]] = k;
    const auto& x = a->basis_element(i);
    const auto& y = b->basis_element(j);
    std::string name = i == 0 ? y.name : (j == 0 ? x.name : x.name + "*" + y.name);
    basis.push_back({name, x.degree + y.degree});
  }
  const std::size_t r = basis.size();
  StructureConstants table(r, std::vector<std::vector<Integer>>(r, std::vector<Integer>(r, Integer(0))));
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q < r; ++q) {
      auto [i1, j1] = pairs[p];
      auto [i2, j2] = pairs[q];
      const auto& pa = a->product(i1, i2);
      const auto& pb = b->product(j1, j2);
      for (std::size_t s = 0; s < a->rank(); ++s) {
        if (pa[s] == 0) continue;
        for (std::size_t t = 0; t < b->rank(); ++t)
          if (pb[t] != 0) table[p][q][index.at({s, t})] += pa[s] * pb[t];
      }
    }
  std::vector<std::string> gens = a->generators();
  gens.insert(gens.end(), b->generators().begin(), b->generators().end());
  return GradedAlgebra::create(a->top_degree() + b->top_degree(), std::move(basis), std::move(table), gens);
}

// delta: M -> A^1, given by the images of the standard basis vectors.
class MixingMap {
 public:
  MixingMap(AlgebraPtr algebra, std::vector<AlgebraElement> images)
      : algebra_(std::move(algebra)), images_(std::move(images)) {
    for (const auto& x : images_) {
      require(x.algebra() == algebra_, ErrorCode::AlgebraMismatch, "mixing image from another algebra");
      for (auto d : x.degrees())
        require(d == 1, ErrorCode::DegreeMismatch, "mixing image " + x.str() + " is not of degree 1");
    }
  }
  static MixingMap zero(const AlgebraPtr& a, std::size_t n) {
    return MixingMap(a, std::vector<AlgebraElement>(n, AlgebraElement::zero(a)));
  }

  std::size_t lattice_rank() const { return images_.size(); }
  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<AlgebraElement>& images() const { return images_; }

  AlgebraElement delta(const LatticeVector& m) const {
    require(m.rank() == images_.size(), ErrorCode::InvalidInput, "character has wrong rank");
    AlgebraElement r = AlgebraElement::zero(algebra_);
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (m[i] != 0) r += m[i] * images_[i];
    return r;
  }

  // Multiplicative extension Sym M -> A*.
  AlgebraElement delta_extend(const IntPolynomial& f) const {
    AlgebraElement r = AlgebraElement::zero(algebra_);
    for (const auto& [e, c] : f.terms()) {
      AlgebraElement t = AlgebraElement::scalar(algebra_, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= images_[i].pow(e[i]);
      r += t;
    }
    return r;
  }

 private:
  AlgebraPtr algebra_;
  std::vector<AlgebraElement> images_;
};

}  // namespace torbun
