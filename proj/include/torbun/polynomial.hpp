#pragma once

// Sparse multivariate polynomials and rational functions whose denominators
// are products of linear forms.

#include "torbun/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace torbun {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

// Printing order: higher total degree first, then descending exponent lex
// (x1^2, x1*x2, x2^2).
struct MonomialOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline std::vector<std::string> default_variable_names(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

template <class C>
class Polynomial {
 public:
  using Terms = std::map<Exponent, C, MonomialOrder>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : n_(num_vars) {}

  static Polynomial constant(std::size_t n, const C& c) {
    Polynomial p(n);
    if (c != 0) p.terms_[Exponent(n, 0)] = c;
    return p;
  }
  static Polynomial variable(std::size_t n, std::size_t i) {
    Polynomial p(n);
    Exponent e(n, 0);
    e[i] = 1;
    p.terms_[e] = C(1);
    return p;
  }
  // Linear form sum c_i x_i.
  template <class V>
  static Polynomial linear(const V& coeffs) {
    Polynomial p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) {
        Exponent e(coeffs.size(), 0);
        e[i] = 1;
        p.terms_[e] = C(coeffs[i]);
      }
    return p;
  }

  std::size_t num_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }
  C constant_term() const {
    auto it = terms_.find(Exponent(n_, 0));
    return it == terms_.end() ? C(0) : it->second;
  }

  // -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    return true;
  }

  void add_term(const Exponent& e, const C& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (n_ == 0 && terms_.empty()) n_ = o.n_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (n_ == 0 && terms_.empty()) n_ = o.n_;
    for (const auto& [e, c] : o.terms_) add_term(e, C(-c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r(n_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(std::max(a.n_, b.n_));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend Polynomial operator*(const C& k, const Polynomial& p) {
    Polynomial r(p.n_);
    if (k == 0) return r;
    for (const auto& [e, c] : p.terms_) r.terms_[e] = k * c;
    return r;
  }
  Polynomial pow(unsigned k) const {
    Polynomial r = constant(n_, C(1));
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  // Homogeneous component of the given degree.
  Polynomial component(unsigned d) const {
    Polynomial r(n_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) r.terms_[e] = c;
    return r;
  }

  // p(x) with x_i replaced by images[i].
  template <class D>
  Polynomial<D> substitute(const std::vector<Polynomial<D>>& images, std::size_t target_vars) const {
    Polynomial<D> r(target_vars);
    for (const auto& [e, c] : terms_) {
      Polynomial<D> t = Polynomial<D>::constant(target_vars, D(c));
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= images[i].pow(e[i]);
      r += t;
    }
    return r;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      bool neg = c < 0;
      C mag = neg ? C(-c) : c;
      if (first)
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coeff = to_string(mag);
      if (mono.empty())
        s += coeff;
      else if (mag == 1)
        s += mono;
      else
        s += coeff + "*" + mono;
    }
    return s;
  }
  std::string str() const { return str(default_variable_names(n_)); }

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

inline RatPolynomial to_rational(const IntPolynomial& p) {
  RatPolynomial r(p.num_vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, Rational(c));
  return r;
}

// Integer polynomial from one with integral rational coefficients.
inline IntPolynomial to_integer(const RatPolynomial& p) {
  IntPolynomial r(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    require(denominator_of(c) == 1, ErrorCode::InvalidInput, "polynomial has non-integral coefficients");
    r.add_term(e, numerator_of(c));
  }
  return r;
}

inline Integer content(const IntPolynomial& p) {
  Integer g = 0;
  for (const auto& [e, c] : p.terms()) g = gcd(g, c);
  return g;
}

// Exact quotient p / form, or std::nullopt when the form does not divide p.
inline std::optional<RatPolynomial> divide_by_linear(const RatPolynomial& p, const LatticeVector& form) {
  const std::size_t n = form.rank();
  std::size_t lead = n;
  for (std::size_t i = 0; i < n; ++i)
    if (form[i] != 0) {
      lead = i;
      break;
    }
  require(lead < n, ErrorCode::ZeroVector, "division by the zero form");
  RatPolynomial rem = p, quot(n);
  RatPolynomial ell = RatPolynomial::linear(form.entries());
  for (;;) {
    // Term of rem with the largest power of the lead variable.
    const Exponent* best = nullptr;
    for (const auto& [e, c] : rem.terms())
      if (!best || e[lead] > (*best)[lead]) best = &e;
    if (!best || (*best)[lead] == 0) break;
    Exponent e = *best;
    Rational c = rem.terms().at(e) / Rational(form[lead]);
    --e[lead];
    RatPolynomial t(n);
    t.add_term(e, c);
    quot += t;
    rem -= t * ell;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

// A rational function  numerator / (content * prod forms^mult)  with
// primitive forms whose first nonzero coefficient is positive.
class LinearFraction {
 public:
  using Denominator = std::map<LatticeVector, unsigned, std::greater<LatticeVector>>;

  explicit LinearFraction(std::size_t num_vars = 0) : n_(num_vars), numerator_(num_vars) {}

  static LinearFraction polynomial(const IntPolynomial& p) {
    LinearFraction f(p.num_vars());
    f.numerator_ = p;
    f.canonicalize();
    return f;
  }

  // scale / prod forms, with arbitrary nonzero rational forms.
  static LinearFraction inverse_product(std::size_t n, Rational scale, const std::vector<std::vector<Rational>>& forms) {
    LinearFraction f(n);
    for (const auto& form : forms) {
      // form = (num/den) * primitive integer vector
      Integer den = 1;
      for (const auto& c : form) den = lcm(den, denominator_of(c));
      LatticeVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = numerator_of(form[i] * Rational(den));
      require(!v.is_zero(), ErrorCode::ZeroVector, "zero linear form in denominator");
      Integer g = v.content();
      LatticeVector prim = primitive(v);
      Rational factor = Rational(g) / Rational(den);
      if (!leading_positive(prim)) {
        prim = -prim;
        factor = -factor;
      }
      scale /= factor;
      ++f.denominator_[prim];
    }
    f.numerator_ = IntPolynomial::constant(n, numerator_of(scale));
    f.content_ = denominator_of(scale);
    f.canonicalize();
    return f;
  }

  std::size_t num_vars() const { return n_; }
  const IntPolynomial& numerator() const { return numerator_; }
  const Denominator& denominator() const { return denominator_; }
  const Integer& content() const { return content_; }
  bool is_zero() const { return numerator_.is_zero(); }
  bool is_polynomial() const { return denominator_.empty() && content_ == 1; }

  // Total degree (numerator degree minus denominator degree); homogeneous inputs only.
  int degree() const {
    int d = numerator_.degree();
    for (const auto& [form, m] : denominator_) d -= static_cast<int>(m);
    return d;
  }

  friend LinearFraction operator+(const LinearFraction& a, const LinearFraction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::size_t n = std::max(a.n_, b.n_);
    LinearFraction r(n);
    r.denominator_ = a.denominator_;
    for (const auto& [form, m] : b.denominator_) r.denominator_[form] = std::max(r.denominator_[form], m);
    r.content_ = lcm(a.content_, b.content_);
    r.numerator_ = a.lifted_numerator(r) + b.lifted_numerator(r);
    r.canonicalize();
    return r;
  }
  LinearFraction& operator+=(const LinearFraction& o) { return *this = *this + o; }
  LinearFraction operator-() const {
    LinearFraction r = *this;
    r.numerator_ = -r.numerator_;
    return r;
  }
  friend LinearFraction operator-(const LinearFraction& a, const LinearFraction& b) { return a + (-b); }
  friend LinearFraction operator*(const LinearFraction& a, const LinearFraction& b) {
    LinearFraction r(std::max(a.n_, b.n_));
    r.numerator_ = a.numerator_ * b.numerator_;
    r.denominator_ = a.denominator_;
    for (const auto& [form, m] : b.denominator_) r.denominator_[form] += m;
    r.content_ = a.content_ * b.content_;
    r.canonicalize();
    return r;
  }

  friend bool operator==(const LinearFraction& a, const LinearFraction& b) {
    return a.numerator_ == b.numerator_ && a.denominator_ == b.denominator_ && a.content_ == b.content_;
  }

  std::string str(const std::vector<std::string>& names) const {
    std::string num = numerator_.str(names);
    if (is_polynomial()) return num;
    if (numerator_.terms().size() > 1) num = "(" + num + ")";
    std::vector<std::string> parts;
    if (content_ != 1) parts.push_back(content_.str());
    for (const auto& [form, m] : denominator_) {
      std::string f = IntPolynomial::linear(form.entries()).str(names);
      if (IntPolynomial::linear(form.entries()).terms().size() > 1 || m > 1) f = "(" + f + ")";
      if (m > 1) f += "^" + std::to_string(m);
      parts.push_back(f);
    }
    std::string den;
    for (std::size_t i = 0; i < parts.size(); ++i) den += (i ? "*" : "") + parts[i];
    if (parts.size() > 1) den = "(" + den + ")";
    return num + " / " + den;
  }
  std::string str() const { return str(default_variable_names(n_)); }

 private:
  static bool leading_positive(const LatticeVector& v) {
    for (const auto& c : v)
      if (c != 0) return c > 0;
    return false;
  }

  // Numerator rewritten over the (larger) denominator of `target`.
  IntPolynomial lifted_numerator(const LinearFraction& target) const {
    IntPolynomial p = numerator_;
    p = Integer(target.content_ / content_) * p;
    for (const auto& [form, m] : target.denominator_) {
      auto it = denominator_.find(form);
      unsigned have = it == denominator_.end() ? 0 : it->second;
      for (unsigned k = have; k < m; ++k) p *= IntPolynomial::linear(form.entries());
    }
    return p;
  }

  void canonicalize() {
    if (numerator_.is_zero()) {
      denominator_.clear();
      content_ = 1;
      return;
    }
    for (auto it = denominator_.begin(); it != denominator_.end();) {
      while (it->second > 0) {
        auto q = divide_by_linear(to_rational(numerator_), it->first);
        if (!q) break;
        numerator_ = to_integer(*q);
        --it->second;
      }
      it = it->second == 0 ? denominator_.erase(it) : std::next(it);
    }
    Integer g = gcd(torbun::content(numerator_), content_);
    if (g > 1) {
      IntPolynomial reduced(n_);
      for (const auto& [e, c] : numerator_.terms()) reduced.add_term(e, c / g);
      numerator_ = reduced;
      content_ /= g;
    }
  }

  std::size_t n_;
  IntPolynomial numerator_;
  Denominator denominator_;
  Integer content_ = 1;
};

}  // namespace torbun
