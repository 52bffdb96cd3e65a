#pragma once

// Generators-and-relations presentations of Chow homology, and a Chow ring
// oracle for smooth complete fibre fans that reduces products of fibrewise
// divisors to stratum classes.

#include "torbun/minkowski.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torbun {

// "[Y]" for the zero cone, "D3" for rays, "Y[1,2]" otherwise.
inline std::string stratum_label(const Fan& fan, std::size_t cone) {
  const auto& idx = fan.ray_indices(cone);
  if (idx.empty()) return "[Y]";
  if (idx.size() == 1) return "D" + std::to_string(idx[0] + 1);
  return "Y[" + fan.label(cone) + "]";
}

struct PresentationRelation {
  std::size_t tau;
  LatticeVector m;
  std::vector<std::pair<std::size_t, Integer>> left;  // (sigma, <m, n_sigma,tau>)
  AlgebraElement right;                               // delta(m), on [Y(tau)]
  std::optional<LatticeVector> equivariant_part;      // m as a character
  std::string text;
};

struct PresentationGenerator {
  std::size_t cone;
  unsigned homological_degree;  // dim X + codim
};

struct Presentation {
  bool equivariant = false;
  std::vector<PresentationGenerator> generators;
  std::vector<PresentationRelation> relations;
};

namespace detail {

inline std::string relation_text(const Fan& fan, const PresentationRelation& r) {
  std::string left;
  for (const auto& [s, k] : r.left) {
    bool neg = k < 0;
    Integer mag = neg ? Integer(-k) : k;
    left += left.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    left += (mag == 1 ? "" : mag.str() + "*") + stratum_label(fan, s);
  }
  if (left.empty()) left = "0";

  std::string coeff;
  if (!r.right.is_zero()) coeff = "p*" + r.right.factor_str();
  if (r.equivariant_part && !r.equivariant_part->is_zero()) {
    std::string x = IntPolynomial::linear(r.equivariant_part->entries()).str();
    if (coeff.empty())
      coeff = x;
    else
      coeff += (x.front() == '-' ? " - " + x.substr(1) : " + " + x);
  }
  std::string right;
  if (coeff.empty())
    right = "0";
  else if (fan.ray_indices(r.tau).empty())
    right = coeff;
  else {
    bool compound = false;
    int depth = 0;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i] == '(') ++depth;
      if (coeff[i] == ')') --depth;
      if (depth == 0 && i > 0 && (coeff[i] == '+' || coeff[i] == '-') && coeff[i - 1] == ' ') compound = true;
    }
    right = (compound ? "(" + coeff + ")" : coeff) + "*" + stratum_label(fan, r.tau);
  }
  return left + " = " + right;
}

inline Presentation build_presentation(const ToricBundle& bundle, bool equivariant) {
  const Fan& fan = *bundle.fan;
  Presentation p;
  p.equivariant = equivariant;
  for (std::size_t s = 0; s < fan.size(); ++s)
    p.generators.push_back({s, bundle.algebra->top_degree() + static_cast<unsigned>(fan.cone(s).codim())});
  for (std::size_t tau = 0; tau < fan.size(); ++tau)
    for (const auto& m : fan.cone(tau).perp()) {
      PresentationRelation r{tau, m, {}, bundle.mixing.delta(m), std::nullopt, {}};
      for (auto s : fan.cofaces_of_dim(tau, fan.cone(tau).dim() + 1)) {
        Integer k = dot(m, normal_vector(fan, tau, s));
        if (k != 0) r.left.emplace_back(s, k);
      }
      if (equivariant) r.equivariant_part = m;
      r.text = relation_text(fan, r);
      p.relations.push_back(std::move(r));
    }
  return p;
}

}  // namespace detail

inline Presentation homology_presentation(const ToricBundle& bundle) { return detail::build_presentation(bundle, false); }
inline Presentation equivariant_presentation(const ToricBundle& bundle) { return detail::build_presentation(bundle, true); }

// Polynomial in the fibrewise divisors D_i with base-class coefficients,
// standing for sum p*c * prod D^e.
class ChowExpr {
 public:
  using Terms = std::map<Exponent, AlgebraElement>;

  ChowExpr(BundlePtr bundle) : bundle_(std::move(bundle)) {}

  static ChowExpr constant(const BundlePtr& b, const AlgebraElement& c) {
    ChowExpr e(b);
    e.add_term(Exponent(b->fan->rays().size(), 0), c);
    return e;
  }
  static ChowExpr divisor(const BundlePtr& b, std::size_t ray) {
    require(ray < b->fan->rays().size(), ErrorCode::InvalidInput, "divisor index out of range");
    Exponent x(b->fan->rays().size(), 0);
    x[ray] = 1;
    ChowExpr e(b);
    e.add_term(x, AlgebraElement::one(b->algebra));
    return e;
  }
  // Product of the divisors of the rays of a cone (the class [Y(sigma)] on smooth fans).
  static ChowExpr stratum(const BundlePtr& b, std::size_t cone) {
    Exponent x(b->fan->rays().size(), 0);
    for (auto r : b->fan->ray_indices(cone)) x[r] = 1;
    ChowExpr e(b);
    e.add_term(x, AlgebraElement::one(b->algebra));
    return e;
  }

  const BundlePtr& bundle() const { return bundle_; }
  const Terms& terms() const { return terms_; }

  void add_term(const Exponent& x, const AlgebraElement& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(x);
    if (it == terms_.end()) {
      terms_.emplace(x, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  // Total cohomological degree, if homogeneous (nullopt for mixed; 0 for zero).
  std::optional<unsigned> degree() const {
    std::optional<unsigned> d;
    for (const auto& [x, c] : terms_) {
      for (auto cd : c.degrees()) {
        unsigned t = total_degree(x) + cd;
        if (d && *d != t) return std::nullopt;
        d = t;
      }
    }
    return d ? d : std::optional<unsigned>(0);
  }

  friend ChowExpr operator+(ChowExpr a, const ChowExpr& b) {
    for (const auto& [x, c] : b.terms_) a.add_term(x, c);
    return a;
  }
  friend ChowExpr operator-(ChowExpr a, const ChowExpr& b) {
    for (const auto& [x, c] : b.terms_) a.add_term(x, -c);
    return a;
  }
  friend ChowExpr operator*(const ChowExpr& a, const ChowExpr& b) {
    ChowExpr r(a.bundle_);
    for (const auto& [xa, ca] : a.terms_)
      for (const auto& [xb, cb] : b.terms_) {
        Exponent x(xa.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = xa[i] + xb[i];
        r.add_term(x, ca * cb);
      }
    return r;
  }
  ChowExpr pow(unsigned k) const {
    ChowExpr r = constant(bundle_, AlgebraElement::one(bundle_->algebra));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [x, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string mono;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += "D" + std::to_string(i + 1);
        if (x[i] > 1) mono += "^" + std::to_string(x[i]);
      }
      if (mono.empty())
        s += c.factor_str();
      else if (c == AlgebraElement::one(c.algebra()))
        s += mono;
      else
        s += c.factor_str() + "*" + mono;
    }
    return s;
  }

 private:
  BundlePtr bundle_;
  Terms terms_;
};

inline ChowExpr parse_chow_expr(const BundlePtr& bundle, std::string_view text) {
  ExpressionContext<ChowExpr> ctx{
      [&](const Integer& k) { return ChowExpr::constant(bundle, AlgebraElement::scalar(bundle->algebra, k)); },
      [&](const std::string& name) {
        if (name.size() > 1 && name[0] == 'D' &&
            std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          std::size_t i = std::stoul(name.substr(1));
          require(i >= 1 && i <= bundle->fan->rays().size(), ErrorCode::ParseError, "no divisor " + name);
          return ChowExpr::divisor(bundle, i - 1);
        }
        return ChowExpr::constant(bundle, AlgebraElement::named(bundle->algebra, name));
      },
      [](const ChowExpr& x, unsigned e) { return x.pow(e); }};
  return parse_expression(text, ctx);
}

// Combination of stratum classes: cone -> coefficient c in p*c [Y(cone)].
using RingElement = std::map<std::size_t, AlgebraElement>;

enum class ReduceStrategy { FirstMaximalCone, LastMaximalCone };

class ChowReducer {
 public:
  explicit ChowReducer(BundlePtr bundle, ReduceStrategy strategy = ReduceStrategy::FirstMaximalCone)
      : bundle_(std::move(bundle)), strategy_(strategy) {
    const Fan& fan = *bundle_->fan;
    require(is_complete(fan) && fan.is_smooth(), ErrorCode::OracleRequiresSmoothComplete,
            "the Chow ring oracle needs a smooth complete fan");
  }

  RingElement reduce(const ChowExpr& e) {
    RingElement out;
    for (const auto& [x, c] : e.terms())
      for (const auto& [s, k] : monomial(x)) accumulate(out, s, c * k);
    return out;
  }

  // Normal form of prod D^x.
  const RingElement& monomial(const Exponent& x) {
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    RingElement result = compute(x);
    return memo_.emplace(x, std::move(result)).first->second;
  }

 private:
  static void accumulate(RingElement& r, std::size_t s, const AlgebraElement& c) {
    if (c.is_zero()) return;
    auto it = r.find(s);
    if (it == r.end()) {
      r.emplace(s, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) r.erase(it);
  }

  RingElement compute(const Exponent& x) {
    const Fan& fan = *bundle_->fan;
    const auto& algebra = bundle_->algebra;
    RayIndices support;
    std::optional<std::size_t> repeated;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i]) continue;
      support.push_back(i);
      if (x[i] > 1 && !repeated) repeated = i;
    }
    auto cone = fan.find(support);
    if (!cone) return {};
    if (!repeated) return {{*cone, AlgebraElement::one(algebra)}};

    std::optional<std::size_t> sigma;
    for (auto s : fan.cofaces(*cone))
      if (fan.is_maximal(s) && (!sigma || strategy_ == ReduceStrategy::LastMaximalCone)) {
        sigma = s;
        if (strategy_ == ReduceStrategy::FirstMaximalCone) break;
      }
    const auto& sigma_rays = fan.ray_indices(*sigma);
    const std::size_t n = fan.ambient_rank();
    // Character dual to the repeated ray within the basis of sigma's rays.
    auto inv = *inverse(to_rational(IntMatrix::from_columns(fan.cone(*sigma).rays(), n)));
    auto pos = std::find(sigma_rays.begin(), sigma_rays.end(), *repeated) - sigma_rays.begin();
    LatticeVector m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = numerator_of(inv(pos, j));
    // Rays of Cone and the fan index list are in the same order.
    Exponent rest = x;
    --rest[*repeated];
    RingElement out;
    AlgebraElement dm = bundle_->mixing.delta(m);
    if (!dm.is_zero())
      for (const auto& [s, c] : monomial(rest)) accumulate(out, s, dm * c);
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      if (std::binary_search(sigma_rays.begin(), sigma_rays.end(), r)) continue;
      Integer k = dot(m, fan.rays()[r]);
      if (k == 0) continue;
      Exponent y = rest;
      ++y[r];
      RingElement sub = monomial(y);
      for (const auto& [s, c] : sub) accumulate(out, s, Integer(-k) * c);
    }
    return out;
  }

  BundlePtr bundle_;
  ReduceStrategy strategy_;
  std::map<Exponent, RingElement> memo_;
};

inline RingElement reduce(const ChowExpr& e, ReduceStrategy strategy = ReduceStrategy::FirstMaximalCone) {
  return ChowReducer(e.bundle(), strategy).reduce(e);
}

// W(sigma) = p_*(gamma . [Y(sigma)]).
inline MinkowskiWeight poincare_dual_mw(const ChowExpr& gamma, ReduceStrategy strategy = ReduceStrategy::FirstMaximalCone) {
  const BundlePtr& bundle = gamma.bundle();
  auto k = gamma.degree();
  require(k.has_value(), ErrorCode::DegreeMismatch, "class " + gamma.str() + " is not homogeneous");
  ChowReducer reducer(bundle, strategy);
  const Fan& fan = *bundle->fan;
  MinkowskiWeight w(bundle, *k);
  for (std::size_t s = 0; s < fan.size(); ++s) {
    AlgebraElement value = AlgebraElement::zero(bundle->algebra);
    for (const auto& [t, c] : reducer.reduce(gamma * ChowExpr::stratum(bundle, s)))
      if (fan.is_maximal(t)) value += c;
    w.set(s, value);
  }
  assert_balanced(w, "Poincare dual weight");
  return w;
}

}  // namespace torbun
