#pragma once

// Minkowski weights with values in the base Chow ring: balancing, the module
// action, the fan displacement product, and diagonal / subbundle classes.

#include "torbun/bundle.hpp"
#include "torbun/displacement.hpp"

#include <map>
#include <vector>

namespace torbun {

class MinkowskiWeight {
 public:
  using Values = std::map<std::size_t, AlgebraElement>;

  MinkowskiWeight(BundlePtr bundle, unsigned codim, Values values = {})
      : bundle_(std::move(bundle)), codim_(codim) {
    for (auto& [cone, value] : values) set(cone, std::move(value));
  }

  const BundlePtr& bundle() const { return bundle_; }
  const Fan& fan() const { return *bundle_->fan; }
  unsigned codim() const { return codim_; }
  // Nonzero values only.
  const Values& values() const { return values_; }

  AlgebraElement value(std::size_t cone) const {
    auto it = values_.find(cone);
    return it == values_.end() ? AlgebraElement::zero(bundle_->algebra) : it->second;
  }

  // Cohomological degree the value on `cone` must have, if it may be nonzero.
  std::optional<unsigned> value_degree(std::size_t cone) const {
    long d = static_cast<long>(codim_) - static_cast<long>(fan().cone(cone).codim());
    if (d < 0 || d > static_cast<long>(bundle_->algebra->top_degree())) return std::nullopt;
    return static_cast<unsigned>(d);
  }

  void set(std::size_t cone, AlgebraElement value) {
    require(cone < fan().size(), ErrorCode::ConeNotInFan, "cone index out of range");
    require(value.algebra() == bundle_->algebra, ErrorCode::AlgebraMismatch, "weight value from another algebra");
    if (value.is_zero()) {
      values_.erase(cone);
      return;
    }
    auto d = value_degree(cone);
    require(d.has_value() && value.degrees() == std::vector<unsigned>{*d}, ErrorCode::DegreeMismatch,
            "value " + value.str() + " on cone " + fan().label(cone) + " must have degree " +
                (d ? std::to_string(*d) : std::string("outside the allowed band")) + " for a codim " +
                std::to_string(codim_) + " weight");
    values_[cone] = std::move(value);
  }

  friend bool operator==(const MinkowskiWeight& a, const MinkowskiWeight& b) {
    return a.bundle_->fan == b.bundle_->fan && a.bundle_->algebra == b.bundle_->algebra && a.codim_ == b.codim_ &&
           a.values_ == b.values_;
  }

  // "label: value" for every cone in fan order.
  std::vector<std::pair<std::string, std::string>> table() const {
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t i = 0; i < fan().size(); ++i) rows.emplace_back(fan().label(i), value(i).str());
    return rows;
  }

 private:
  BundlePtr bundle_;
  unsigned codim_;
  Values values_;
};

// Lattice point of sigma generating N_sigma / N_tau, on sigma's side.
inline LatticeVector normal_vector(const Fan& fan, std::size_t tau, std::size_t sigma) {
  const auto& tr = fan.ray_indices(tau);
  for (auto r : fan.ray_indices(sigma))
    if (!std::binary_search(tr.begin(), tr.end(), r))
      return normal_generator(fan.cone(tau).span(), fan.cone(sigma).span(), fan.rays()[r]);
  fail(ErrorCode::NotAFace, "cone " + fan.label(sigma) + " adds no ray to " + fan.label(tau));
}

struct BalancingSides {
  AlgebraElement lhs, rhs;
};

inline BalancingSides balancing_sides(const MinkowskiWeight& w, std::size_t tau, const LatticeVector& m) {
  const Fan& fan = w.fan();
  AlgebraElement lhs = AlgebraElement::zero(w.bundle()->algebra);
  for (auto s : fan.cofaces_of_dim(tau, fan.cone(tau).dim() + 1)) {
    Integer pairing = dot(m, normal_vector(fan, tau, s));
    if (pairing != 0) lhs += pairing * w.value(s);
  }
  return {lhs, w.bundle()->mixing.delta(m) * w.value(tau)};
}

struct BalancingViolation {
  std::size_t tau;
  LatticeVector m;
  AlgebraElement lhs, rhs;
};

struct BalancingReport {
  std::vector<BalancingViolation> violations;
  std::size_t checks = 0;
  bool passed() const { return violations.empty(); }
};

inline BalancingReport check_balancing(const MinkowskiWeight& w) {
  require(is_complete(w.fan()), ErrorCode::FanNotComplete, "balancing is only defined on complete fans");
  BalancingReport report;
  const Fan& fan = w.fan();
  for (std::size_t tau = 0; tau < fan.size(); ++tau)
    for (const auto& m : fan.cone(tau).perp()) {
      ++report.checks;
      auto sides = balancing_sides(w, tau, m);
      if (!(sides.lhs == sides.rhs)) report.violations.push_back({tau, m, sides.lhs, sides.rhs});
    }
  return report;
}

inline void assert_balanced(const MinkowskiWeight& w, const std::string& what) {
  auto report = check_balancing(w);
  if (report.passed()) return;
  const auto& v = report.violations.front();
  fail(ErrorCode::BalancingViolation, what + " is not balanced at cone " + w.fan().label(v.tau) + ", m = " +
                                          v.m.str() + ": " + v.lhs.str() + " != " + v.rhs.str());
}

inline MinkowskiWeight unit_weight(const BundlePtr& bundle) {
  require(is_complete(*bundle->fan), ErrorCode::FanNotComplete, "unit weight needs a complete fan");
  MinkowskiWeight w(bundle, 0);
  for (auto s : bundle->fan->maximal_cones()) w.set(s, AlgebraElement::one(bundle->algebra));
  return w;
}

// (c . W)(sigma) = c * W(sigma) for homogeneous c.
inline MinkowskiWeight module_action(const AlgebraElement& c, const MinkowskiWeight& w) {
  require(c.is_homogeneous(), ErrorCode::DegreeMismatch, "module action needs a homogeneous class, got " + c.str());
  unsigned l = c.is_zero() ? 0 : c.degrees().front();
  MinkowskiWeight out(w.bundle(), w.codim() + l);
  for (const auto& [s, value] : w.values()) out.set(s, c * value);
  return out;
}

inline MinkowskiWeight mw_product(const MinkowskiWeight& w1, const MinkowskiWeight& w2, const FanDisplacement& disp) {
  require(w1.bundle()->fan == w2.bundle()->fan && w1.bundle()->fan == disp.fan_ptr(), ErrorCode::InvalidInput,
          "weights live on different fans");
  require(w1.bundle()->algebra == w2.bundle()->algebra, ErrorCode::AlgebraMismatch, "weights use different algebras");
  require(is_complete(w1.fan()), ErrorCode::FanNotComplete, "product needs a complete fan");
  if (auto witness = disp.genericity_witness())
    fail(ErrorCode::NonGenericVector, "v = " + disp.vector().str() + " is not generic: cones " +
                                          disp.fan().label(witness->first) + " and " +
                                          disp.fan().label(witness->second) + " meet in a single point");
  MinkowskiWeight out(w1.bundle(), w1.codim() + w2.codim());
  const Fan& fan = w1.fan();
  for (std::size_t tau = 0; tau < fan.size(); ++tau) {
    if (!out.value_degree(tau)) continue;
    AlgebraElement sum = AlgebraElement::zero(w1.bundle()->algebra);
    for (const auto& p : disp.pairs(tau)) {
      auto a = w1.value(p.first);
      if (a.is_zero()) continue;
      auto b = w2.value(p.second);
      if (b.is_zero()) continue;
      sum += p.coefficient * (a * b);
    }
    out.set(tau, sum);
  }
  assert_balanced(out, "product weight");
  return out;
}

inline MinkowskiWeight mw_product(const MinkowskiWeight& w1, const MinkowskiWeight& w2, const LatticeVector& v) {
  return mw_product(w1, w2, FanDisplacement(w1.bundle()->fan, v));
}

// Terms (sigma1, sigma2, [N : N_sigma1 + N_sigma2]) of the diagonal class at tau.
inline std::vector<ConePair> diagonal_class(const FanDisplacement& disp, std::size_t tau) {
  if (auto witness = disp.genericity_witness())
    fail(ErrorCode::NonGenericVector, "v = " + disp.vector().str() + " is not generic: cones " +
                                          disp.fan().label(witness->first) + " and " +
                                          disp.fan().label(witness->second) + " meet in a single point");
  require(tau < disp.fan().size(), ErrorCode::ConeNotInFan, "cone index out of range");
  return disp.pairs(tau);
}

// Sum of c_sigma [Y'(sigma)] with integer coefficients.
struct StratumClassSum {
  FanPtr fan;
  std::map<std::size_t, Integer> terms;
};

inline StratumClassSum subbundle_class(const FanPtr& fan, const Sublattice& sub, const LatticeVector& v) {
  SigmaVResult sv = sigma_v_set(*fan, sub, v);
  if (!sv.generic)
    fail(ErrorCode::NonGenericVector, "v = " + v.str() + " is not generic for the sublattice: cone " +
                                          fan->label(*sv.offending) + " has dimension " +
                                          std::to_string(fan->cone(*sv.offending).dim()) + " instead of " +
                                          std::to_string(fan->ambient_rank() - sub.rank()));
  StratumClassSum out{fan, {}};
  for (auto s : sv.cones) {
    LatticeIndex idx = lattice_index(fan->cone(s).span() + sub);
    require(idx.is_finite(), ErrorCode::NonGenericVector, "cone " + fan->label(s) + " is not transverse");
    out.terms[s] = idx.value();
  }
  return out;
}

}  // namespace torbun
