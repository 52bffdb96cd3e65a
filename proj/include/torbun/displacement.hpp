#pragma once

// Displacement of a fan against itself by a vector v: which pairs of cones
// meet after shifting, genericity certificates, and the search for a
// generic v.

#include "torbun/fan.hpp"

#include <cstdint>
#include <random>

namespace torbun {

struct ConePair {
  std::size_t first, second;
  Integer coefficient;  // [N : N_first + N_second]
};

class FanDisplacement {
 public:
  FanDisplacement(FanPtr fan, LatticeVector v) : fan_(std::move(fan)), v_(std::move(v)) {
    require(v_.rank() == fan_->ambient_rank(), ErrorCode::InvalidInput, "displacement vector has wrong rank");
    const std::size_t m = fan_->size();
    dims_.assign(m * m, -2);
  }

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  const LatticeVector& vector() const { return v_; }

  // Dimension of sigma1 ∩ (sigma2 + v), -1 when empty.
  int meet_dim(std::size_t s1, std::size_t s2) const {
    int& d = dims_[s1 * fan_->size() + s2];
    if (d == -2) d = cone_shift_intersect(fan_->cone(s1), fan_->cone(s2), v_).dim();
    return d;
  }
  bool meets(std::size_t s1, std::size_t s2) const { return meet_dim(s1, s2) >= 0; }

  // First pair meeting in a single point with dim sigma1 + dim sigma2 != n.
  std::optional<std::pair<std::size_t, std::size_t>> genericity_witness() const {
    const std::size_t n = fan_->ambient_rank();
    for (std::size_t a = 0; a < fan_->size(); ++a)
      for (std::size_t b = 0; b < fan_->size(); ++b)
        if (fan_->cone(a).dim() + fan_->cone(b).dim() != n && meet_dim(a, b) == 0) return std::make_pair(a, b);
    return std::nullopt;
  }
  bool is_generic() const { return !genericity_witness().has_value(); }

  // Ordered pairs sigma1, sigma2 containing tau that meet after displacement
  // and whose codimensions add up to codim tau.
  std::vector<ConePair> pairs(std::size_t tau) const {
    std::vector<ConePair> out;
    const std::size_t ct = fan_->cone(tau).codim();
    for (auto a : fan_->cofaces(tau))
      for (auto b : fan_->cofaces(tau)) {
        if (fan_->cone(a).codim() + fan_->cone(b).codim() != ct) continue;
        if (!meets(a, b)) continue;
        out.push_back({a, b, coefficient(a, b)});
      }
    return out;
  }

  Integer coefficient(std::size_t a, std::size_t b) const {
    auto key = std::make_pair(a, b);
    auto it = coefficients_.find(key);
    if (it != coefficients_.end()) return it->second;
    LatticeIndex idx = lattice_index(fan_->cone(a).span() + fan_->cone(b).span());
    require(idx.is_finite(), ErrorCode::NonGenericVector,
            "cones " + fan_->label(a) + " and " + fan_->label(b) + " meet without spanning N for v = " + v_.str());
    coefficients_.emplace(key, idx.value());
    return idx.value();
  }

 private:
  FanPtr fan_;
  LatticeVector v_;
  mutable std::vector<int> dims_;
  mutable std::map<std::pair<std::size_t, std::size_t>, Integer> coefficients_;
};

inline bool is_generic_diagonal(const FanPtr& fan, const LatticeVector& v) { return FanDisplacement(fan, v).is_generic(); }

struct GenericSearch {
  LatticeVector v;
  std::size_t candidates_tried = 0;
  std::int64_t bound = 0;
};

inline constexpr std::size_t kGenericSearchRound = 25;
inline constexpr std::size_t kGenericSearchLimit = 1000;
inline constexpr std::int64_t kGenericSearchInitialBound = 7;

// Samples integer vectors with entries uniform in [-B, B], doubling B after
// each round of failures, until `accept` holds. `skip` vectors are rejected
// (used to find further independent choices).
template <class Accept>
GenericSearch find_vector(std::size_t n, std::uint64_t seed, Accept accept, const std::vector<LatticeVector>& skip = {}) {
  std::mt19937_64 rng(seed);
  std::int64_t bound = kGenericSearchInitialBound;
  std::size_t tried = 0;
  while (tried < kGenericSearchLimit) {
    for (std::size_t k = 0; k < kGenericSearchRound && tried < kGenericSearchLimit; ++k) {
      std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
      LatticeVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = dist(rng);
      ++tried;
      if (std::find(skip.begin(), skip.end(), v) != skip.end()) continue;
      if (accept(v)) return {v, tried, bound};
    }
    bound *= 2;
  }
  fail(ErrorCode::GenericSearchExhausted, "no generic vector among " + std::to_string(tried) + " candidates");
}

inline GenericSearch find_generic_vector(const FanPtr& fan, std::uint64_t seed,
                                         const std::vector<LatticeVector>& skip = {}) {
  return find_vector(
      fan->ambient_rank(), seed, [&](const LatticeVector& v) { return is_generic_diagonal(fan, v); }, skip);
}

struct SigmaVResult {
  std::vector<std::size_t> cones;  // fan indices, in fan order
  bool generic = true;
  std::optional<std::size_t> offending;
};

// Cones of the fan whose intersection with the affine space N_R + v is one point.
inline SigmaVResult sigma_v_set(const Fan& fan, const Sublattice& sub, const LatticeVector& v) {
  const std::size_t n = fan.ambient_rank();
  require(sub.ambient_rank() == n && v.rank() == n, ErrorCode::InvalidInput, "rank mismatch in sigma_v_set");
  require(is_saturated(sub), ErrorCode::NotSaturated, "sublattice is not saturated");
  std::vector<Constraint> affine;
  for (const auto& m : perp_basis(sub)) {
    std::vector<Rational> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = Rational(m[i]);
    affine.push_back({a, Rational(dot(m, v)), Relation::Equal});
  }
  SigmaVResult out;
  const std::size_t codim = n - sub.rank();
  for (std::size_t s = 0; s < fan.size(); ++s) {
    auto cs = fan.cone(s).constraints();
    cs.insert(cs.end(), affine.begin(), affine.end());
    if (!Polyhedron(n, cs).is_point()) continue;
    out.cones.push_back(s);
    if (fan.cone(s).dim() != codim && out.generic) {
      out.generic = false;
      out.offending = s;
    }
  }
  return out;
}

}  // namespace torbun
