#pragma once

// Piecewise polynomials on fans, equivariant multiplicities, residue sums
// and the non-equivariant limit to Minkowski weights.

#include "torbun/minkowski.hpp"
#include "torbun/polynomial.hpp"

#include <map>
#include <vector>

namespace torbun {

class PiecewisePolynomial {
 public:
  using Pieces = std::map<std::size_t, IntPolynomial>;

  // Pieces are indexed by maximal cones; missing pieces are zero.
  PiecewisePolynomial(FanPtr fan, unsigned degree, Pieces pieces = {}) : fan_(std::move(fan)), degree_(degree) {
    for (auto& [s, p] : pieces) set(s, std::move(p));
  }

  const FanPtr& fan_ptr() const { return fan_; }
  const Fan& fan() const { return *fan_; }
  unsigned degree() const { return degree_; }
  const Pieces& pieces() const { return pieces_; }

  IntPolynomial piece(std::size_t sigma) const {
    auto it = pieces_.find(sigma);
    return it == pieces_.end() ? IntPolynomial(fan_->ambient_rank()) : it->second;
  }

  void set(std::size_t sigma, IntPolynomial p) {
    require(sigma < fan_->size() && fan_->is_maximal(sigma), ErrorCode::InvalidInput,
            "piecewise polynomial pieces live on maximal cones");
    require(p.num_vars() == fan_->ambient_rank() || p.is_zero(), ErrorCode::InvalidInput,
            "piece has the wrong number of variables");
    if (p.is_zero()) {
      pieces_.erase(sigma);
      return;
    }
    require(p.is_homogeneous() && p.degree() == static_cast<int>(degree_), ErrorCode::DegreeMismatch,
            "piece " + p.str() + " on cone " + fan_->label(sigma) + " is not homogeneous of degree " +
                std::to_string(degree_));
    pieces_[sigma] = std::move(p);
  }

  friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return a.fan_ == b.fan_ && a.degree_ == b.degree_ && a.pieces_ == b.pieces_;
  }

 private:
  FanPtr fan_;
  unsigned degree_;
  Pieces pieces_;
};

inline PiecewisePolynomial operator*(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
  require(f.fan_ptr() == g.fan_ptr(), ErrorCode::InvalidInput, "piecewise polynomials on different fans");
  PiecewisePolynomial out(f.fan_ptr(), f.degree() + g.degree());
  for (const auto& [s, p] : f.pieces()) out.set(s, p * g.piece(s));
  return out;
}

inline PiecewisePolynomial operator+(const PiecewisePolynomial& f, const PiecewisePolynomial& g) {
  require(f.fan_ptr() == g.fan_ptr() && f.degree() == g.degree(), ErrorCode::InvalidInput,
          "sum of incompatible piecewise polynomials");
  PiecewisePolynomial out = f;
  for (const auto& [s, p] : g.pieces()) out.set(s, f.piece(s) + p);
  return out;
}

// Global polynomial restricted to every maximal cone.
inline PiecewisePolynomial global_polynomial(const FanPtr& fan, const IntPolynomial& p) {
  PiecewisePolynomial out(fan, p.is_zero() ? 0 : static_cast<unsigned>(p.degree()));
  for (auto s : fan->maximal_cones()) out.set(s, p);
  return out;
}

// Piecewise linear function equal to 1 on the given ray and 0 on all others.
inline PiecewisePolynomial courant_function(const FanPtr& fan, std::size_t ray) {
  const std::size_t n = fan->ambient_rank();
  PiecewisePolynomial out(fan, 1);
  for (auto s : fan->maximal_cones()) {
    const auto& idx = fan->ray_indices(s);
    auto pos = std::find(idx.begin(), idx.end(), ray);
    if (pos == idx.end()) continue;
    const Cone& c = fan->cone(s);
    require(c.dim() == n && c.is_simplicial() && multiplicity(c) == 1, ErrorCode::NotSimplicial,
            "courant functions need smooth maximal cones");
    auto inv = *inverse(to_rational(IntMatrix::from_columns(c.rays(), n)));
    std::size_t row = static_cast<std::size_t>(pos - idx.begin());
    std::vector<Integer> form(n);
    for (std::size_t j = 0; j < n; ++j) form[j] = numerator_of(inv(row, j));
    out.set(s, IntPolynomial::linear(form));
  }
  return out;
}

struct CompatibilityViolation {
  std::size_t sigma1, sigma2, face;
  IntPolynomial difference;  // in coordinates of the face lattice
};

struct CompatibilityReport {
  std::vector<CompatibilityViolation> violations;
  bool passed() const { return violations.empty(); }
};

inline CompatibilityReport check_pp(const PiecewisePolynomial& f) {
  const Fan& fan = f.fan();
  const std::size_t n = fan.ambient_rank();
  CompatibilityReport report;
  auto maximal = fan.maximal_cones();
  for (std::size_t i = 0; i < maximal.size(); ++i)
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      const auto& a = fan.ray_indices(maximal[i]);
      const auto& b = fan.ray_indices(maximal[j]);
      RayIndices common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      std::size_t face = fan.index_of(common);
      const auto& basis = fan.cone(face).span().basis();
      const std::size_t d = basis.size();
      std::vector<IntPolynomial> images;
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Integer> coeffs(d);
        for (std::size_t t = 0; t < d; ++t) coeffs[t] = basis[t][k];
        images.push_back(IntPolynomial::linear(coeffs));
      }
      IntPolynomial diff = (f.piece(maximal[i]) - f.piece(maximal[j])).substitute(images, d);
      if (!diff.is_zero()) report.violations.push_back({maximal[i], maximal[j], face, diff});
    }
  return report;
}

// Equivariant multiplicity at the origin of a full-dimensional cone in the
// quotient lattice, pulled back along `projection` (quotient x n).
inline LinearFraction quotient_cone_multiplicity(const Cone& cone, const IntMatrix& projection) {
  const std::size_t d = cone.ambient_rank();
  const std::size_t n = projection.cols();
  require(cone.dim() == d, ErrorCode::InvalidInput, "equivariant multiplicity needs a full-dimensional cone");
  LinearFraction total(n);
  for (const auto& simplex : placing_triangulation(cone)) {
    std::vector<LatticeVector> w;
    for (auto i : simplex) w.push_back(cone.rays()[i]);
    IntMatrix wm = IntMatrix::from_columns(w, d);
    Integer det = abs_value(determinant(wm));
    auto inv = *inverse(to_rational(wm));
    std::vector<std::vector<Rational>> forms;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Rational> form(n, Rational(0));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < d; ++k) form[j] += inv(i, k) * Rational(projection(k, j));
      forms.push_back(form);
    }
    total += LinearFraction::inverse_product(n, Rational(1) / Rational(det), forms);
  }
  return total;
}

inline LinearFraction equivariant_multiplicity(const Fan& fan, std::size_t sigma, std::size_t tau) {
  require(fan.is_maximal(sigma) && fan.cone(sigma).dim() == fan.ambient_rank(), ErrorCode::InvalidInput,
          "cone " + fan.label(sigma) + " is not a full-dimensional maximal cone");
  require(fan.is_face_of(tau, sigma), ErrorCode::NotAFace, fan.label(tau) + " is not a face of " + fan.label(sigma));
  QuotientMap q = quotient_map(fan.cone(tau).span());
  const auto& tr = fan.ray_indices(tau);
  std::vector<LatticeVector> images;
  for (auto r : fan.ray_indices(sigma))
    if (!std::binary_search(tr.begin(), tr.end(), r)) images.push_back(q(fan.rays()[r]));
  Cone image = cone_from_rays(q.target_rank(), images);
  return quotient_cone_multiplicity(image, q.projection);
}

inline IntPolynomial residue_sum(const PiecewisePolynomial& f, std::size_t tau) {
  const Fan& fan = f.fan();
  require(is_complete(fan), ErrorCode::FanNotComplete, "residue sums need a complete fan");
  const std::size_t n = fan.ambient_rank();
  LinearFraction sum(n);
  for (auto s : fan.cofaces(tau)) {
    if (!fan.is_maximal(s)) continue;
    IntPolynomial piece = f.piece(s);
    if (piece.is_zero()) continue;
    sum += LinearFraction::polynomial(piece) * equivariant_multiplicity(fan, s, tau);
  }
  if (!sum.is_polynomial())
    fail(ErrorCode::ResidueNotPolynomial, "residue sum at cone " + fan.label(tau) + " is " + sum.str());
  IntPolynomial r = sum.numerator();
  return r.is_zero() ? IntPolynomial(n) : r;
}

inline MinkowskiWeight pp_to_mw(const PiecewisePolynomial& f, const BundlePtr& bundle) {
  require(bundle->fan == f.fan_ptr(), ErrorCode::InvalidInput, "piecewise polynomial lives on another fan");
  MinkowskiWeight w(bundle, f.degree());
  for (std::size_t tau = 0; tau < f.fan().size(); ++tau) {
    AlgebraElement value = bundle->mixing.delta_extend(residue_sum(f, tau));
    if (!w.value_degree(tau)) {
      require(value.is_zero(), ErrorCode::DegreeMismatch, "nonzero limit value outside the degree band");
      continue;
    }
    w.set(tau, value);
  }
  assert_balanced(w, "limit weight");
  return w;
}

}  // namespace torbun
