#pragma once

// Strongly convex rational polyhedral cones given by primitive ray generators.

#include "torbun/lattice.hpp"
#include "torbun/polyhedron.hpp"

#include <set>
#include <vector>

namespace torbun {

inline constexpr std::size_t kMaxAmbientRank = 4;

class Cone {
 public:
  Cone() = default;

  std::size_t ambient_rank() const { return n_; }
  std::size_t dim() const { return span_.rank(); }
  std::size_t codim() const { return n_ - dim(); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& facet_normals() const { return facets_; }
  // Saturated lattice N_sigma spanned by the cone.
  const Sublattice& span() const { return span_; }
  // Basis of the lattice of characters vanishing on the cone.
  const std::vector<LatticeVector>& perp() const { return perp_; }
  bool is_simplicial() const { return rays_.size() == dim(); }

  bool contains(const LatticeVector& x) const {
    for (const auto& m : perp_)
      if (dot(m, x) != 0) return false;
    for (const auto& u : facets_)
      if (dot(u, x) < 0) return false;
    return true;
  }

  bool has_ray(const LatticeVector& r) const { return std::find(rays_.begin(), rays_.end(), r) != rays_.end(); }

  // Sum of the rays: a point of the relative interior.
  LatticeVector interior_point() const {
    LatticeVector p(n_);
    for (const auto& r : rays_) p += r;
    return p;
  }

  // Constraints describing the cone shifted by `shift`.
  std::vector<Constraint> constraints(const LatticeVector& shift) const {
    std::vector<Constraint> out;
    auto to_rational = [&](const LatticeVector& u) {
      std::vector<Rational> a(n_);
      for (std::size_t i = 0; i < n_; ++i) a[i] = Rational(u[i]);
      return a;
    };
    for (const auto& m : perp_) out.push_back({to_rational(m), Rational(dot(m, shift)), Relation::Equal});
    for (const auto& u : facets_) out.push_back({to_rational(u), Rational(dot(u, shift)), Relation::GreaterEq});
    return out;
  }
  std::vector<Constraint> constraints() const { return constraints(LatticeVector(n_)); }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.n_ == b.n_ && std::set<LatticeVector>(a.rays_.begin(), a.rays_.end()) ==
                               std::set<LatticeVector>(b.rays_.begin(), b.rays_.end());
  }

  std::string str() const {
    std::string s = "cone<";
    for (std::size_t i = 0; i < rays_.size(); ++i) s += (i ? "," : "") + rays_[i].str();
    return s + ">";
  }

 private:
  friend Cone cone_from_rays(std::size_t, std::vector<LatticeVector>);
  std::size_t n_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> facets_;
  Sublattice span_{0};
  std::vector<LatticeVector> perp_;
};

namespace detail {

// Coordinates of x in the basis `basis` of a saturated lattice containing x.
inline LatticeVector coordinates(const std::vector<LatticeVector>& basis, const LatticeVector& x) {
  const std::size_t n = x.rank();
  RatMatrix b = to_rational(IntMatrix::from_columns(basis, n));
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = Rational(x[i]);
  auto sol = solve_rational(b, rhs);
  require(sol.has_value(), ErrorCode::InvalidInput, "vector outside the lattice span");
  LatticeVector c(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require(denominator_of((*sol)[i]) == 1, ErrorCode::InvalidInput, "non-integral coordinates");
    c[i] = numerator_of((*sol)[i]);
  }
  return c;
}

// Some m in Z^n with B^T m = target, for a saturated basis B.
inline LatticeVector lift_character(const std::vector<LatticeVector>& basis, const LatticeVector& target, std::size_t n) {
  IntMatrix bt = IntMatrix::from_rows(basis, n);
  SmithForm f = smith_normal_form(bt);
  LatticeVector ut = f.U.apply(target);
  LatticeVector y(n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require(f.S(i, i) != 0 && ut[i] % f.S(i, i) == 0, ErrorCode::NotSaturated, "character does not lift");
    y[i] = ut[i] / f.S(i, i);
  }
  return f.V.apply(y);
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Builds a cone from generators. Rays are made primitive, deduplicated and
// pruned to the extreme ones (order of first appearance is kept).
inline Cone cone_from_rays(std::size_t ambient_rank, std::vector<LatticeVector> generators) {
  require(ambient_rank <= kMaxAmbientRank, ErrorCode::RankCapExceeded,
          "ambient rank " + std::to_string(ambient_rank) + " exceeds " + std::to_string(kMaxAmbientRank));
  Cone c;
  c.n_ = ambient_rank;
  std::vector<LatticeVector> rays;
  for (auto& g : generators) {
    require(g.rank() == ambient_rank, ErrorCode::InvalidInput, "ray rank mismatch");
    LatticeVector p = primitive(g);
    if (std::find(rays.begin(), rays.end(), p) == rays.end()) rays.push_back(std::move(p));
  }
  c.span_ = saturation(Sublattice(ambient_rank, rays));
  c.perp_ = perp_basis(c.span_);
  const std::size_t d = c.span_.rank();
  const auto& basis = c.span_.basis();

  std::vector<LatticeVector> coords;
  for (const auto& r : rays) coords.push_back(detail::coordinates(basis, r));

  // Facet candidates in intrinsic coordinates.
  std::vector<LatticeVector> intrinsic;
  if (d == 1) {
    bool pos = false, neg = false;
    for (const auto& x : coords) (x[0] > 0 ? pos : neg) = true;
    require(!(pos && neg), ErrorCode::NotStronglyConvex, "generators contain a line");
    intrinsic.push_back(LatticeVector{pos ? 1 : -1});
  } else if (d >= 2) {
    std::set<LatticeVector> seen;
    detail::for_each_subset(coords.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
      std::vector<LatticeVector> sub;
      for (auto i : idx) sub.push_back(coords[i]);
      if (rank_of(sub, d) != d - 1) return;
      auto ker = integer_kernel(IntMatrix::from_rows(sub, d));
      LatticeVector u = primitive(ker.front());
      bool pos = false, neg = false;
      for (const auto& x : coords) {
        Integer s = dot(u, x);
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      if (pos && neg) return;
      if (neg) u = -u;
      if (seen.insert(u).second) intrinsic.push_back(u);
    });
    require(rank_of(intrinsic, d) == d, ErrorCode::NotStronglyConvex, "generators contain a line");
  }

  // Keep only extreme rays.
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::vector<LatticeVector> containing;
    for (const auto& u : intrinsic)
      if (dot(u, coords[i]) == 0) containing.push_back(u);
    if (d == 0 || rank_of(containing, d) == d - 1) c.rays_.push_back(rays[i]);
  }
  for (const auto& u : intrinsic) c.facets_.push_back(detail::lift_character(basis, u, ambient_rank));
  return c;
}

inline Cone zero_cone(std::size_t ambient_rank) { return cone_from_rays(ambient_rank, {}); }

// True iff tau is a face of sigma (tau == sigma allowed).
inline bool is_face(const Cone& tau, const Cone& sigma) {
  if (tau.ambient_rank() != sigma.ambient_rank()) return false;
  for (const auto& r : tau.rays())
    if (!sigma.contains(r)) return false;
  const LatticeVector p = tau.interior_point();
  std::vector<LatticeVector> face_rays;
  for (const auto& r : sigma.rays()) {
    bool on_all = true;
    for (const auto& u : sigma.facet_normals())
      if (dot(u, p) == 0 && dot(u, r) != 0) on_all = false;
    if (on_all) face_rays.push_back(r);
  }
  return std::set<LatticeVector>(face_rays.begin(), face_rays.end()) ==
         std::set<LatticeVector>(tau.rays().begin(), tau.rays().end());
}

// [N_sigma : span of the rays] for a simplicial cone.
inline Integer multiplicity(const Cone& sigma) {
  require(sigma.is_simplicial(), ErrorCode::NotSimplicial, sigma.str() + " is not simplicial");
  if (sigma.dim() == 0) return 1;
  SmithForm f = smith_normal_form(IntMatrix::from_rows(sigma.rays(), sigma.ambient_rank()));
  Integer product = 1;
  for (const auto& d : f.diagonal()) product *= d;
  return product;
}

inline Polyhedron cone_shift_intersect(const Cone& sigma1, const Cone& sigma2, const LatticeVector& v) {
  require(sigma1.ambient_rank() == sigma2.ambient_rank() && v.rank() == sigma1.ambient_rank(),
          ErrorCode::InvalidInput, "rank mismatch in cone_shift_intersect");
  auto cs = sigma1.constraints();
  auto shifted = sigma2.constraints(v);
  cs.insert(cs.end(), shifted.begin(), shifted.end());
  return Polyhedron(sigma1.ambient_rank(), std::move(cs));
}

// Lexicographic placing triangulation using the rays in the given order.
// Each piece is returned as a list of indices into sigma.rays().
inline std::vector<std::vector<std::size_t>> placing_triangulation(const Cone& sigma) {
  const std::size_t n = sigma.ambient_rank();
  const auto& rays = sigma.rays();
  std::vector<std::vector<std::size_t>> simplices{{}};
  std::vector<std::size_t> used;
  for (std::size_t k = 0; k < rays.size(); ++k) {
    std::vector<LatticeVector> current;
    for (auto i : used) current.push_back(rays[i]);
    std::vector<LatticeVector> extended = current;
    extended.push_back(rays[k]);
    const std::size_t d = rank_of(current, n);
    if (rank_of(extended, n) > d) {
      for (auto& s : simplices) s.push_back(k);
      used.push_back(k);
      continue;
    }
    Cone hull = cone_from_rays(n, current);
    std::vector<std::vector<std::size_t>> added;
    for (const auto& u : hull.facet_normals()) {
      if (dot(u, rays[k]) >= 0) continue;
      for (const auto& s : simplices) {
        // Boundary faces of s lying in this visible facet.
        std::vector<std::size_t> on;
        for (auto i : s)
          if (dot(u, rays[i]) == 0) on.push_back(i);
        if (on.size() != d - 1) continue;
        on.push_back(k);
        added.push_back(on);
      }
    }
    if (!added.empty()) used.push_back(k);
    simplices.insert(simplices.end(), added.begin(), added.end());
  }
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  return simplices;
}

inline std::vector<Cone> triangulate(const Cone& sigma) {
  std::vector<Cone> pieces;
  for (const auto& s : placing_triangulation(sigma)) {
    std::vector<LatticeVector> r;
    for (auto i : s) r.push_back(sigma.rays()[i]);
    pieces.push_back(cone_from_rays(sigma.ambient_rank(), r));
  }
  return pieces;
}

}  // namespace torbun
