#pragma once

// Fans: cones indexed by subsets of a global ray list, closed under faces.

#include "torbun/cone.hpp"

#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <vector>

namespace torbun {

using RayIndices = std::vector<std::size_t>;  // sorted, 0-based

class Fan {
 public:
  // `cones` lists ray index sets (0-based); their faces are added.
  Fan(std::size_t ambient_rank, std::vector<LatticeVector> rays, const std::vector<RayIndices>& cones)
      : n_(ambient_rank), rays_(std::move(rays)) {
    for (const auto& r : rays_) {
      require(r.rank() == n_, ErrorCode::InvalidInput, "ray " + r.str() + " has wrong rank");
      require(!r.is_zero(), ErrorCode::ZeroVector, "zero ray");
      require(r.content() == 1, ErrorCode::InvalidInput, "ray " + r.str() + " is not primitive");
    }
    for (std::size_t i = 0; i < rays_.size(); ++i)
      for (std::size_t j = i + 1; j < rays_.size(); ++j)
        require(rays_[i] != rays_[j], ErrorCode::InvalidInput, "duplicate ray " + rays_[i].str());

    std::set<RayIndices> all{RayIndices{}};
    std::vector<RayIndices> generators;
    for (auto c : cones) {
      std::sort(c.begin(), c.end());
      require(std::adjacent_find(c.begin(), c.end()) == c.end(), ErrorCode::InvalidInput, "repeated ray in cone");
      for (auto i : c) require(i < rays_.size(), ErrorCode::InvalidInput, "ray index out of range");
      Cone cone = make_cone(c);
      require(cone.rays().size() == c.size(), ErrorCode::InvalidInput,
              "cone " + label(c) + " has a generator that is not an extreme ray");
      generators.push_back(c);
      for (auto& f : face_index_sets(c, cone)) all.insert(std::move(f));
    }
    std::vector<bool> used(rays_.size(), false);
    for (const auto& c : all)
      for (auto i : c) used[i] = true;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      require(used[i], ErrorCode::InvalidInput, "ray " + std::to_string(i + 1) + " lies in no cone");

    std::vector<RayIndices> ordered(all.begin(), all.end());
    std::vector<Cone> built;
    for (const auto& c : ordered) built.push_back(make_cone(c));
    std::vector<std::size_t> perm(ordered.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      if (built[a].dim() != built[b].dim()) return built[a].dim() < built[b].dim();
      return ordered[a] < ordered[b];
    });
    for (auto p : perm) {
      index_.emplace(ordered[p], indices_.size());
      indices_.push_back(ordered[p]);
      cones_.push_back(built[p]);
    }
    build_relations();
    check_intersections(generators);
  }

  std::size_t ambient_rank() const { return n_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  std::size_t size() const { return cones_.size(); }
  const Cone& cone(std::size_t i) const { return cones_[i]; }
  const std::vector<Cone>& cones() const { return cones_; }
  const RayIndices& ray_indices(std::size_t i) const { return indices_[i]; }

  std::optional<std::size_t> find(const RayIndices& rays) const {
    RayIndices key = rays;
    std::sort(key.begin(), key.end());
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const RayIndices& rays) const {
    auto i = find(rays);
    require(i.has_value(), ErrorCode::ConeNotInFan, "cone " + label(rays) + " is not in the fan");
    return *i;
  }
  std::size_t zero_index() const { return 0; }

  bool is_face_of(std::size_t tau, std::size_t sigma) const { return faces_[sigma].count(tau) > 0; }
  // Cones containing tau (tau included), in fan order.
  const std::vector<std::size_t>& cofaces(std::size_t tau) const { return cofaces_[tau]; }
  std::vector<std::size_t> cofaces_of_dim(std::size_t tau, std::size_t d) const {
    std::vector<std::size_t> out;
    for (auto s : cofaces_[tau])
      if (cones_[s].dim() == d) out.push_back(s);
    return out;
  }
  std::vector<std::size_t> maximal_cones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cofaces_[i].size() == 1) out.push_back(i);
    return out;
  }
  bool is_maximal(std::size_t i) const { return cofaces_[i].size() == 1; }

  // Human label: "0" for the zero cone, otherwise 1-based ray indices "1,2".
  std::string label(std::size_t i) const { return label(indices_[i]); }
  static std::string label(const RayIndices& c) {
    if (c.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k] + 1);
    return s;
  }

  bool is_simplicial() const {
    return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.is_simplicial(); });
  }
  bool is_smooth() const {
    for (const auto& c : cones_)
      if (!c.is_simplicial() || multiplicity(c) != 1) return false;
    return true;
  }

 private:
  Cone make_cone(const RayIndices& c) const {
    std::vector<LatticeVector> r;
    for (auto i : c) r.push_back(rays_[i]);
    return cone_from_rays(n_, r);
  }

  // Index sets of all faces of the cone with ray indices c.
  std::vector<RayIndices> face_index_sets(const RayIndices& c, const Cone& cone) const {
    std::set<RayIndices> faces;
    const auto& normals = cone.facet_normals();
    const std::size_t f = normals.size();
    require(f < 24, ErrorCode::RankCapExceeded, "too many facets");
    for (std::size_t mask = 0; mask < (std::size_t(1) << f); ++mask) {
      RayIndices face;
      for (auto i : c) {
        bool on = true;
        for (std::size_t k = 0; k < f; ++k)
          if ((mask >> k & 1) && dot(normals[k], rays_[i]) != 0) on = false;
        if (on) face.push_back(i);
      }
      faces.insert(face);
    }
    return {faces.begin(), faces.end()};
  }

  void build_relations() {
    const std::size_t m = cones_.size();
    faces_.assign(m, {});
    cofaces_.assign(m, {});
    for (std::size_t s = 0; s < m; ++s)
      for (auto& f : face_index_sets(indices_[s], cones_[s])) {
        auto t = index_.at(f);
        faces_[s].insert(t);
      }
    for (std::size_t t = 0; t < m; ++t)
      for (std::size_t s = 0; s < m; ++s)
        if (faces_[s].count(t)) cofaces_[t].push_back(s);
  }

  void check_intersections(const std::vector<RayIndices>& generators) {
    for (std::size_t a = 0; a < generators.size(); ++a)
      for (std::size_t b = a + 1; b < generators.size(); ++b) {
        const auto& ca = generators[a];
        const auto& cb = generators[b];
        RayIndices common;
        std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(common));
        auto sa = index_.at(ca), sb = index_.at(cb);
        auto g = index_.find(common);
        bool ok = g != index_.end() && faces_[sa].count(g->second) && faces_[sb].count(g->second);
        if (ok) {
          // Nothing of the intersection may stick out of the common face.
          const Cone& sigma_a = cones_[sa];
          const Cone& gamma = cones_[g->second];
          auto base = sigma_a.constraints();
          auto other = cones_[sb].constraints();
          base.insert(base.end(), other.begin(), other.end());
          LatticeVector p = gamma.interior_point();
          for (const auto& u : sigma_a.facet_normals()) {
            if (dot(u, p) != 0) continue;
            auto probe = base;
            std::vector<Rational> coeffs(n_);
            for (std::size_t i = 0; i < n_; ++i) coeffs[i] = Rational(u[i]);
            probe.push_back({coeffs, Rational(0), Relation::Greater});
            if (detail::feasible(n_, probe)) ok = false;
          }
        }
        require(ok, ErrorCode::InvalidInput,
                "cones " + label(ca) + " and " + label(cb) + " do not meet in a common face");
      }
  }

  std::size_t n_;
  std::vector<LatticeVector> rays_;
  std::vector<RayIndices> indices_;
  std::vector<Cone> cones_;
  std::map<RayIndices, std::size_t> index_;
  std::vector<std::set<std::size_t>> faces_;
  std::vector<std::vector<std::size_t>> cofaces_;
};

using FanPtr = std::shared_ptr<const Fan>;

inline bool is_complete(const Fan& fan) {
  const std::size_t n = fan.ambient_rank();
  auto maximal = fan.maximal_cones();
  if (maximal.empty()) return false;
  for (auto s : maximal)
    if (fan.cone(s).dim() != n) return false;
  if (n == 0) return true;
  for (std::size_t t = 0; t < fan.size(); ++t) {
    if (fan.cone(t).dim() != n - 1) continue;
    if (fan.cofaces_of_dim(t, n).size() != 2) return false;
  }
  // Connectivity through shared facets.
  std::set<std::size_t> seen{maximal.front()};
  std::queue<std::size_t> todo;
  todo.push(maximal.front());
  while (!todo.empty()) {
    auto s = todo.front();
    todo.pop();
    for (std::size_t t = 0; t < fan.size(); ++t) {
      if (fan.cone(t).dim() != n - 1 || !fan.is_face_of(t, s)) continue;
      for (auto o : fan.cofaces_of_dim(t, n))
        if (seen.insert(o).second) todo.push(o);
    }
  }
  return seen.size() == maximal.size();
}

struct StarFan {
  Fan fan;
  QuotientMap quotient;
  std::vector<std::size_t> origin;  // star cone index -> index in the original fan
};

inline StarFan star_fan(const Fan& fan, std::size_t tau) {
  require(tau < fan.size(), ErrorCode::ConeNotInFan, "cone index out of range");
  const std::size_t n = fan.ambient_rank();
  QuotientMap q = quotient_map(fan.cone(tau).span());
  const auto& tau_rays = fan.ray_indices(tau);
  std::vector<LatticeVector> rays;
  std::map<std::size_t, std::size_t> ray_map;  // original ray -> star ray
  for (auto s : fan.cofaces_of_dim(tau, fan.cone(tau).dim() + 1)) {
    for (auto r : fan.ray_indices(s)) {
      if (std::binary_search(tau_rays.begin(), tau_rays.end(), r)) continue;
      if (ray_map.count(r)) continue;
      ray_map[r] = rays.size();
      rays.push_back(primitive(q(fan.rays()[r])));
    }
  }
  std::vector<RayIndices> cones;
  std::vector<std::size_t> sources;
  for (auto s : fan.cofaces(tau)) {
    RayIndices c;
    for (auto r : fan.ray_indices(s))
      if (!std::binary_search(tau_rays.begin(), tau_rays.end(), r)) c.push_back(ray_map.at(r));
    std::sort(c.begin(), c.end());
    cones.push_back(c);
    sources.push_back(s);
  }
  Fan star(n - fan.cone(tau).dim(), rays, cones);
  std::vector<std::size_t> origin(star.size());
  for (std::size_t k = 0; k < cones.size(); ++k) origin[star.index_of(cones[k])] = sources[k];
  return {std::move(star), std::move(q), std::move(origin)};
}

// Product fan in Z^(n1 + n2); rays of the first factor come first.
inline Fan product_fan(const Fan& a, const Fan& b) {
  const std::size_t n = a.ambient_rank() + b.ambient_rank();
  std::vector<LatticeVector> rays;
  for (const auto& r : a.rays()) {
    LatticeVector x(n);
    for (std::size_t i = 0; i < a.ambient_rank(); ++i) x[i] = r[i];
    rays.push_back(x);
  }
  for (const auto& r : b.rays()) {
    LatticeVector x(n);
    for (std::size_t i = 0; i < b.ambient_rank(); ++i) x[a.ambient_rank() + i] = r[i];
    rays.push_back(x);
  }
  std::vector<RayIndices> cones;
  for (auto s : a.maximal_cones())
    for (auto t : b.maximal_cones()) {
      RayIndices c = a.ray_indices(s);
      for (auto r : b.ray_indices(t)) c.push_back(a.rays().size() + r);
      cones.push_back(c);
    }
  return Fan(n, rays, cones);
}

}  // namespace torbun
