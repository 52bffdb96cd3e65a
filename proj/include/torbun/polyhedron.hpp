#pragma once

// Rational polyhedra given by linear constraints, decided exactly with
// Fourier-Motzkin elimination.

#include "torbun/lattice.hpp"

#include <set>
#include <vector>

namespace torbun {

enum class Relation { GreaterEq, Greater, Equal };

struct Constraint {
  std::vector<Rational> a;
  Rational b;
  Relation rel = Relation::GreaterEq;  // a.x rel b
};

namespace detail {

struct FMRow {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;

  // Scale so the first nonzero coefficient has absolute value 1.
  void normalize() {
    for (const auto& c : a) {
      if (c == 0) continue;
      Rational s = c < 0 ? Rational(-c) : c;
      for (auto& x : a) x /= s;
      b /= s;
      return;
    }
  }
  bool is_constant() const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }
  bool constant_holds() const { return strict ? (0 > b) : (0 >= b); }
  auto key() const { return std::tie(a, b, strict); }
  friend bool operator<(const FMRow& x, const FMRow& y) { return x.key() < y.key(); }
};

// Feasibility of a system of (possibly strict) inequalities and equalities.
inline bool feasible(std::size_t n, const std::vector<Constraint>& constraints) {
  std::vector<FMRow> rows;
  std::vector<std::pair<std::vector<Rational>, Rational>> equalities;
  for (const auto& c : constraints) {
    if (c.rel == Relation::Equal)
      equalities.emplace_back(c.a, c.b);
    else
      rows.push_back({c.a, c.b, c.rel == Relation::Greater});
  }

  // Substitute equalities away one variable at a time.
  for (std::size_t e = 0; e < equalities.size(); ++e) {
    auto [a, b] = equalities[e];
    std::size_t j = n;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0) {
        j = i;
        break;
      }
    if (j == n) {
      if (b != 0) return false;
      continue;
    }
    // x_j = (b - sum_{i != j} a_i x_i) / a_j
    auto eliminate = [&](std::vector<Rational>& coeffs, Rational& rhs) {
      if (coeffs[j] == 0) return;
      Rational k = coeffs[j] / a[j];
      for (std::size_t i = 0; i < n; ++i) coeffs[i] -= k * a[i];
      rhs -= k * b;
    };
    for (std::size_t f = e + 1; f < equalities.size(); ++f) eliminate(equalities[f].first, equalities[f].second);
    for (auto& r : rows) eliminate(r.a, r.b);
  }

  for (std::size_t j = 0; j < n; ++j) {
    std::vector<FMRow> pos, neg;
    std::set<FMRow> next;
    for (auto& r : rows) {
      if (r.a[j] > 0)
        pos.push_back(r);
      else if (r.a[j] < 0)
        neg.push_back(r);
      else
        next.insert(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational lp = -q.a[j], lq = p.a[j];
        FMRow c;
        c.a.resize(n);
        for (std::size_t i = 0; i < n; ++i) c.a[i] = lp * p.a[i] + lq * q.a[i];
        c.a[j] = 0;
        c.b = lp * p.b + lq * q.b;
        c.strict = p.strict || q.strict;
        c.normalize();
        next.insert(std::move(c));
      }
    rows.assign(next.begin(), next.end());
    for (const auto& r : rows)
      if (r.is_constant() && !r.constant_holds()) return false;
  }
  for (const auto& r : rows)
    if (!r.constant_holds()) return false;
  return true;
}

}  // namespace detail

class Polyhedron {
 public:
  Polyhedron(std::size_t ambient_rank, std::vector<Constraint> constraints)
      : n_(ambient_rank), constraints_(std::move(constraints)) {
    for (const auto& c : constraints_)
      require(c.a.size() == n_, ErrorCode::InvalidInput, "constraint length mismatch");
    compute();
  }

  std::size_t ambient_rank() const { return n_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool is_empty() const { return dim_ < 0; }
  // -1 when empty.
  int dim() const { return dim_; }
  bool is_point() const { return dim_ == 0; }

 private:
  void compute() {
    if (!detail::feasible(n_, constraints_)) {
      dim_ = -1;
      return;
    }
    // The affine hull is cut out by the explicit equalities together with
    // every non-strict inequality that cannot hold strictly.
    RatMatrix hull(0, n_);
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
      const auto& c = constraints_[i];
      if (c.rel == Relation::Equal) {
        rows.push_back(c.a);
      } else if (c.rel == Relation::GreaterEq) {
        auto probe = constraints_;
        probe[i].rel = Relation::Greater;
        if (!detail::feasible(n_, probe)) rows.push_back(c.a);
      }
    }
    dim_ = static_cast<int>(n_) - static_cast<int>(rational_rank(rows));
  }

  std::size_t rational_rank(std::vector<std::vector<Rational>> rows) const {
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_ && r < rows.size(); ++c) {
      std::size_t p = r;
      while (p < rows.size() && rows[p][c] == 0) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[r], rows[p]);
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Rational k = rows[i][c] / rows[r][c];
        for (std::size_t j = c; j < n_; ++j) rows[i][j] -= k * rows[r][j];
      }
      ++r;
    }
    return r;
  }

  std::size_t n_;
  std::vector<Constraint> constraints_;
  int dim_ = -1;
};

}  // namespace torbun
