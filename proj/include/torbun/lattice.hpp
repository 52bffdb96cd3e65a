#pragma once

// Exact integer linear algebra on Z^n: Smith and Hermite normal forms,
// kernels, saturation, indices, quotients and dual (perpendicular) lattices.

#include "torbun/core.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace torbun {

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : entries_(rank, Integer(0)) {}
  explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  LatticeVector(std::initializer_list<long long> entries) {
    entries_.reserve(entries.size());
    for (long long e : entries) entries_.emplace_back(e);
  }

  static LatticeVector unit(std::size_t rank, std::size_t i) {
    LatticeVector v(rank);
    v[i] = 1;
    return v;
  }

  std::size_t rank() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& e) { return e == 0; });
  }

  Integer content() const {
    Integer g = 0;
    for (const auto& e : entries_) g = gcd(g, e);
    return g;
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    for (std::size_t i = 0; i < rank(); ++i) entries_[i] += o[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    for (std::size_t i = 0; i < rank(); ++i) entries_[i] -= o[i];
    return *this;
  }
  LatticeVector& operator*=(const Integer& k) {
    for (auto& e : entries_) e *= k;
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }
  LatticeVector operator-() const {
    LatticeVector r = *this;
    for (auto& e : r.entries_) e = -e;
    return r;
  }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) {
    return a.entries_ <=> b.entries_;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) s += ",";
      s += entries_[i].str();
    }
    return s + ")";
  }

 private:
  std::vector<Integer> entries_;
};

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Rows of the matrix are the given vectors.
  static Matrix from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(rows[i][j]);
    return m;
  }

  static Matrix from_columns(std::span<const LatticeVector> columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = T(columns[j][i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  LatticeVector row(std::size_t i) const requires std::is_same_v<T, Integer> {
    std::vector<Integer> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return LatticeVector(std::move(r));
  }
  LatticeVector col(std::size_t j) const requires std::is_same_v<T, Integer> {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return LatticeVector(std::move(c));
  }

  LatticeVector apply(const LatticeVector& v) const requires std::is_same_v<T, Integer> {
    LatticeVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

struct SmithForm {
  IntMatrix S, U, V;  // U * A * V == S

  // Diagonal entries d_0 | d_1 | ... (length min(rows, cols)).
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal()) r += (d != 0);
    return r;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& s = f.S;
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    // Choose the nonzero entry of least absolute value in the trailing block.
    auto bring_min_to_pivot = [&]() -> bool {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (!best || abs_value(s(i, j)) < abs_value(s(best->first, best->second))))
            best = {i, j};
      if (!best) return false;
      if (best->first != t) {
        s.swap_rows(t, best->first);
        f.U.swap_rows(t, best->first);
      }
      if (best->second != t) {
        s.swap_cols(t, best->second);
        f.V.swap_cols(t, best->second);
      }
      return true;
    };
    if (!bring_min_to_pivot()) break;

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = floor_div(s(i, t), s(t, t));
        s.add_row(i, t, Integer(-q));
        f.U.add_row(i, t, Integer(-q));
        if (s(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = floor_div(s(t, j), s(t, t));
        s.add_col(j, t, Integer(-q));
        f.V.add_col(j, t, Integer(-q));
        if (s(t, j) != 0) dirty = true;
      }
      if (dirty) {
        bring_min_to_pivot();
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < m && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      s.add_row(t, *offending, Integer(1));
      f.U.add_row(t, *offending, Integer(1));
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      f.U.negate_row(t);
    }
  }
  return f;
}

inline std::size_t rank(const IntMatrix& a) {
  // Fraction-free elimination.
  IntMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer a_ic = m(i, c), a_rc = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * a_rc - m(r, j) * a_ic;
      Integer g = 0;
      for (std::size_t j = c; j < m.cols(); ++j) g = gcd(g, m(i, j));
      if (g > 1)
        for (std::size_t j = c; j < m.cols(); ++j) m(i, j) /= g;
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of(std::span<const LatticeVector> vectors, std::size_t ambient) {
  return rank(IntMatrix::from_rows(vectors, ambient));
}

inline Integer determinant(const IntMatrix& a) {
  // Bareiss; a must be square.
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Inverse of a nonsingular square rational matrix; std::nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix m = a, inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(c, p);
    inv.swap_rows(c, p);
    Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational k = -m(i, c);
      m.add_row(i, c, k);
      inv.add_row(i, c, k);
    }
  }
  return inv;
}

// Some solution x of A x = b over Q, or std::nullopt if inconsistent.
inline std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.rows(), n = a.cols();
  RatMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && aug(p, c) == 0) ++p;
    if (p == m) continue;
    aug.swap_rows(r, p);
    Rational piv = aug(r, c);
    for (std::size_t j = 0; j <= n; ++j) aug(r, j) /= piv;
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && aug(i, c) != 0) aug.add_row(i, r, Rational(-aug(i, c)));
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (aug(i, n) != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, n);
  return x;
}

// Row-style Hermite normal form of the lattice generated by the given rows.
// Pivots are positive, entries above each pivot lie in [0, pivot); zero rows
// are dropped. Two generating sets span the same lattice iff their HNFs agree.
inline std::vector<LatticeVector> hermite_basis(std::span<const LatticeVector> generators, std::size_t ambient) {
  IntMatrix h = IntMatrix::from_rows(generators, ambient);
  const std::size_t m = h.rows();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < ambient && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, c) == 0) continue;
      ExtendedGcd e = extended_gcd(h(r, c), h(i, c));
      Integer a = h(r, c) / e.g, b = h(i, c) / e.g;
      for (std::size_t j = 0; j < ambient; ++j) {
        Integer top = e.x * h(r, j) + e.y * h(i, j);
        Integer bottom = -b * h(r, j) + a * h(i, j);
        h(r, j) = std::move(top);
        h(i, j) = std::move(bottom);
      }
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      if (q != 0) h.add_row(i, r, Integer(-q));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<LatticeVector> basis;
  for (std::size_t i = 0; i < r; ++i) basis.push_back(h.row(i));
  return basis;
}

// Basis of {x in Z^n : A x = 0}; the result is saturated.
inline std::vector<LatticeVector> integer_kernel(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  const std::size_t r = f.rank();
  std::vector<LatticeVector> basis;
  for (std::size_t j = r; j < a.cols(); ++j) basis.push_back(f.V.col(j));
  return basis;
}

inline LatticeVector primitive(const LatticeVector& v) {
  Integer g = v.content();
  require(g != 0, ErrorCode::ZeroVector, "primitive() of the zero vector");
  std::vector<Integer> e(v.rank());
  for (std::size_t i = 0; i < v.rank(); ++i) e[i] = v[i] / g;
  return LatticeVector(std::move(e));
}

// A sublattice of Z^n, stored by its canonical Hermite basis.
class Sublattice {
 public:
  explicit Sublattice(std::size_t ambient_rank) : ambient_(ambient_rank) {}

  Sublattice(std::size_t ambient_rank, std::span<const LatticeVector> generators) : ambient_(ambient_rank) {
    for (const auto& g : generators)
      require(g.rank() == ambient_rank, ErrorCode::InvalidInput, "generator rank mismatch");
    basis_ = hermite_basis(generators, ambient_rank);
  }
  Sublattice(std::size_t ambient_rank, std::initializer_list<LatticeVector> generators)
      : Sublattice(ambient_rank, std::span<const LatticeVector>(generators.begin(), generators.size())) {}

  static Sublattice full(std::size_t n) {
    std::vector<LatticeVector> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(LatticeVector::unit(n, i));
    return Sublattice(n, g);
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<LatticeVector>& basis() const { return basis_; }

  bool contains(const LatticeVector& v) const {
    std::vector<LatticeVector> g = basis_;
    g.push_back(v);
    return hermite_basis(g, ambient_) == basis_;
  }

  friend bool operator==(const Sublattice&, const Sublattice&) = default;

 private:
  std::size_t ambient_;
  std::vector<LatticeVector> basis_;
};

inline Sublattice operator+(const Sublattice& a, const Sublattice& b) {
  std::vector<LatticeVector> g = a.basis();
  g.insert(g.end(), b.basis().begin(), b.basis().end());
  return Sublattice(a.ambient_rank(), g);
}

// {m in Z^n : <m, v> = 0 for all v in L}.
inline std::vector<LatticeVector> perp_basis(const Sublattice& lattice) {
  const std::size_t n = lattice.ambient_rank();
  IntMatrix a = IntMatrix::from_rows(lattice.basis(), n);
  std::vector<LatticeVector> kernel = integer_kernel(a);
  return hermite_basis(kernel, n);
}

inline Sublattice saturation(const Sublattice& lattice) {
  const std::size_t n = lattice.ambient_rank();
  std::vector<LatticeVector> dual = perp_basis(lattice);
  return Sublattice(n, integer_kernel(IntMatrix::from_rows(dual, n)));
}

inline bool is_saturated(const Sublattice& lattice) {
  if (lattice.rank() == 0) return true;
  SmithForm f = smith_normal_form(IntMatrix::from_rows(lattice.basis(), lattice.ambient_rank()));
  for (const auto& d : f.diagonal())
    if (d != 1) return false;
  return true;
}

// Index [Z^n : span(generators)], or infinite when they do not span Q^n.
class LatticeIndex {
 public:
  static LatticeIndex infinite() { return LatticeIndex(); }
  static LatticeIndex finite(Integer value) { return LatticeIndex(std::move(value)); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const Integer& value() const {
    require(value_.has_value(), ErrorCode::InvalidInput, "value() of an infinite lattice index");
    return *value_;
  }
  std::string str() const { return value_ ? value_->str() : std::string("infinite"); }

  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;

 private:
  LatticeIndex() = default;
  explicit LatticeIndex(Integer v) : value_(std::move(v)) {}
  std::optional<Integer> value_;
};

inline LatticeIndex lattice_index(std::size_t ambient_rank, std::span<const LatticeVector> generators) {
  if (ambient_rank == 0) return LatticeIndex::finite(1);
  SmithForm f = smith_normal_form(IntMatrix::from_rows(generators, ambient_rank));
  if (f.rank() < ambient_rank) return LatticeIndex::infinite();
  Integer product = 1;
  for (const auto& d : f.diagonal()) product *= d;
  return LatticeIndex::finite(product);
}

inline LatticeIndex lattice_index(const Sublattice& lattice) {
  return lattice_index(lattice.ambient_rank(), lattice.basis());
}

// Surjection Z^n -> Z^(n - k) whose kernel is a given saturated rank-k sublattice.
struct QuotientMap {
  std::size_t ambient_rank;
  Sublattice kernel;
  IntMatrix projection;  // (n - k) x n
  IntMatrix section;     // n x (n - k); projection * section == identity

  std::size_t target_rank() const { return projection.rows(); }
  LatticeVector operator()(const LatticeVector& x) const { return projection.apply(x); }
};

inline QuotientMap quotient_map(const Sublattice& kernel) {
  const std::size_t n = kernel.ambient_rank();
  const std::size_t k = kernel.rank();
  require(is_saturated(kernel), ErrorCode::NotSaturated, "quotient by a non-saturated sublattice has torsion");
  // U K V = [I_k; 0] for the column matrix K of the kernel basis. The bottom
  // rows of U annihilate K, and the last columns of U^{-1} give a section.
  IntMatrix kmat = IntMatrix::from_columns(kernel.basis(), n);
  SmithForm f = smith_normal_form(kmat);
  IntMatrix projection(n - k, n);
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) projection(i - k, j) = f.U(i, j);
  auto u_inv = inverse(to_rational(f.U));
  IntMatrix section(n, n - k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = k; j < n; ++j) section(i, j - k) = numerator_of((*u_inv)(i, j));
  return {n, kernel, std::move(projection), std::move(section)};
}

// Lattice point of `sigma` whose image generates sigma/tau ~ Z, oriented so
// that the witness maps to a positive multiple of it. When the witness itself
// maps to the generator it is returned unchanged.
inline LatticeVector normal_generator(const Sublattice& tau, const Sublattice& sigma, const LatticeVector& witness) {
  require(sigma.rank() == tau.rank() + 1, ErrorCode::NotCodimOne, "normal_generator needs rank(sigma) = rank(tau) + 1");
  QuotientMap q = quotient_map(tau);
  // Images of sigma's basis span a rank-one lattice Z*g.
  std::vector<LatticeVector> images;
  for (const auto& b : sigma.basis()) images.push_back(q(b));
  std::vector<LatticeVector> h = hermite_basis(images, q.target_rank());
  require(h.size() == 1, ErrorCode::NotCodimOne, "sigma does not contain tau with codimension one");
  LatticeVector g = h.front();

  // Coefficients expressing g in terms of the images lift it to sigma.
  IntMatrix img = IntMatrix::from_columns(images, q.target_rank());
  SmithForm f = smith_normal_form(img);
  // img * x = g  <=>  S (V^{-1} x) = U g
  LatticeVector ug = f.U.apply(g);
  LatticeVector y(sigma.rank());
  for (std::size_t i = 0; i < f.rank(); ++i) y[i] = ug[i] / f.S(i, i);
  LatticeVector x = f.V.apply(y);
  LatticeVector lift(tau.ambient_rank());
  for (std::size_t i = 0; i < sigma.rank(); ++i) lift += x[i] * sigma.basis()[i];

  LatticeVector wimg = q(witness);
  Integer pairing = dot(wimg, g);
  require(pairing != 0, ErrorCode::InvalidInput, "witness lies in tau");
  if (pairing < 0) {
    lift = -lift;
    g = -g;
  }
  if (wimg == g) return witness;
  return lift;
}

}  // namespace torbun
