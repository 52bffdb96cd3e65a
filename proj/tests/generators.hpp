#pragma once

// Random inputs for the property tests.

#include "f1_data.hpp"

#include <optional>
#include <random>

namespace gen {

using namespace torbun;

// Piecewise linear function with the given values on the rays, if integral.
inline std::optional<PiecewisePolynomial> pl_from_ray_values(const FanPtr& fan, const std::vector<long>& values) {
  const std::size_t n = fan->ambient_rank();
  PiecewisePolynomial out(fan, 1);
  for (auto s : fan->maximal_cones()) {
    std::vector<Rational> rhs;
    for (auto r : fan->ray_indices(s)) rhs.emplace_back(values[r]);
    // Solve rays^T m = values.
    auto m = solve_rational(to_rational(IntMatrix::from_rows(fan->cone(s).rays(), n)), rhs);
    if (!m) return std::nullopt;
    std::vector<Integer> form;
    for (const auto& x : *m) {
      if (denominator_of(x) != 1) return std::nullopt;
      form.push_back(numerator_of(x));
    }
    out.set(s, IntPolynomial::linear(form));
  }
  return out;
}

inline PiecewisePolynomial random_pl(std::mt19937_64& rng, const FanPtr& fan) {
  std::uniform_int_distribution<long> value(-4, 4);
  for (;;) {
    std::vector<long> values;
    for (std::size_t i = 0; i < fan->rays().size(); ++i) values.push_back(value(rng));
    if (auto f = pl_from_ray_values(fan, values)) return *f;
  }
}

inline IntPolynomial random_homogeneous(std::mt19937_64& rng, unsigned degree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  IntPolynomial p(2);
  for (unsigned i = 0; i <= degree; ++i) p.add_term(Exponent{i, degree - i}, Integer(coeff(rng)));
  return p;
}

inline PiecewisePolynomial random_pp(std::mt19937_64& rng, const FanPtr& fan, unsigned degree) {
  if (degree == 0) return global_polynomial(fan, IntPolynomial::constant(2, std::uniform_int_distribution<int>(-3, 3)(rng)));
  if (degree == 1) {
    PiecewisePolynomial f = random_pl(rng, fan);
    IntPolynomial lin = random_homogeneous(rng, 1);
    return lin.is_zero() ? f : f + global_polynomial(fan, lin);
  }
  PiecewisePolynomial f = random_pl(rng, fan) * random_pl(rng, fan);
  PiecewisePolynomial g = random_pl(rng, fan);
  IntPolynomial lin = random_homogeneous(rng, 1);
  if (!lin.is_zero()) f = f + g * global_polynomial(fan, lin);
  IntPolynomial quad = random_homogeneous(rng, 2);
  if (!quad.is_zero()) f = f + global_polynomial(fan, quad);
  return f;
}

// Random homogeneous class of the given codimension: sum of random base
// classes times monomials in the divisors.
inline ChowExpr random_class(std::mt19937_64& rng, unsigned codim) {
  std::uniform_int_distribution<int> coeff(-2, 2), ray(1, 4);
  ChowExpr out(f1::bundle());
  for (int t = 0; t < 3; ++t) {
    std::uniform_int_distribution<unsigned> fibre(0, std::min(codim, 2u));
    unsigned j = fibre(rng);
    ChowExpr mono = ChowExpr::constant(f1::bundle(), AlgebraElement::one(f1::bundle()->algebra));
    for (unsigned k = 0; k < j; ++k) mono = mono * ChowExpr::divisor(f1::bundle(), ray(rng) - 1);
    AlgebraElement c = AlgebraElement::zero(f1::bundle()->algebra);
    for (auto b : f1::bundle()->algebra->degree_basis(codim - j))
      c += Integer(coeff(rng)) * AlgebraElement::basis(f1::bundle()->algebra, b);
    out = out + ChowExpr::constant(f1::bundle(), c) * mono;
  }
  return out;
}

}  // namespace gen
