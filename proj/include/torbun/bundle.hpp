#pragma once

// A toric variety bundle as data: fibre fan, base Chow ring and mixing map.

#include "torbun/algebra.hpp"
#include "torbun/expression.hpp"
#include "torbun/fan.hpp"

#include <memory>

namespace torbun {

struct ToricBundle {
  FanPtr fan;
  AlgebraPtr algebra;
  MixingMap mixing;

  ToricBundle(FanPtr f, AlgebraPtr a, MixingMap m) : fan(std::move(f)), algebra(std::move(a)), mixing(std::move(m)) {
    require(mixing.algebra() == algebra, ErrorCode::AlgebraMismatch, "mixing map uses another algebra");
    require(mixing.lattice_rank() == fan->ambient_rank(), ErrorCode::InvalidInput,
            "mixing map rank " + std::to_string(mixing.lattice_rank()) + " does not match lattice rank " +
                std::to_string(fan->ambient_rank()));
  }
  std::size_t lattice_rank() const { return fan->ambient_rank(); }
};

using BundlePtr = std::shared_ptr<const ToricBundle>;

inline BundlePtr make_bundle(FanPtr fan, AlgebraPtr algebra, MixingMap mixing) {
  return std::make_shared<const ToricBundle>(std::move(fan), std::move(algebra), std::move(mixing));
}

// Parses a base class such as "a1*a2 - a2^2" over the algebra's generators
// and basis names.
inline AlgebraElement parse_class(const AlgebraPtr& algebra, std::string_view text) {
  ExpressionContext<AlgebraElement> ctx{
      [&](const Integer& k) { return AlgebraElement::scalar(algebra, k); },
      [&](const std::string& name) { return AlgebraElement::named(algebra, name); },
      [](const AlgebraElement& x, unsigned e) { return x.pow(e); }};
  return parse_expression(text, ctx);
}

// Parses an integer polynomial in the named variables.
inline IntPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  ExpressionContext<IntPolynomial> ctx{
      [n](const Integer& k) { return IntPolynomial::constant(n, k); },
      [&](const std::string& name) {
        for (std::size_t i = 0; i < n; ++i)
          if (names[i] == name) return IntPolynomial::variable(n, i);
        fail(ErrorCode::ParseError, "unknown variable '" + name + "'");
      },
      [](const IntPolynomial& p, unsigned e) { return p.pow(e); }};
  return parse_expression(text, ctx);
}

}  // namespace torbun
