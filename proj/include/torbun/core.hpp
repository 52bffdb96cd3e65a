#pragma once

// Exact numeric types, the library error type and small shared helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace torbun {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  InvalidInput,
  ParseError,
  ZeroVector,
  NotSaturated,
  NotCodimOne,
  NotStronglyConvex,
  RankCapExceeded,
  ConeNotInFan,
  NotAFace,
  NotSimplicial,
  NotComplete,
  AlgebraMismatch,
  DegreeMismatch,
  FanNotComplete,
  NonGenericVector,
  GenericSearchExhausted,
  ResidueNotPolynomial,
  BalancingViolation,
  OracleRequiresSmoothComplete,
  CrossCheckFailed,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::NotCodimOne: return "NotCodimOne";
    case ErrorCode::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorCode::RankCapExceeded: return "RankCapExceeded";
    case ErrorCode::ConeNotInFan: return "ConeNotInFan";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::FanNotComplete: return "FanNotComplete";
    case ErrorCode::NonGenericVector: return "NonGenericVector";
    case ErrorCode::GenericSearchExhausted: return "GenericSearchExhausted";
    case ErrorCode::ResidueNotPolynomial: return "ResidueNotPolynomial";
    case ErrorCode::BalancingViolation: return "BalancingViolation";
    case ErrorCode::OracleRequiresSmoothComplete: return "OracleRequiresSmoothComplete";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

inline void require(bool condition, ErrorCode code, const std::string& detail) {
  if (!condition) fail(code, detail);
}

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs_value(a), y = abs_value(b);
  while (y != 0) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd(a, b) * b);
}

// Floor division; b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct ExtendedGcd {
  Integer g, x, y;  // g = x*a + y*b, g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

}  // namespace torbun
