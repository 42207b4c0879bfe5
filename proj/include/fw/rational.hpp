#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace fw {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or a plain integer "p". Returns nothing on malformed input
/// or a non-positive denominator.
inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      BigInt p(s);
      return Rational(p);
    }
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q <= 0) return std::nullopt;
    Rational r(p, q);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

inline std::string rational_str(const Rational& r) {
  return r.get_str();
}

/// Prints big integers as "2^k" when they are large exact powers of two,
/// otherwise in decimal.
inline std::string bigint_pretty(const BigInt& z) {
  if (z > 65536 && mpz_popcount(z.get_mpz_t()) == 1)
    return "2^" + std::to_string(mpz_sizeinbase(z.get_mpz_t(), 2) - 1);
  return z.get_str();
}

}  // namespace fw
