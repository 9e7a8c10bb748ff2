#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "mixbvp/error.hpp"

namespace mixbvp {

// Reduced fraction num/den with den > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long num, long long den) {
    if (den == 0) throw Error("rational number with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return Rational{num, den};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }

  Rational scaled(long long factor) const { return of(num * factor, den); }
  Rational plus(const Rational& other) const {
    return of(num * other.den + other.num * den, den * other.den);
  }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

// Largest f with f*f | d, by trial division. d is a config-scale integer.
inline long long largest_square_divisor(long long d) {
  long long f = 1;
  for (long long p = 2; p * p <= d; ++p) {
    while (d % (p * p) == 0) {
      d /= p * p;
      f *= p;
    }
  }
  return f;
}

}  // namespace mixbvp
