#pragma once

#include <array>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "mixbvp/rational.hpp"

namespace mixbvp {

// Phase offsets that occur in the denominator factor sin(pi*k*a/l + phase).
enum class Phase { kZero, kQuarter, kHalf, kThreeQuarter };

constexpr std::array<Phase, 4> kAllPhases{Phase::kZero, Phase::kQuarter, Phase::kHalf,
                                          Phase::kThreeQuarter};

// Phase as a count of quarter turns (multiples of pi/4).
constexpr int phase_quarters(Phase p) { return static_cast<int>(p); }

inline double phase_value(Phase p) { return phase_quarters(p) * M_PI / 4.0; }

inline std::string phase_name(Phase p) {
  switch (p) {
    case Phase::kZero: return "0";
    case Phase::kQuarter: return "pi/4";
    case Phase::kHalf: return "pi/2";
    case Phase::kThreeQuarter: return "3pi/4";
  }
  return "?";
}

// p + q*sqrt(d) with q != 0 and d >= 2 square-free.
struct QuadraticSurd {
  Rational p;
  Rational q;
  long long d = 2;

  double value() const { return p.value() + q.value() * std::sqrt(static_cast<double>(d)); }
};

// Exact-first representation of the side ratio a/l. Diophantine logic never
// trusts a float division; it works from this value instead.
class RatioValue {
 public:
  static RatioValue rational(const Rational& r) { return RatioValue(r); }
  static RatioValue rational(long long num, long long den) {
    return RatioValue(Rational::of(num, den));
  }

  // Normalizes degenerate surds: q == 0 or a perfect-square d collapse to the
  // exact rational p + q*sqrt(d).
  static RatioValue surd(const Rational& p, const Rational& q, long long d) {
    if (d <= 0) throw Error("surd radicand must be positive");
    if (q.num == 0) return RatioValue(p);
    const long long f = largest_square_divisor(d);
    const long long core = d / (f * f);
    if (core == 1) return RatioValue(p.plus(q.scaled(f)));
    return RatioValue(QuadraticSurd{p, q.scaled(f), core});
  }

  static RatioValue approximate(double v) { return RatioValue(v); }

  bool is_rational() const { return std::holds_alternative<Rational>(rep_); }
  bool is_surd() const { return std::holds_alternative<QuadraticSurd>(rep_); }
  bool is_float() const { return std::holds_alternative<double>(rep_); }

  const Rational& as_rational() const {
    if (!is_rational()) throw Error("ratio is not an exact rational");
    return std::get<Rational>(rep_);
  }
  const QuadraticSurd& as_surd() const {
    if (!is_surd()) throw Error("ratio is not a quadratic surd");
    return std::get<QuadraticSurd>(rep_);
  }

  double value() const {
    if (is_rational()) return std::get<Rational>(rep_).value();
    if (is_surd()) return std::get<QuadraticSurd>(rep_).value();
    return std::get<double>(rep_);
  }

  std::string str() const {
    if (is_rational()) return std::get<Rational>(rep_).str();
    if (is_surd()) {
      const auto& s = std::get<QuadraticSurd>(rep_);
      return s.p.str() + " + " + s.q.str() + "*sqrt(" + std::to_string(s.d) + ")";
    }
    return std::to_string(std::get<double>(rep_));
  }

 private:
  explicit RatioValue(const Rational& r) : rep_(r) {}
  explicit RatioValue(const QuadraticSurd& s) : rep_(s) {}
  explicit RatioValue(double v) : rep_(v) {}

  std::variant<Rational, QuadraticSurd, double> rep_;
};

enum class RatioKind {
  kInteger,
  kRationalSeparated,
  kRationalResonant,
  kAlgebraicIrrational,
  kFloatUnknown,
};

inline std::string ratio_kind_name(RatioKind k) {
  switch (k) {
    case RatioKind::kInteger: return "integer";
    case RatioKind::kRationalSeparated: return "rational-separated";
    case RatioKind::kRationalResonant: return "rational-resonant";
    case RatioKind::kAlgebraicIrrational: return "algebraic-irrational";
    case RatioKind::kFloatUnknown: return "float-unknown";
  }
  return "?";
}

struct RatioClass {
  RatioKind kind = RatioKind::kFloatUnknown;
  Rational fraction{0, 1};             // set for integer/rational kinds
  std::vector<Phase> separated_phases; // phases with a positive uniform bound
  int degree = 0;                      // algebraic degree for irrational kinds
};

// Whether |sin(pi*k*s/t + phase)| admits a positive uniform lower bound over
// all k, for a reduced denominator t >= 1.
inline bool separated_for(long long t, Phase phase) {
  switch (phase) {
    case Phase::kZero: return false;          // k = t always hits sin(pi*k2/t) = 0
    case Phase::kHalf: return t % 2 == 1;
    case Phase::kQuarter:
    case Phase::kThreeQuarter: return t % 4 != 0;
  }
  return false;
}

inline RatioClass classify_ratio(const RatioValue& ratio, Phase phase) {
  if (!(ratio.value() > 0)) throw Error("side ratio must be positive");
  RatioClass cls;
  if (ratio.is_rational()) {
    cls.fraction = ratio.as_rational();
    for (Phase p : kAllPhases) {
      if (separated_for(cls.fraction.den, p)) cls.separated_phases.push_back(p);
    }
    if (cls.fraction.is_integer()) {
      cls.kind = RatioKind::kInteger;
    } else if (separated_for(cls.fraction.den, phase)) {
      cls.kind = RatioKind::kRationalSeparated;
    } else {
      cls.kind = RatioKind::kRationalResonant;
    }
    return cls;
  }
  if (ratio.is_surd()) {
    cls.kind = RatioKind::kAlgebraicIrrational;
    cls.degree = 2;
    return cls;
  }
  cls.kind = RatioKind::kFloatUnknown;
  return cls;
}

}  // namespace mixbvp
