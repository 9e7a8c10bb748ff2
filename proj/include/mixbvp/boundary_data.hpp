#pragma once

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "mixbvp/error.hpp"

namespace mixbvp {

// Finite sine series sum_i c_i * sin(pi*k_i*x/l) on [0, length]. Mode indices
// are positive and strictly increasing.
struct SinePolynomial {
  std::vector<std::pair<int, double>> terms;
  double length = 1.0;

  static SinePolynomial of(std::vector<std::pair<int, double>> terms, double length) {
    if (!(length > 0)) throw Error("sine polynomial needs a positive interval length");
    int prev = 0;
    for (const auto& [k, c] : terms) {
      if (k <= prev) throw Error("sine polynomial modes must be positive and strictly increasing");
      if (!std::isfinite(c)) throw Error("sine polynomial coefficient is not finite");
      prev = k;
    }
    return SinePolynomial{std::move(terms), length};
  }

  double coefficient(int k) const {
    for (const auto& [mode, c] : terms) {
      if (mode == k) return c;
      if (mode > k) break;
    }
    return 0.0;
  }

  double operator()(double x) const {
    double v = 0.0;
    for (const auto& [k, c] : terms) v += c * std::sin(M_PI * k * x / length);
    return v;
  }
};

// Uniform samples on [0, length] including both endpoints. The count is odd
// (composite Simpson applies) and at least 17.
struct SampledFunction {
  std::vector<double> samples;
  double length = 1.0;

  static SampledFunction of(std::vector<double> samples, double length) {
    if (!(length > 0)) throw Error("sampled function needs a positive interval length");
    if (samples.size() < 17) throw Error("sampled function needs at least 17 samples");
    if (samples.size() % 2 == 0) throw Error("sampled function needs an odd sample count");
    for (double v : samples) {
      if (!std::isfinite(v)) throw Error("sample value is not finite");
    }
    return SampledFunction{std::move(samples), length};
  }

  int count() const { return static_cast<int>(samples.size()); }
  double spacing() const { return length / (count() - 1); }
  double node(int i) const { return length * i / (count() - 1); }

  // Largest mode with at least 8 samples per period.
  int max_resolved_mode() const { return (count() - 1) / 4; }
};

using BoundaryFunction = std::variant<SinePolynomial, SampledFunction>;

inline double data_length(const BoundaryFunction& f) {
  return std::visit([](const auto& g) { return g.length; }, f);
}

inline bool is_sine_polynomial(const BoundaryFunction& f) {
  return std::holds_alternative<SinePolynomial>(f);
}

}  // namespace mixbvp
