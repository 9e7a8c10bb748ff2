#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mixbvp/problem.hpp"

namespace mixbvp {

// Composite Simpson rule over uniform samples (odd count).
inline double simpson(std::span<const double> samples, double spacing) {
  const int count = static_cast<int>(samples.size());
  if (count < 3 || count % 2 == 0) throw Error("Simpson rule needs an odd sample count >= 3");
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < count - 1; i += 2) odd += samples[i];
  for (int i = 2; i < count - 1; i += 2) even += samples[i];
  return spacing / 3.0 * (samples.front() + samples.back() + 4.0 * odd + 2.0 * even);
}

// Normalized eigenfunction X_k(x) = sqrt(2/l) * sin(pi*k*x/l).
inline double eigenfunction_value(int k, double x, double l) {
  if (k < 1) throw Error("mode index must be positive");
  if (!(l > 0)) throw Error("interval length must be positive");
  if (x < 0.0 || x > l) throw Error("x outside [0, l]");
  return std::sqrt(2.0 / l) * std::sin(M_PI * k * x / l);
}

// Integral of f against X_k over [0, l]. Exact by orthogonality for sine
// polynomials; composite Simpson on the stored grid for samples.
inline double sine_coefficient(const SinePolynomial& f, int k, double l) {
  if (k < 1) throw Error("mode index must be positive");
  if (std::abs(f.length - l) > 1e-12 * std::max(1.0, l)) {
    throw Error("sine polynomial interval differs from l");
  }
  return f.coefficient(k) * std::sqrt(l / 2.0);
}

inline double sine_coefficient(const SampledFunction& f, int k, double l) {
  if (k < 1) throw Error("mode index must be positive");
  if (std::abs(f.length - l) > 1e-12 * std::max(1.0, l)) {
    throw Error("sampled interval differs from l");
  }
  if (k > f.max_resolved_mode()) {
    throw Error("under-resolved mode " + std::to_string(k) + ": fewer than 8 samples per period");
  }
  std::vector<double> integrand(f.samples.size());
  for (int i = 0; i < f.count(); ++i) {
    integrand[i] = f.samples[i] * eigenfunction_value(k, f.node(i), l);
  }
  return simpson(integrand, f.spacing());
}

inline double sine_coefficient(const BoundaryFunction& f, int k, double l) {
  return std::visit([&](const auto& g) { return sine_coefficient(g, k, l); }, f);
}

// Dense table of the data coefficients phi_{jk}, psi_{jk}, j = 0..n-1,
// k = 1..K.
struct ModeCoefficients {
  int n = 0;
  int K = 0;
  std::vector<double> phi;  // row-major n x K
  std::vector<double> psi;

  double phi_at(int j, int k) const { return phi[static_cast<size_t>(j) * K + (k - 1)]; }
  double psi_at(int j, int k) const { return psi[static_cast<size_t>(j) * K + (k - 1)]; }

  std::span<const double> phi_row(int j) const {
    return std::span<const double>(phi).subspan(static_cast<size_t>(j) * K, K);
  }
  std::span<const double> psi_row(int j) const {
    return std::span<const double>(psi).subspan(static_cast<size_t>(j) * K, K);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : phi) m = std::max(m, std::abs(v));
    for (double v : psi) m = std::max(m, std::abs(v));
    return m;
  }
};

inline ModeCoefficients compute_mode_coefficients(const ProblemSpec& spec) {
  ModeCoefficients mc;
  mc.n = spec.n;
  mc.K = spec.truncation;
  mc.phi.resize(static_cast<size_t>(spec.n) * spec.truncation);
  mc.psi.resize(static_cast<size_t>(spec.n) * spec.truncation);
  for (int j = 0; j < spec.n; ++j) {
    for (int k = 1; k <= spec.truncation; ++k) {
      mc.phi[static_cast<size_t>(j) * mc.K + (k - 1)] = sine_coefficient(spec.phi[j], k, spec.l);
      mc.psi[static_cast<size_t>(j) * mc.K + (k - 1)] = sine_coefficient(spec.psi[j], k, spec.l);
    }
  }
  return mc;
}

}  // namespace mixbvp
