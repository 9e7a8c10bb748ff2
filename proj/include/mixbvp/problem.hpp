#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mixbvp/boundary_data.hpp"
#include "mixbvp/ratio.hpp"

namespace mixbvp {

// Base derivative orders and strides of the two horizontal boundary condition
// groups: order q + gamma*j at y = -a and chi + delta*j at y = +a,
// j = 0..n-1, with gamma, delta in {1, 2}.
struct BoundarySchema {
  int gamma = 1;
  int delta = 1;
  int q = 0;
  int chi = 0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }

  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v;
    }
    return s;
  }
};

struct Tolerances {
  double degeneracy_tol = 1e-8;
  double residual_tol = 1e-6;
};

// Full problem statement: find u on (0,l) x (-a,a) with
//   Dx^{2n} u + sgn(y) Dy^{2n} u = 0,
//   Dx^{2s} u = 0 on the vertical sides,
//   Dy^{q+gamma*j} u(x,-a) = phi_j(x),  Dy^{chi+delta*j} u(x,+a) = psi_j(x).
struct ProblemSpec {
  int n = 2;  // equation order is 2n
  double l = 1.0;
  double a = 1.0;
  RatioValue ratio = RatioValue::rational(1, 1);  // exact form of a/l
  BoundarySchema schema;
  std::vector<BoundaryFunction> phi;  // data at y = -a, one function per j
  std::vector<BoundaryFunction> psi;  // data at y = +a
  int truncation = 50;                // retained series modes K
  Tolerances tolerances;
  // Optional (mode, amplitude) weights for the free kernel direction of
  // degenerate modes; unset modes default to the minimum-norm solution.
  std::vector<std::pair<int, double>> kernel_amplitudes;

  int order() const { return 2 * n; }
  int lower_order(int j) const { return schema.q + schema.gamma * j; }
  int upper_order(int j) const { return schema.chi + schema.delta * j; }

  double kernel_amplitude(int k) const {
    for (const auto& [mode, amp] : kernel_amplitudes) {
      if (mode == k) return amp;
    }
    return 0.0;
  }
};

namespace detail {

inline void check_boundary_side(const std::vector<BoundaryFunction>& fns, const char* side, int n,
                                double l, int truncation, ValidationReport& report) {
  if (static_cast<int>(fns.size()) != n) {
    report.violations.push_back(std::string(side) + ": expected " + std::to_string(n) +
                                " boundary functions, got " + std::to_string(fns.size()));
    return;
  }
  for (int j = 0; j < n; ++j) {
    const auto& f = fns[j];
    if (std::abs(data_length(f) - l) > 1e-12 * std::max(1.0, l)) {
      report.violations.push_back(std::string(side) + "[" + std::to_string(j) +
                                  "]: interval length differs from l");
    }
    if (const auto* sf = std::get_if<SampledFunction>(&f)) {
      if (truncation > sf->max_resolved_mode()) {
        report.violations.push_back(std::string(side) + "[" + std::to_string(j) +
                                    "]: K exceeds the resolved-mode limit " +
                                    std::to_string(sf->max_resolved_mode()) +
                                    " (fewer than 8 samples per period)");
      }
    }
  }
}

}  // namespace detail

inline void check_schema(const BoundarySchema& s, int n, ValidationReport& report) {
  if (s.gamma != 1 && s.gamma != 2) report.violations.push_back("gamma must be 1 or 2");
  if (s.delta != 1 && s.delta != 2) report.violations.push_back("delta must be 1 or 2");
  if (s.q < 0) report.violations.push_back("q must be nonnegative");
  if (s.chi < 0) report.violations.push_back("chi must be nonnegative");
  if (!report.violations.empty()) return;

  if (s.gamma == 1 && s.delta == 1) {
    if (s.q > n) report.violations.push_back("q <= n required when gamma = delta = 1");
    if (s.chi > n) report.violations.push_back("chi <= n required when gamma = delta = 1");
  } else if (s.gamma == 2 && s.delta == 2) {
    if (s.q > 1) report.violations.push_back("q in {0,1} required when gamma = delta = 2");
    if (s.chi > 1) report.violations.push_back("chi in {0,1} required when gamma = delta = 2");
  } else {
    // Mixed strides are outside the tabulated set; the mode systems still
    // assemble, but no denominator form is predicted for them.
    const int max_lower = s.q + s.gamma * (n - 1);
    const int max_upper = s.chi + s.delta * (n - 1);
    if (max_lower > 2 * n - 1) {
      report.violations.push_back("prescribed order q + gamma*(n-1) exceeds 2n-1");
    }
    if (max_upper > 2 * n - 1) {
      report.violations.push_back("prescribed order chi + delta*(n-1) exceeds 2n-1");
    }
    if (report.violations.empty()) {
      report.warnings.push_back("mixed gamma/delta schema: denominator form not tabulated");
    }
  }
}

inline ValidationReport validate_problem(const ProblemSpec& spec) {
  ValidationReport report;
  if (spec.n < 1) report.violations.push_back("n must be a positive integer");
  if (!(spec.l > 0)) report.violations.push_back("l must be positive");
  if (!(spec.a > 0)) report.violations.push_back("a must be positive");
  if (spec.truncation < 1) report.violations.push_back("K must be at least 1");
  if (!(spec.tolerances.degeneracy_tol > 0)) {
    report.violations.push_back("degeneracy_tol must be positive");
  }
  if (!(spec.tolerances.residual_tol > 0)) {
    report.violations.push_back("residual_tol must be positive");
  }
  if (!report.violations.empty()) return report;

  check_schema(spec.schema, spec.n, report);

  if (spec.phi.empty() && spec.psi.empty()) {
    report.violations.push_back("empty data: no boundary functions supplied");
  } else {
    detail::check_boundary_side(spec.phi, "phi", spec.n, spec.l, spec.truncation, report);
    detail::check_boundary_side(spec.psi, "psi", spec.n, spec.l, spec.truncation, report);
  }

  // Float division of a by l is never trusted for rationality; the exact
  // ratio is supplied separately and cross-checked here.
  if (!(spec.ratio.value() > 0)) {
    report.violations.push_back("ratio must be positive");
  } else if (std::abs(spec.a / spec.l - spec.ratio.value()) > 1e-12) {
    report.violations.push_back("ratio mismatch: |a/l - ratio| > 1e-12");
  }

  for (const auto& [mode, amp] : spec.kernel_amplitudes) {
    if (mode < 1 || mode > spec.truncation) {
      report.violations.push_back("kernel amplitude mode " + std::to_string(mode) +
                                  " outside 1..K");
    }
    if (!std::isfinite(amp)) report.violations.push_back("kernel amplitude is not finite");
  }
  return report;
}

}  // namespace mixbvp
