#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixbvp/denominator.hpp"
#include "mixbvp/mode_system.hpp"

namespace mixbvp {

// Truncated series solution u(x,y) = sum_k u_k(y) X_k(x), k = 1..K. Every
// mode is either solved or explicitly kernel-parameterized; none is silently
// dropped.
struct SeriesSolution {
  ProblemSpec spec;
  std::vector<RootGeometry> geometry;  // per mode, k = 1..K
  std::vector<ModeSolution> modes;
  std::vector<int> resonant_modes;
  double m_hat = std::numeric_limits<double>::quiet_NaN();
  double resonance_threshold = 0.0;
  std::vector<std::string> warnings;

  int truncation() const { return static_cast<int>(modes.size()); }
};

namespace detail {

// u_k^{(t)}(y) on the given side from the stored coefficients.
inline double mode_derivative(const RootGeometry& geom, const ModeSolution& sol, Side side, int t,
                              double y) {
  const int offset = side == Side::kUpper ? 0 : 2 * geom.n;
  double v = 0.0;
  for (int i = 0; i < 2 * geom.n; ++i) {
    const double c = sol.coefficients[offset + i];
    if (c != 0.0) v += c * basis_value(geom, side, i, t, y);
  }
  return v;
}

// d^t/dx^t X_k(x) = sqrt(2/l) * (pi k/l)^t * sin(pi k x/l + t pi/2).
inline double eigenfunction_derivative(int k, double x, double l, int t) {
  const double lam = M_PI * k / l;
  return std::sqrt(2.0 / l) * std::pow(lam, t) * std::sin(lam * x + t * M_PI / 2.0);
}

}  // namespace detail

// Mode loop: solves every mode system, treating a mode as resonant when its
// singular-value ratio collapses below the median-calibrated threshold.
// Resonant modes require data orthogonal to the mode; they contribute the
// minimum-norm (zero) particular solution plus any configured kernel
// amplitude.
inline SeriesSolution build_solution(const ProblemSpec& spec) {
  const ValidationReport report = validate_problem(spec);
  if (!report.ok()) throw Error("invalid problem: " + report.summary());

  SeriesSolution sol;
  sol.spec = spec;
  sol.warnings = report.warnings;
  const int K = spec.truncation;
  const ModeCoefficients coeffs = compute_mode_coefficients(spec);
  const double data_norm = coeffs.max_abs();

  sol.geometry.reserve(K);
  std::vector<ScaledLinearSystem> systems;
  systems.reserve(K);
  std::vector<double> ratios(static_cast<size_t>(K));
  std::vector<double> phi_k(spec.n), psi_k(spec.n);
  for (int k = 1; k <= K; ++k) {
    sol.geometry.push_back(compute_root_geometry(spec.n, k, spec.l));
    for (int j = 0; j < spec.n; ++j) {
      phi_k[j] = coeffs.phi_at(j, k);
      psi_k[j] = coeffs.psi_at(j, k);
    }
    systems.push_back(assemble_mode_system(spec, sol.geometry.back(), phi_k, psi_k));
    ratios[k - 1] = singular_value_ratio(systems.back());
  }

  sol.resonance_threshold =
      std::max(spec.tolerances.degeneracy_tol, kResonanceMedianFactor * detail::median(ratios));

  sol.modes.reserve(K);
  for (int k = 1; k <= K; ++k) {
    ScaledLinearSystem& sys = systems[k - 1];
    if (ratios[k - 1] >= sol.resonance_threshold) {
      sol.modes.push_back(solve_mode(sys, sol.resonance_threshold));
      continue;
    }
    sol.resonant_modes.push_back(k);
    // Solvability condition: the data must not load the resonant mode.
    double component = 0.0;
    for (int j = 0; j < spec.n; ++j) {
      component = std::max(component, std::abs(coeffs.phi_at(j, k)));
      component = std::max(component, std::abs(coeffs.psi_at(j, k)));
    }
    if (component > 1e-10 * data_norm) {
      throw UnsolvableError(k, "nonorthogonal data at resonant mode k=" + std::to_string(k));
    }
    sys.rhs.setZero();
    sys.rhs_log_scale = 0.0;
    ModeSolution mode = solve_mode(sys, sol.resonance_threshold);
    const double amplitude = spec.kernel_amplitude(k);
    if (amplitude != 0.0 && !mode.kernel_basis.empty()) {
      // Kernel direction mapped to true coefficients and normalized to unit
      // max magnitude, so the amplitude has a coefficient-scale meaning.
      Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(mode.kernel_basis[0].data(),
                                                            sys.size());
      std::vector<double> direction = unscale_columns(sys, v);
      double vmax = 0.0;
      for (double c : direction) vmax = std::max(vmax, std::abs(c));
      if (vmax > 0.0) {
        for (int j = 0; j < sys.size(); ++j) {
          mode.coefficients[j] += amplitude * direction[j] / vmax;
        }
      }
    }
    sol.modes.push_back(std::move(mode));
  }

  const DenominatorForm form = expected_denominator(spec.order(), spec.schema);
  if (form.tabulated) {
    const double tau = spec.ratio.value();
    std::vector<double> admissible;
    for (int k = 1; k <= K; ++k) {
      const double delta4 = std::sin(M_PI * k * tau + phase_value(form.phase));
      if (std::abs(delta4) < 0.3) continue;
      admissible.push_back(scaled_determinant(systems[k - 1]).mantissa / delta4);
    }
    if (!admissible.empty()) sol.m_hat = detail::median(admissible);
  } else {
    sol.warnings.push_back("schema not tabulated: asymptotic diagnostics disabled");
  }
  return sol;
}

// Derivative orders dx_order, dy_order up to 2n each. Picks the upper basis
// for y >= 0; use evaluate_side to probe the y = 0 interface from a chosen
// side.
inline double evaluate_side(const SeriesSolution& sol, double x, double y, int dx_order,
                            int dy_order, Side side) {
  const ProblemSpec& spec = sol.spec;
  if (x < 0.0 || x > spec.l || y < -spec.a || y > spec.a) throw Error("point outside the rectangle");
  if (dx_order < 0 || dx_order > 2 * spec.n || dy_order < 0 || dy_order > 2 * spec.n) {
    throw Error("derivative order exceeds 2n");
  }
  double value = 0.0;
  for (int k = 1; k <= sol.truncation(); ++k) {
    const ModeSolution& mode = sol.modes[k - 1];
    bool zero = true;
    for (double c : mode.coefficients) {
      if (c != 0.0) {
        zero = false;
        break;
      }
    }
    if (zero) continue;
    const double uk = detail::mode_derivative(sol.geometry[k - 1], mode, side, dy_order, y);
    value += uk * detail::eigenfunction_derivative(k, x, spec.l, dx_order);
  }
  return value;
}

inline double evaluate(const SeriesSolution& sol, double x, double y, int dx_order, int dy_order) {
  return evaluate_side(sol, x, y, dx_order, dy_order, y < 0.0 ? Side::kLower : Side::kUpper);
}

// Residuals of the assembled series against every requirement of the
// problem: the equation in both open halves, the vertical-side conditions,
// the data conditions on y = -a and y = +a, the gluing across y = 0, and the
// energy integral of the top derivative.
struct ResidualReport {
  double pde_residual_sup = 0.0;
  double boundary_residual_sup = 0.0;
  double gluing_residual_sup = 0.0;
  double energy_sup = 0.0;
  std::vector<double> edge_residuals;   // per even x-derivative order 2s
  std::vector<double> lower_residuals;  // per condition at y = -a
  std::vector<double> upper_residuals;  // per condition at y = +a
};

inline ResidualReport verify(const SeriesSolution& sol, int nx, int ny) {
  if (nx < 9 || ny < 9) throw Error("verification grid must be at least 9 x 9");
  const ProblemSpec& spec = sol.spec;
  const int n = spec.n;
  ResidualReport rep;

  std::vector<double> xs(nx), ys(ny);
  for (int i = 0; i < nx; ++i) xs[i] = spec.l * i / (nx - 1);
  for (int i = 0; i < ny; ++i) ys[i] = -spec.a + 2.0 * spec.a * i / (ny - 1);

  // Equation residual on interior points off the type-change line.
  for (int iy = 1; iy < ny - 1; ++iy) {
    const double y = ys[iy];
    if (y == 0.0) continue;
    const double sgn = y > 0.0 ? 1.0 : -1.0;
    for (int ix = 1; ix < nx - 1; ++ix) {
      const double r =
          evaluate(sol, xs[ix], y, 2 * n, 0) + sgn * evaluate(sol, xs[ix], y, 0, 2 * n);
      rep.pde_residual_sup = std::max(rep.pde_residual_sup, std::abs(r));
    }
  }

  // Vertical sides: even x-derivatives vanish.
  rep.edge_residuals.assign(n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (double y : ys) {
      rep.edge_residuals[s] = std::max({rep.edge_residuals[s],
                                        std::abs(evaluate(sol, 0.0, y, 2 * s, 0)),
                                        std::abs(evaluate(sol, spec.l, y, 2 * s, 0))});
    }
  }

  // Data conditions. Sampled data is compared on its own nodes.
  auto side_residual = [&](const BoundaryFunction& f, double y, int order) {
    double worst = 0.0;
    if (const auto* sp = std::get_if<SinePolynomial>(&f)) {
      for (double x : xs) {
        worst = std::max(worst, std::abs(evaluate(sol, x, y, 0, order) - (*sp)(x)));
      }
    } else {
      const auto& sf = std::get<SampledFunction>(f);
      for (int i = 0; i < sf.count(); ++i) {
        worst =
            std::max(worst, std::abs(evaluate(sol, sf.node(i), y, 0, order) - sf.samples[i]));
      }
    }
    return worst;
  };
  rep.lower_residuals.resize(n);
  rep.upper_residuals.resize(n);
  for (int j = 0; j < n; ++j) {
    rep.lower_residuals[j] = side_residual(spec.phi[j], -spec.a, spec.lower_order(j));
    rep.upper_residuals[j] = side_residual(spec.psi[j], spec.a, spec.upper_order(j));
  }
  for (int s = 0; s < n; ++s) rep.boundary_residual_sup = std::max(rep.boundary_residual_sup, rep.edge_residuals[s]);
  for (int j = 0; j < n; ++j) {
    rep.boundary_residual_sup =
        std::max({rep.boundary_residual_sup, rep.lower_residuals[j], rep.upper_residuals[j]});
  }

  // Gluing: derivative orders 0..2n-1 across y = 0.
  for (int p = 0; p < 2 * n; ++p) {
    for (double x : xs) {
      const double jump = evaluate_side(sol, x, 0.0, 0, p, Side::kUpper) -
                          evaluate_side(sol, x, 0.0, 0, p, Side::kLower);
      rep.gluing_residual_sup = std::max(rep.gluing_residual_sup, std::abs(jump));
    }
  }

  // Energy integral of the top y-derivative, Simpson over x per grid line.
  const int mx = nx % 2 == 1 ? nx : nx + 1;
  std::vector<double> integrand(mx);
  for (double y : ys) {
    for (int i = 0; i < mx; ++i) {
      const double x = spec.l * i / (mx - 1);
      const double d = evaluate(sol, x, y, 0, 2 * n);
      integrand[i] = d * d;
    }
    rep.energy_sup = std::max(rep.energy_sup, simpson(integrand, spec.l / (mx - 1)));
  }
  return rep;
}

struct GrowthProbeRow {
  int k = 0;
  double log10_max_coefficient = 0.0;  // +inf for a degenerate solve
  bool degenerate = false;
};

// Solves selected modes with unit data phi_{jk} = psi_{jk} = 1 and reports
// the coefficient magnitude on a log scale. Uses the raw degeneracy
// tolerance on purpose: near-resonant systems stay solvable and the
// magnitude of their coefficients is the observable of interest.
inline std::vector<GrowthProbeRow> growth_probe(const ProblemSpec& spec,
                                                std::span<const int> k_list) {
  if (const auto report = validate_problem(spec); !report.ok()) {
    throw Error("invalid problem: " + report.summary());
  }
  const std::vector<double> unit(spec.n, 1.0);
  std::vector<GrowthProbeRow> rows;
  rows.reserve(k_list.size());
  for (int k : k_list) {
    const RootGeometry geom = compute_root_geometry(spec.n, k, spec.l);
    const ScaledLinearSystem sys = assemble_mode_system(spec, geom, unit, unit);
    GrowthProbeRow row;
    row.k = k;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < spec.tolerances.degeneracy_tol * sv(0)) {
      row.degenerate = true;
      row.log10_max_coefficient = std::numeric_limits<double>::infinity();
    } else {
      const ModeSolution mode = solve_mode(sys, spec.tolerances.degeneracy_tol);
      double m = 0.0;
      for (double c : mode.coefficients) m = std::max(m, std::abs(c));
      row.log10_max_coefficient = std::log10(m);
    }
    rows.push_back(row);
  }
  return rows;
}

enum class SmoothnessVerdict { kSufficientT2, kSufficientT3, kInconclusive };

inline std::string verdict_name(SmoothnessVerdict v) {
  switch (v) {
    case SmoothnessVerdict::kSufficientT2: return "sufficient-T2";
    case SmoothnessVerdict::kSufficientT3: return "sufficient-T3";
    case SmoothnessVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

// Decay-rate surrogate for the smoothness hypotheses of the convergence
// theorems. A separated (integer/rational) ratio costs nothing in the
// denominator, so coefficient decay k^{-(2n+2)} suffices; an irrational
// ratio costs k^{1+eps}, raising the requirement to k^{-(2n+2+eps)}. Finite
// sine data passes unconditionally. This checks a surrogate, not the
// smoothness class itself.
struct SmoothnessReport {
  struct Entry {
    std::string name;
    bool finite_spectrum = false;
    double decay_exponent = std::numeric_limits<double>::infinity();
    SmoothnessVerdict verdict = SmoothnessVerdict::kInconclusive;
  };
  std::vector<Entry> entries;
};

inline SmoothnessReport smoothness_check(const ProblemSpec& spec, double epsilon = 0.5) {
  if (const auto report = validate_problem(spec); !report.ok()) {
    throw Error("invalid problem: " + report.summary());
  }
  const bool irrational_ratio = !spec.ratio.is_rational();
  SmoothnessReport out;
  auto handle = [&](const BoundaryFunction& f, std::string name) {
    SmoothnessReport::Entry entry;
    entry.name = std::move(name);
    if (is_sine_polynomial(f)) {
      // Every sine mode and all its even derivatives vanish at the endpoints,
      // and the spectrum is finite: nothing left to check.
      entry.finite_spectrum = true;
      entry.verdict = SmoothnessVerdict::kSufficientT2;
      out.entries.push_back(std::move(entry));
      return;
    }
    const auto& sf = std::get<SampledFunction>(f);
    const int k_fit = std::min(spec.truncation, sf.max_resolved_mode());
    std::vector<double> mags(static_cast<size_t>(k_fit));
    double max_mag = 0.0;
    for (int k = 1; k <= k_fit; ++k) {
      mags[k - 1] = std::abs(sine_coefficient(sf, k, spec.l));
      max_mag = std::max(max_mag, mags[k - 1]);
    }
    // Least-squares slope of log|coef| against log k over modes that are
    // clear of the quadrature noise floor.
    std::vector<std::pair<double, double>> pts;
    for (int k = 1; k <= k_fit; ++k) {
      if (mags[k - 1] > 1e-9 * max_mag) pts.emplace_back(std::log(k), std::log(mags[k - 1]));
    }
    if (pts.size() < 3) {
      entry.finite_spectrum = true;  // effectively finite spectrum
      entry.verdict = SmoothnessVerdict::kSufficientT2;
      out.entries.push_back(std::move(entry));
      return;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [px, py] : pts) {
      sx += px;
      sy += py;
      sxx += px * px;
      sxy += px * py;
    }
    const double m = static_cast<double>(pts.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    entry.decay_exponent = -slope;
    const double needed = 2.0 * spec.n + 2.0 + (irrational_ratio ? epsilon : 0.0);
    if (entry.decay_exponent >= needed) {
      entry.verdict = irrational_ratio ? SmoothnessVerdict::kSufficientT3
                                       : SmoothnessVerdict::kSufficientT2;
    }
    out.entries.push_back(std::move(entry));
  };
  for (int j = 0; j < spec.n; ++j) handle(spec.phi[j], "phi[" + std::to_string(j) + "]");
  for (int j = 0; j < spec.n; ++j) handle(spec.psi[j], "psi[" + std::to_string(j) + "]");
  return out;
}

}  // namespace mixbvp
