#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mixbvp/mode_system.hpp"

namespace mixbvp {

// A determinant collapse counts as resonant when the smallest-singular-value
// ratio of the scaled mode matrix drops below this fraction of the median
// ratio over the scanned mode range (floored by the configured
// degeneracy_tol). The lower-order remainder of the determinant decays only
// exponentially in k, so small resonant modes collapse by orders of
// magnitude but not to machine zero; a fixed absolute threshold would miss
// them.
inline constexpr double kResonanceMedianFactor = 0.1;

// Leading denominator factor Delta = sin(pi*k*a/l + phase). The phase is
// tabulated by (order mod 8, gamma, q mod 2); schemas with gamma != delta
// fall outside the tabulated set and no form is predicted for them.
struct DenominatorForm {
  Phase phase = Phase::kZero;
  bool tabulated = false;
};

inline DenominatorForm expected_denominator(int order, const BoundarySchema& schema) {
  if (order < 2 || order % 2 != 0) throw Error("equation order must be a positive even integer");
  DenominatorForm form;
  form.tabulated = schema.gamma == schema.delta;
  const bool q_odd = schema.q % 2 != 0;
  if (schema.gamma == 2) {
    form.phase = q_odd ? Phase::kThreeQuarter : Phase::kQuarter;
    return form;
  }
  switch (order % 8) {
    case 4: form.phase = q_odd ? Phase::kHalf : Phase::kZero; break;
    case 0: form.phase = q_odd ? Phase::kZero : Phase::kHalf; break;
    case 2: form.phase = q_odd ? Phase::kThreeQuarter : Phase::kQuarter; break;
    case 6: form.phase = q_odd ? Phase::kQuarter : Phase::kThreeQuarter; break;
  }
  return form;
}

// Exact zero test for sin(pi*(k*s/t + c/4)) by residue arithmetic: zero iff
// 4*k*s + c*t is divisible by 4*t. No float comparison involved.
inline bool residue_hits_zero(long long k2, long long t, Phase phase) {
  const auto m = static_cast<__int128>(4) * t;
  __int128 r = (static_cast<__int128>(4) * k2 + static_cast<__int128>(phase_quarters(phase)) * t) % m;
  return r == 0;
}

// |sin(pi * m / M)| with the range reduction done in integer arithmetic, so
// zeros are exact and the classic anchor values come out bit-clean.
inline double abs_sin_rational_pi(long long m, long long M) {
  if (M <= 0) throw Error("abs_sin_rational_pi needs a positive denominator");
  long long r = m % M;
  if (r < 0) r += M;            // |sin| has period pi
  if (2 * r > M) r = M - r;     // fold onto [0, 1/2]
  const long long g = std::gcd(r, M);
  const long long p = r / g, q = M / g;
  if (p == 0) return 0.0;
  if (q == 2) return 1.0;                        // sin(pi/2)
  if (q == 6) return 0.5;                        // sin(pi/6)
  if (q == 4) return std::sqrt(2.0) / 2.0;       // sin(pi/4)
  if (q == 3) return std::sqrt(3.0) / 2.0;       // sin(pi/3)
  return std::sin(M_PI * static_cast<double>(p) / static_cast<double>(q));
}

inline bool predicted_resonant(const Rational& tau, Phase phase, long long k) {
  const long long t = tau.den;
  const long long k2 = static_cast<long long>(
      (static_cast<__int128>(k) * tau.num) % t);
  return residue_hits_zero(k2, t, phase);
}

struct SeparationBound {
  enum class Kind { kExactRationalMin, kIntegerCase, kEmpiricalScan };

  double delta = 0.0;
  long long witness_k2 = 0;  // residue attaining the minimum (rational case)
  Kind kind = Kind::kExactRationalMin;
  bool resonant_warning = false;  // delta == 0: some mode hits the zero exactly
};

// Uniform lower bound of |sin(pi*k*a/l + phase)| over all k, for integer or
// rational side ratios. The minimum runs over the attainable residues
// k2 = (k*s) mod t, which cover all of 0..t-1 since gcd(s, t) = 1.
inline SeparationBound separation_bound(const RatioClass& cls, const DenominatorForm& form) {
  SeparationBound bound;
  if (cls.kind == RatioKind::kAlgebraicIrrational || cls.kind == RatioKind::kFloatUnknown) {
    throw Error("separation bound needs an integer or rational ratio class");
  }
  if (cls.kind == RatioKind::kInteger) {
    bound.kind = SeparationBound::Kind::kIntegerCase;
    bound.delta = abs_sin_rational_pi(phase_quarters(form.phase), 4);
    bound.resonant_warning = form.phase == Phase::kZero;
    return bound;
  }

  const long long t = cls.fraction.den;
  if (t > (1LL << 60)) throw Error("denominator too large for separation analysis");
  constexpr long long kEnumerationLimit = 1000000;
  const long long limit = std::min(t, kEnumerationLimit);
  bound.kind = t <= kEnumerationLimit ? SeparationBound::Kind::kExactRationalMin
                                      : SeparationBound::Kind::kEmpiricalScan;
  double best = std::numeric_limits<double>::infinity();
  long long witness = 0;
  for (long long k2 = 0; k2 < limit; ++k2) {
    // value at residue k2: |sin(pi * (4*k2 + c*t) / (4*t))|
    const double v = abs_sin_rational_pi(4 * k2 + phase_quarters(form.phase) * t, 4 * t);
    if (v < best) {
      best = v;
      witness = k2;
      if (v == 0.0) break;
    }
  }
  bound.delta = best;
  bound.witness_k2 = witness;
  bound.resonant_warning = best == 0.0;
  return bound;
}

struct DiophantineScanConfig {
  double epsilon = 0.5;      // exponent slack in the lower bound N / k^{1+epsilon}
  long long k_max = 10000;   // scan horizon
};

struct DiophantineRow {
  long long k = 0;
  double abs_sin = 0.0;  // |sin(pi*k*tau + phase)|
  double scaled = 0.0;   // abs_sin * k^{1+epsilon}
};

struct DiophantineScanResult {
  double n_hat = 0.0;   // min of the scaled column: empirical constant N
  long long worst_k = 0;
  double epsilon = 0.0;
  std::vector<DiophantineRow> table;
};

// Direct scan of the denominator smallness for an irrational (or float) side
// ratio. For quadratic surds tau is evaluated to full double precision from
// its exact form.
inline DiophantineScanResult diophantine_scan(const RatioValue& ratio, const DenominatorForm& form,
                                              const DiophantineScanConfig& cfg) {
  if (ratio.is_rational()) throw Error("rational ratio: use separation_bound instead");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw Error("epsilon must lie in (0, 1)");
  if (cfg.k_max < 1) throw Error("k_max must be positive");
  if (!(ratio.value() > 0)) throw Error("side ratio must be positive");

  const double tau = ratio.value();
  const double phase = phase_value(form.phase);
  DiophantineScanResult result;
  result.epsilon = cfg.epsilon;
  result.table.reserve(static_cast<size_t>(cfg.k_max));
  result.n_hat = std::numeric_limits<double>::infinity();
  for (long long k = 1; k <= cfg.k_max; ++k) {
    const double s = std::abs(std::sin(M_PI * k * tau + phase));
    const double scaled = s * std::pow(static_cast<double>(k), 1.0 + cfg.epsilon);
    result.table.push_back({k, s, scaled});
    if (scaled < result.n_hat) {
      result.n_hat = scaled;
      result.worst_k = k;
    }
  }
  return result;
}

// Per-mode view of the determinant against its predicted leading factor.
struct DenominatorReport {
  struct Row {
    int k = 0;
    double expected_delta4 = std::numeric_limits<double>::quiet_NaN();
    double mantissa = 0.0;
    double log_scale = 0.0;
    double delta5_estimate = std::numeric_limits<double>::quiet_NaN();
    bool resonant = false;
    double sigma_ratio = 0.0;
  };

  std::vector<Row> rows;
  bool tabulated = false;
  Phase phase = Phase::kZero;
  double m_hat = std::numeric_limits<double>::quiet_NaN();
  double min_abs_delta4 = std::numeric_limits<double>::quiet_NaN();
  double resonance_threshold = 0.0;  // singular-ratio cut actually applied
  std::vector<int> resonant_modes;
  std::vector<std::string> warnings;
};

namespace detail {

inline double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

}  // namespace detail

// Assembles every mode system k = 1..K (the matrix does not depend on the
// boundary data), records the scaled determinant and singular-value ratio,
// flags collapsed modes, and cross-checks the detections against the exact
// residue prediction when the ratio is rational. Detection and prediction
// are independent; disagreements become warnings, never reconciliations.
inline DenominatorReport analyze_denominators(const ProblemSpec& spec, int K) {
  if (const auto report = validate_problem(spec); !report.ok()) {
    throw Error("invalid problem: " + report.summary());
  }
  if (K < 1) throw Error("K must be at least 1");

  DenominatorReport out;
  const DenominatorForm form = expected_denominator(spec.order(), spec.schema);
  out.tabulated = form.tabulated;
  out.phase = form.phase;

  const std::vector<double> zero(spec.n, 0.0);
  std::vector<ScaledDeterminant> dets(static_cast<size_t>(K));
  std::vector<double> ratios(static_cast<size_t>(K));
  for (int k = 1; k <= K; ++k) {
    const RootGeometry geom = compute_root_geometry(spec.n, k, spec.l);
    const ScaledLinearSystem sys = assemble_mode_system(spec, geom, zero, zero);
    dets[k - 1] = scaled_determinant(sys);
    ratios[k - 1] = singular_value_ratio(sys);
  }

  const double median_ratio = detail::median(ratios);
  out.resonance_threshold =
      std::max(spec.tolerances.degeneracy_tol, kResonanceMedianFactor * median_ratio);

  const double tau = spec.ratio.value();
  out.rows.resize(static_cast<size_t>(K));
  std::vector<double> admissible_ratios;
  for (int k = 1; k <= K; ++k) {
    auto& row = out.rows[k - 1];
    row.k = k;
    row.mantissa = dets[k - 1].mantissa;
    row.log_scale = dets[k - 1].log_scale;
    row.sigma_ratio = ratios[k - 1];
    row.resonant = ratios[k - 1] < out.resonance_threshold;
    if (row.resonant) out.resonant_modes.push_back(k);
    if (form.tabulated) {
      row.expected_delta4 = std::sin(M_PI * k * tau + phase_value(form.phase));
      if (std::abs(row.expected_delta4) >= 0.3) {
        admissible_ratios.push_back(row.mantissa / row.expected_delta4);
      }
    }
  }

  if (form.tabulated) {
    out.m_hat = detail::median(admissible_ratios);
    double min_abs = std::numeric_limits<double>::infinity();
    for (const auto& row : out.rows) min_abs = std::min(min_abs, std::abs(row.expected_delta4));
    out.min_abs_delta4 = min_abs;
    if (std::isfinite(out.m_hat) && out.m_hat != 0.0) {
      for (auto& row : out.rows) {
        row.delta5_estimate = row.mantissa / out.m_hat - row.expected_delta4;
      }
    }
    // Cross-check: exact residue prediction vs. the determinant collapse.
    if (spec.ratio.is_rational()) {
      const Rational frac = spec.ratio.as_rational();
      for (const auto& row : out.rows) {
        const bool predicted = predicted_resonant(frac, form.phase, row.k);
        if (predicted != row.resonant) {
          out.warnings.push_back(
              "k=" + std::to_string(row.k) +
              (predicted ? ": predicted resonant, determinant did not collapse"
                         : ": determinant collapsed without a predicted resonance"));
        }
      }
    } else {
      for (const auto& row : out.rows) {
        if (row.resonant) {
          out.warnings.push_back("k=" + std::to_string(row.k) +
                                 ": determinant collapsed for an irrational ratio");
        }
      }
    }
  } else {
    out.warnings.push_back("schema not tabulated: no denominator form predicted");
  }
  return out;
}

inline std::vector<int> detect_resonant_modes(const ProblemSpec& spec, int K) {
  return analyze_denominators(spec, K).resonant_modes;
}

struct AsymptoticConstant {
  double m_hat = 0.0;
  double dispersion = 0.0;  // max relative deviation from the median
};

// Empirical constant M in  det = M * exp(scale) * (Delta4 + o(1)), estimated
// as the median of mantissa/Delta4 over modes with |Delta4| >= 0.3. The
// median resists stray near-resonant modes.
inline AsymptoticConstant asymptotic_constant(const ProblemSpec& spec, int k_lo, int k_hi) {
  if (const auto report = validate_problem(spec); !report.ok()) {
    throw Error("invalid problem: " + report.summary());
  }
  if (k_lo < 1 || k_hi < k_lo) throw Error("bad mode range");
  const DenominatorForm form = expected_denominator(spec.order(), spec.schema);
  if (!form.tabulated) throw Error("schema not tabulated: no denominator form to compare against");

  const double tau = spec.ratio.value();
  const std::vector<double> zero(spec.n, 0.0);
  std::vector<double> ratios;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double delta4 = std::sin(M_PI * k * tau + phase_value(form.phase));
    if (std::abs(delta4) < 0.3) continue;
    const RootGeometry geom = compute_root_geometry(spec.n, k, spec.l);
    const ScaledLinearSystem sys = assemble_mode_system(spec, geom, zero, zero);
    ratios.push_back(scaled_determinant(sys).mantissa / delta4);
  }
  if (ratios.empty()) throw Error("no admissible k: |Delta4| < 0.3 across the whole range");

  AsymptoticConstant out;
  out.m_hat = detail::median(ratios);
  for (double r : ratios) {
    out.dispersion = std::max(out.dispersion, std::abs(r - out.m_hat) / std::abs(out.m_hat));
  }
  return out;
}

}  // namespace mixbvp
