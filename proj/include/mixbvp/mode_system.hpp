#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mixbvp/root_geometry.hpp"
#include "mixbvp/spectral_basis.hpp"

namespace mixbvp {

// The 4n x 4n coupling system of one mode with all exponential growth
// factored out: boundary rows are pre-divided by lambda^order and every
// column by the largest exponential magnitude it attains over its active
// rows, so the matrix entries stay O(1) for arbitrarily large k. The
// determinant of the original system is mantissa * exp(sum of
// column_log_scales).
struct ScaledLinearSystem {
  int n = 0;
  int k = 0;
  double lambda = 0.0;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;                // divided by exp(rhs_log_scale)
  Eigen::VectorXd column_log_scales;  // natural-log column factors e_j
  double rhs_log_scale = 0.0;

  int size() const { return 4 * n; }
  double total_log_scale() const { return column_log_scales.sum(); }
};

namespace detail {

inline double trig(BasisFlavor flavor, double phase) {
  return flavor == BasisFlavor::kCos ? std::cos(phase) : std::sin(phase);
}

}  // namespace detail

// Assembles the mode-k system from per-mode data values phi_k[j], psi_k[j]
// (the Fourier coefficients of the boundary functions against X_k). Row
// layout: n rows at y = +a (j ascending), n rows at y = -a, then the 2n
// gluing rows (derivative orders 0..2n-1) at y = 0.
inline ScaledLinearSystem assemble_mode_system(const ProblemSpec& spec, const RootGeometry& geom,
                                               std::span<const double> phi_k,
                                               std::span<const double> psi_k) {
  const int n = spec.n;
  const int size = 4 * n;
  const double lam = geom.lambda;
  const double a = spec.a;

  ScaledLinearSystem sys;
  sys.n = n;
  sys.k = geom.k;
  sys.lambda = lam;
  sys.matrix = Eigen::MatrixXd::Zero(size, size);
  sys.rhs = Eigen::VectorXd::Zero(size);
  sys.column_log_scales = Eigen::VectorXd::Zero(size);

  // Growing upper columns peak at y = +a, growing lower columns at y = -a;
  // every column also appears in the gluing rows where its magnitude is 1.
  for (int c = 0; c < 2 * n; ++c) {
    sys.column_log_scales[c] = a * lam * std::max(geom.upper.terms[c].cos_omega, 0.0);
    sys.column_log_scales[2 * n + c] = a * lam * std::max(-geom.lower.terms[c].cos_omega, 0.0);
  }

  int row = 0;
  for (int j = 0; j < n; ++j, ++row) {  // y = +a
    const int t = spec.upper_order(j);
    for (int c = 0; c < 2 * n; ++c) {
      const BasisTerm& b = geom.upper.terms[c];
      const double mag = std::exp(lam * b.cos_omega * a - sys.column_log_scales[c]);
      sys.matrix(row, c) = mag * detail::trig(b.flavor, lam * b.sin_omega * a + t * b.omega);
    }
    sys.rhs[row] = std::pow(lam, -t) * psi_k[j];
  }
  for (int j = 0; j < n; ++j, ++row) {  // y = -a
    const int t = spec.lower_order(j);
    for (int c = 0; c < 2 * n; ++c) {
      const BasisTerm& b = geom.lower.terms[c];
      const double mag = std::exp(-lam * b.cos_omega * a - sys.column_log_scales[2 * n + c]);
      sys.matrix(row, 2 * n + c) =
          mag * detail::trig(b.flavor, -lam * b.sin_omega * a + t * b.omega);
    }
    sys.rhs[row] = std::pow(lam, -t) * phi_k[j];
  }
  for (int t = 0; t < 2 * n; ++t, ++row) {  // gluing at y = 0, upper minus lower
    for (int c = 0; c < 2 * n; ++c) {
      const BasisTerm& bu = geom.upper.terms[c];
      sys.matrix(row, c) =
          std::exp(-sys.column_log_scales[c]) * detail::trig(bu.flavor, t * bu.omega);
      const BasisTerm& bl = geom.lower.terms[c];
      sys.matrix(row, 2 * n + c) =
          -std::exp(-sys.column_log_scales[2 * n + c]) * detail::trig(bl.flavor, t * bl.omega);
    }
  }

  const double rhs_max = sys.rhs.cwiseAbs().maxCoeff();
  if (rhs_max > 0.0) {
    sys.rhs /= rhs_max;
    sys.rhs_log_scale = std::log(rhs_max);
  }
  return sys;
}

inline ScaledLinearSystem assemble_mode_system(const ProblemSpec& spec,
                                               const ModeCoefficients& coeffs, int k) {
  if (const auto report = validate_problem(spec); !report.ok()) {
    throw Error("invalid problem: " + report.summary());
  }
  if (k < 1 || k > coeffs.K) throw Error("mode index outside the coefficient table");
  const RootGeometry geom = compute_root_geometry(spec.n, k, spec.l);
  std::vector<double> phi_k(spec.n), psi_k(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    phi_k[j] = coeffs.phi_at(j, k);
    psi_k[j] = coeffs.psi_at(j, k);
  }
  return assemble_mode_system(spec, geom, phi_k, psi_k);
}

struct ScaledDeterminant {
  double mantissa = 0.0;
  double log_scale = 0.0;
};

// Determinant of the O(1) matrix by pivoted elimination, with the factored
// exponential scale reported separately as a log value.
inline ScaledDeterminant scaled_determinant(const ScaledLinearSystem& sys) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  return ScaledDeterminant{lu.determinant(), sys.total_log_scale()};
}

// Smallest / largest singular value of the scaled matrix.
inline double singular_value_ratio(const ScaledLinearSystem& sys) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  return smax > 0.0 ? sv(sv.size() - 1) / smax : 0.0;
}

// Coefficients of one mode. The coefficient vector is laid out as the upper
// block (2n values) followed by the lower block. Kernel vectors live in the
// scaled column coordinates and have unit norm.
struct ModeSolution {
  int k = 0;
  bool degenerate = false;
  std::vector<double> coefficients;
  std::vector<std::vector<double>> kernel_basis;
  double residual = 0.0;     // relative residual of the scaled system
  double sigma_ratio = 1.0;  // smallest/largest singular value

  std::span<const double> upper_coefficients() const {
    return std::span<const double>(coefficients).first(coefficients.size() / 2);
  }
  std::span<const double> lower_coefficients() const {
    return std::span<const double>(coefficients).last(coefficients.size() / 2);
  }
};

// Maps a vector from scaled column coordinates back to true coefficients.
inline std::vector<double> unscale_columns(const ScaledLinearSystem& sys,
                                           const Eigen::VectorXd& z, double extra_log = 0.0) {
  std::vector<double> out(static_cast<size_t>(sys.size()));
  for (int j = 0; j < sys.size(); ++j) {
    out[j] = z[j] * std::exp(extra_log - sys.column_log_scales[j]);
  }
  return out;
}

// Solves one mode. Degeneracy is decided by the smallest-singular-value
// ratio against degeneracy_tol; a degenerate system is solvable only when
// the right-hand side is orthogonal to the left null space, and then the
// minimum-norm particular solution (zero component along the kernel) is
// returned together with an orthonormal kernel basis.
inline ModeSolution solve_mode(const ScaledLinearSystem& sys, double degeneracy_tol) {
  if (!(degeneracy_tol > 0)) throw Error("degeneracy_tol must be positive");
  const int size = sys.size();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix,
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);

  ModeSolution sol;
  sol.k = sys.k;
  sol.sigma_ratio = smax > 0.0 ? sv(size - 1) / smax : 0.0;

  int rank = 0;
  while (rank < size && sv(rank) >= degeneracy_tol * smax) ++rank;
  sol.degenerate = rank < size;

  const double rhs_norm = sys.rhs.norm();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(size);
  if (!sol.degenerate) {
    if (rhs_norm > 0.0) z = svd.solve(sys.rhs);
  } else {
    for (int i = rank; i < size; ++i) {
      const Eigen::VectorXd v = svd.matrixV().col(i);
      sol.kernel_basis.emplace_back(v.data(), v.data() + size);
    }
    if (rhs_norm > 0.0) {
      double null_proj = 0.0;
      for (int i = rank; i < size; ++i) {
        const double c = svd.matrixU().col(i).dot(sys.rhs);
        null_proj += c * c;
      }
      if (std::sqrt(null_proj) / rhs_norm > 1e-8) {
        throw UnsolvableError(sys.k,
                              "nonorthogonal data at resonant mode k=" + std::to_string(sys.k));
      }
      for (int i = 0; i < rank; ++i) {
        z += (svd.matrixU().col(i).dot(sys.rhs) / sv(i)) * svd.matrixV().col(i);
      }
    }
  }
  sol.residual = rhs_norm > 0.0 ? (sys.matrix * z - sys.rhs).norm() / rhs_norm : 0.0;
  sol.coefficients = unscale_columns(sys, z, sys.rhs_log_scale);
  return sol;
}

}  // namespace mixbvp
