#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "mixbvp/denominator.hpp"
#include "mixbvp/solver.hpp"

namespace mixbvp {

// Shortest round-trip decimal form. Reports are byte-identical across runs
// because every number goes through this one formatter.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  return out;
}

// JSON-safe scalar: non-finite values become null.
inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

}  // namespace detail

inline void write_denominator_csv(const std::string& path, const DenominatorReport& report) {
  auto out = detail::open_output(path);
  out << "k,expected_delta4,scaled_det_mantissa,log_scale,delta5_estimate,resonant_flag\n";
  for (const auto& row : report.rows) {
    out << row.k << ',' << format_double(row.expected_delta4) << ','
        << format_double(row.mantissa) << ',' << format_double(row.log_scale) << ','
        << format_double(row.delta5_estimate) << ',' << (row.resonant ? 1 : 0) << '\n';
  }
}

inline void write_solution_csv(const std::string& path, const SeriesSolution& sol, int nx,
                               int ny) {
  auto out = detail::open_output(path);
  out << "x,y,u\n";
  const double l = sol.spec.l, a = sol.spec.a;
  for (int iy = 0; iy < ny; ++iy) {
    const double y = -a + 2.0 * a * iy / (ny - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double x = l * ix / (nx - 1);
      out << format_double(x) << ',' << format_double(y) << ','
          << format_double(evaluate(sol, x, y, 0, 0)) << '\n';
    }
  }
}

inline void write_diophantine_csv(const std::string& path, const DiophantineScanResult& scan) {
  auto out = detail::open_output(path);
  out << "k,abs_sin,scaled\n";
  for (const auto& row : scan.table) {
    out << row.k << ',' << format_double(row.abs_sin) << ',' << format_double(row.scaled) << '\n';
  }
}

inline void write_growth_csv(const std::string& path, const std::vector<GrowthProbeRow>& rows) {
  auto out = detail::open_output(path);
  out << "k,log10_max_coefficient,degenerate\n";
  for (const auto& row : rows) {
    out << row.k << ',' << format_double(row.log10_max_coefficient) << ','
        << (row.degenerate ? 1 : 0) << '\n';
  }
}

// Residual and diagnostic summary with a fixed key order.
inline void write_residual_json(const std::string& path, const SeriesSolution& sol,
                                const ResidualReport& rep) {
  auto out = detail::open_output(path);
  auto array = [](const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += detail::json_number(v[i]);
    }
    return s + "]";
  };
  std::string resonant = "[";
  for (size_t i = 0; i < sol.resonant_modes.size(); ++i) {
    if (i) resonant += ",";
    resonant += std::to_string(sol.resonant_modes[i]);
  }
  resonant += "]";

  out << "{\n";
  out << "  \"K\": " << sol.truncation() << ",\n";
  out << "  \"pde_residual_sup\": " << detail::json_number(rep.pde_residual_sup) << ",\n";
  out << "  \"boundary_residual_sup\": " << detail::json_number(rep.boundary_residual_sup)
      << ",\n";
  out << "  \"gluing_residual_sup\": " << detail::json_number(rep.gluing_residual_sup) << ",\n";
  out << "  \"energy_sup\": " << detail::json_number(rep.energy_sup) << ",\n";
  out << "  \"edge_residuals\": " << array(rep.edge_residuals) << ",\n";
  out << "  \"lower_residuals\": " << array(rep.lower_residuals) << ",\n";
  out << "  \"upper_residuals\": " << array(rep.upper_residuals) << ",\n";
  out << "  \"resonant_modes\": " << resonant << ",\n";
  out << "  \"M_hat\": " << detail::json_number(sol.m_hat) << ",\n";
  out << "  \"resonance_threshold\": " << detail::json_number(sol.resonance_threshold) << "\n";
  out << "}\n";
}

}  // namespace mixbvp
