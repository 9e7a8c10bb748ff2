#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mixbvp/problem.hpp"

namespace mixbvp {

// Built-in defaults, also documented in the README.
struct Defaults {
  static constexpr int kTruncation = 50;
  static constexpr int kGrid = 101;
  static constexpr double kEpsilon = 0.5;
  static constexpr long long kScanKMax = 10000;
  static constexpr double kDegeneracyTol = 1e-8;
  static constexpr double kResidualTol = 1e-6;
};

namespace detail {

inline Rational parse_rational(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return Rational::of(j.get<long long>(), 1);
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    return Rational::of(j.at("num").get<long long>(), j.at("den").get<long long>());
  }
  throw Error(std::string(what) + ": expected an integer or {num, den}");
}

inline RatioValue parse_ratio(const nlohmann::json& j) {
  if (j.is_number_integer()) return RatioValue::rational(j.get<long long>(), 1);
  if (j.is_number()) return RatioValue::approximate(j.get<double>());
  if (j.is_object()) {
    if (j.contains("surd")) {
      const auto& s = j.at("surd");
      return RatioValue::surd(s.contains("p") ? parse_rational(s.at("p"), "ratio.surd.p")
                                              : Rational{0, 1},
                              parse_rational(s.at("q"), "ratio.surd.q"),
                              s.at("d").get<long long>());
    }
    if (j.contains("num")) return RatioValue::rational(parse_rational(j, "ratio"));
  }
  throw Error("ratio: expected a number, {num, den} or {surd: {p, q, d}}");
}

inline BoundaryFunction parse_boundary_function(const nlohmann::json& j, double l) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "sine") {
    std::vector<std::pair<int, double>> terms;
    for (const auto& t : j.at("terms")) {
      terms.emplace_back(t.at(0).get<int>(), t.at(1).get<double>());
    }
    return SinePolynomial::of(std::move(terms), l);
  }
  if (type == "samples") {
    return SampledFunction::of(j.at("values").get<std::vector<double>>(), l);
  }
  throw Error("boundary function type must be \"sine\" or \"samples\"");
}

}  // namespace detail

inline ProblemSpec parse_problem(const nlohmann::json& j) {
  try {
    ProblemSpec spec;
    const int order = j.at("order").get<int>();
    if (order < 2 || order % 2 != 0) throw Error("order must be a positive even integer");
    spec.n = order / 2;
    spec.l = j.at("l").get<double>();
    spec.a = j.at("a").get<double>();
    spec.ratio = detail::parse_ratio(j.at("ratio"));
    const auto& s = j.at("schema");
    spec.schema.gamma = s.at("gamma").get<int>();
    spec.schema.delta = s.at("delta").get<int>();
    spec.schema.q = s.at("q").get<int>();
    spec.schema.chi = s.at("chi").get<int>();
    for (const auto& f : j.at("phi")) {
      spec.phi.push_back(detail::parse_boundary_function(f, spec.l));
    }
    for (const auto& f : j.at("psi")) {
      spec.psi.push_back(detail::parse_boundary_function(f, spec.l));
    }
    spec.truncation = j.value("K", Defaults::kTruncation);
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      spec.tolerances.degeneracy_tol = t.value("degeneracy_tol", Defaults::kDegeneracyTol);
      spec.tolerances.residual_tol = t.value("residual_tol", Defaults::kResidualTol);
    }
    if (j.contains("kernel_amplitudes")) {
      for (const auto& ka : j.at("kernel_amplitudes")) {
        spec.kernel_amplitudes.emplace_back(ka.at(0).get<int>(), ka.at(1).get<double>());
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config error: ") + e.what());
  }
}

inline ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("config parse error in " + path + ": " + e.what());
  }
  return parse_problem(j);
}

}  // namespace mixbvp
