#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mixbvp/error.hpp"

namespace mixbvp {

enum class Side { kUpper, kLower };
enum class BasisFlavor { kCos, kSin };

// One real fundamental solution of u^(2n) = sign * lambda^(2n) * u, written as
//   e^{lambda*cos(omega)*y} * {cos, sin}(lambda*sin(omega)*y + t*omega)
// for the t-th derivative divided by lambda^t. Real characteristic roots
// (omega = 0 or pi) carry only the cos flavor; the sin partner vanishes.
struct BasisTerm {
  double omega = 0.0;
  double cos_omega = 1.0;  // snapped exactly at omega in {0, pi/2, pi}
  double sin_omega = 0.0;
  BasisFlavor flavor = BasisFlavor::kCos;
};

// Fundamental system for one half of the rectangle. sign_exponent = +1 means
// the characteristic equation r^{2n} = +lambda^{2n} (angles pi*s/n, includes
// e^{+-lambda*y}); -1 means r^{2n} = -lambda^{2n} (odd half-angles
// pi*(1+2p)/(2n), conjugate pairs only).
struct SideBasis {
  int sign_exponent = 1;
  std::vector<BasisTerm> terms;  // 2n entries in a fixed layout
};

namespace detail {

inline BasisTerm make_basis_term(long long num, long long den, BasisFlavor flavor) {
  BasisTerm t;
  t.omega = M_PI * static_cast<double>(num) / static_cast<double>(den);
  t.flavor = flavor;
  if (num == 0) {
    t.cos_omega = 1.0;
    t.sin_omega = 0.0;
  } else if (2 * num == den) {
    t.cos_omega = 0.0;  // the neutral pair cos(lambda*y), sin(lambda*y)
    t.sin_omega = 1.0;
  } else if (num == den) {
    t.cos_omega = -1.0;
    t.sin_omega = 0.0;
  } else {
    t.cos_omega = std::cos(t.omega);
    t.sin_omega = std::sin(t.omega);
  }
  return t;
}

inline SideBasis make_side_basis(int n, int sign_exponent) {
  SideBasis basis;
  basis.sign_exponent = sign_exponent;
  basis.terms.reserve(2 * n);
  if (sign_exponent > 0) {
    basis.terms.push_back(make_basis_term(0, 1, BasisFlavor::kCos));  // e^{lambda*y}
    for (int s = 1; s < n; ++s) {
      basis.terms.push_back(make_basis_term(s, n, BasisFlavor::kCos));
      basis.terms.push_back(make_basis_term(s, n, BasisFlavor::kSin));
    }
    basis.terms.push_back(make_basis_term(1, 1, BasisFlavor::kCos));  // e^{-lambda*y}
  } else {
    for (int p = 0; p < n; ++p) {
      basis.terms.push_back(make_basis_term(1 + 2 * p, 2 * n, BasisFlavor::kCos));
      basis.terms.push_back(make_basis_term(1 + 2 * p, 2 * n, BasisFlavor::kSin));
    }
  }
  return basis;
}

}  // namespace detail

// Characteristic-root layout of mode k: the upper half obeys
// u^(2n) + (-1)^n lambda^{2n} u = 0, the lower half the opposite sign.
struct RootGeometry {
  int n = 0;
  int k = 0;
  double l = 1.0;
  double lambda = 0.0;  // pi*k/l
  SideBasis upper;
  SideBasis lower;

  const SideBasis& side(Side s) const { return s == Side::kUpper ? upper : lower; }

  // Distinct pair angles in layout order (even n upper: theta_p; lower:
  // sigma_s including the real-root angles 0 and pi).
  static std::vector<double> distinct_angles(const SideBasis& basis) {
    std::vector<double> out;
    for (const auto& t : basis.terms) {
      if (out.empty() || t.omega != out.back()) out.push_back(t.omega);
    }
    return out;
  }
};

inline RootGeometry compute_root_geometry(int n, int k, double l) {
  if (n < 1) throw Error("n must be a positive integer");
  if (k < 1) throw Error("mode index must be positive");
  if (!(l > 0)) throw Error("interval length must be positive");
  RootGeometry g;
  g.n = n;
  g.k = k;
  g.l = l;
  g.lambda = M_PI * k / l;
  const int sign_upper = (n % 2 == 0) ? -1 : +1;
  g.upper = detail::make_side_basis(n, sign_upper);
  g.lower = detail::make_side_basis(n, -sign_upper);
  return g;
}

// t-th derivative of basis function `index` at y (with the lambda^t factor).
inline double basis_value(const RootGeometry& geom, Side side, int index, int t, double y) {
  if (index < 0 || index >= 2 * geom.n) throw Error("basis index out of range");
  if (t < 0 || t > 2 * geom.n) throw Error("derivative order exceeds 2n");
  if (side == Side::kUpper && y < 0.0) throw Error("upper basis evaluated at negative y");
  if (side == Side::kLower && y > 0.0) throw Error("lower basis evaluated at positive y");
  const BasisTerm& b = geom.side(side).terms[index];
  const double lam = geom.lambda;
  const double phase = lam * b.sin_omega * y + t * b.omega;
  const double trig = (b.flavor == BasisFlavor::kCos) ? std::cos(phase) : std::sin(phase);
  return std::pow(lam, t) * std::exp(lam * b.cos_omega * y) * trig;
}

}  // namespace mixbvp
