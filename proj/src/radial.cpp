// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hesseig/errors.hpp"

namespace hesseig {

namespace {

constexpr double kDeltaReg = 1e-12;
constexpr double kBesselJ01 = 2.404825557695773;  // first zero of J_0

void radial_spectrum(const HessianOperator& op, double upp, double s,
                     std::array<double, 16>& buf) {
  buf[0] = upp;
  for (int i = 1; i < op.dim; ++i) buf[i] = s;
}

// Infimum of the admissible u'' range for tail value s: the cone constraints
// are affine increasing in the first spectrum entry, so the wall is the
// largest constraint root and f decreases to 0 there.
double cone_wall(const HessianOperator& op, double s) {
  const int n = op.dim;
  if (op.kind == OperatorKind::kHessian) {
    // sigma_j(upp, s, ..., s) = upp * e_{j-1}(tail) + e_j(tail), affine in upp
    std::vector<double> tail(n - 1, s), e;
    elementary_symmetric(tail, e);
    auto ej = [&](int j) { return j < static_cast<int>(e.size()) ? e[j] : 0.0; };
    double wall = -std::numeric_limits<double>::infinity();
    for (int j = 1; j <= op.index; ++j) {
      const double coeff = ej(j - 1);
      if (!(coeff > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      wall = std::max(wall, -ej(j) / coeff);
    }
    return wall;
  }
  // p-MA: sums containing u'' read upp + (p-1) s; the rest equal p*s and do
  // not depend on upp (must already be positive).
  if (op.index < n && !(s > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return -(op.index - 1) * s;
}

}  // namespace

double radial_f(const HessianOperator& op, double upp, double s) {
  if (op.dim > 16) throw ContractViolation("radial oracle supports n <= 16");
  std::array<double, 16> buf;
  radial_spectrum(op, upp, s, buf);
  return eval_f(op, std::span<const double>(buf.data(), op.dim));
}

double radial_solve_upp(const HessianOperator& op, double s, double rhs) {
  if (!(rhs > 0.0)) throw OracleError("radial solve needs a positive right-hand side");
  const double wall = cone_wall(op, s);
  if (!std::isfinite(wall)) {
    throw OracleError("radial spectrum left the admissible cone (tail value " +
                      std::to_string(s) + ")");
  }
  std::array<double, 16> buf;
  auto f_at = [&](double x) {
    radial_spectrum(op, x, s, buf);
    return eval_f(op, std::span<const double>(buf.data(), op.dim));
  };

  double lo = wall + 1e-14 * (1.0 + std::abs(wall));
  double hi = std::max({lo + 1.0, std::abs(s), 1.0});
  int grow = 0;
  while (f_at(hi) < rhs) {
    hi = wall + 2.0 * (hi - wall);
    if (++grow > 400) throw OracleError("radial bisection bracket expansion failed");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f_at(mid) < rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * (1.0 + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

ShootResult shoot_detailed(const RadialProblem& problem, double Lambda) {
  if (!(Lambda > 0.0)) throw ContractViolation("shooting parameter Lambda must be positive");
  if (problem.mesh < 1000) throw ContractViolation("radial mesh must be >= 1000");
  if (!(problem.radius > 0.0)) throw ContractViolation("radius must be positive");

  const HessianOperator& op = problem.op;
  const double R = problem.radius;
  const double dr = R / problem.mesh;

  // series start: u ~ -1 + (Lambda/2) r^2 near the isotropic center, since
  // f(a,...,a) = a and the right-hand side at r = 0 is Lambda
  double r = dr;
  double u = -1.0 + 0.5 * Lambda * dr * dr;
  double up = Lambda * dr;

  auto accel = [&](double rr, double uu, double uup) {
    const double rhs = std::max(-Lambda * uu, kDeltaReg);
    return radial_solve_upp(op, uup / rr, rhs);
  };

  bool negative = true;
  for (int step = 1; step < problem.mesh; ++step) {
    const double k1u = up, k1p = accel(r, u, up);
    const double k2u = up + 0.5 * dr * k1p,
                 k2p = accel(r + 0.5 * dr, u + 0.5 * dr * k1u, up + 0.5 * dr * k1p);
    const double k3u = up + 0.5 * dr * k2p,
                 k3p = accel(r + 0.5 * dr, u + 0.5 * dr * k2u, up + 0.5 * dr * k2p);
    const double k4u = up + dr * k3p,
                 k4p = accel(r + dr, u + dr * k3u, up + dr * k3p);
    u += dr / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    up += dr / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    r += dr;
    if (u >= 0.0) negative = false;
  }
  return {u, up, negative};
}

double shoot(const RadialProblem& problem, double Lambda) {
  return shoot_detailed(problem, Lambda).u_end;
}

OracleResult oracle_lambda1_detailed(const RadialProblem& problem) {
  const double mu1 = (kBesselJ01 / problem.radius) * (kBesselJ01 / problem.radius);
  double hi = 1.5 * mu1 / problem.op.dim;
  double lo = 1e-4 * hi;
  if (!(shoot(problem, lo) < 0.0)) {
    throw OracleError("no sign change: u(R) already nonnegative at the lower guess");
  }
  if (!(shoot(problem, hi) > 0.0)) {
    throw OracleError("no sign change in the scanned Lambda interval");
  }
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(problem, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), lo, hi};
}

double oracle_lambda1(const RadialProblem& problem) {
  return oracle_lambda1_detailed(problem).lambda1;
}

}  // namespace hesseig
