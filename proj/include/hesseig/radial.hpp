// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference eigenvalues on balls by radial ODE shooting. For a
// radial function the Hessian spectrum is (u'', u'/r, ..., u'/r); the shoot
// integrates outward from u(0) = -1 with a 4th-order scheme, solving
// f(u'', u'/r) = max(-Lambda u, delta) for u'' at every stage, and the
// eigenvalue is the Lambda at which u(R) crosses zero.

#ifndef HESSEIG_RADIAL_HPP
#define HESSEIG_RADIAL_HPP

#include "hesseig/operators.hpp"

namespace hesseig {

struct RadialProblem {
  HessianOperator op;
  double radius = 1.0;
  int mesh = 100000;  // r-integration step count, >= 1000
};

// eval_f on the radial spectrum (upp, s, ..., s).
double radial_f(const HessianOperator& op, double upp, double s);

// Solves radial_f(x, s) = rhs for x by monotone bisection (f is strictly
// increasing in its first argument). Throws OracleError on bracket failure.
double radial_solve_upp(const HessianOperator& op, double s, double rhs);

struct ShootResult {
  double u_end = 0.0;       // u(R)
  double up_end = 0.0;      // u'(R)
  bool stayed_negative = true;
};

ShootResult shoot_detailed(const RadialProblem& problem, double Lambda);

// u(R) for the outward shoot at parameter Lambda.
double shoot(const RadialProblem& problem, double Lambda);

struct OracleResult {
  double lambda1 = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Bisection on Lambda for u(R) = 0 to relative width 1e-8.
OracleResult oracle_lambda1_detailed(const RadialProblem& problem);
double oracle_lambda1(const RadialProblem& problem);

}  // namespace hesseig

#endif  // HESSEIG_RADIAL_HPP
