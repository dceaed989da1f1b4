// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// First-eigenpair extraction for F(D^2 u) = -Lambda u: continuation of the
// family F(D^2 u) = 1 - lambda u up to blow-up, reciprocal-norm
// extrapolation of Lambda_1, normalized inverse-power refinement of the
// eigenpair, and the bracket / uniqueness verifications.

#ifndef HESSEIG_EIGEN_SOLVER_HPP
#define HESSEIG_EIGEN_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hesseig/newton.hpp"
#include "hesseig/verify_types.hpp"

namespace hesseig {

struct TraceRecord {
  double lambda = 0.0;
  double sup_norm = 0.0;
  int newton_iterations = 0;
  double residual = 0.0;
};

struct ContinuationTrace {
  std::vector<TraceRecord> records;  // lambda strictly increasing
  bool reached_cap = false;
  bool monotone = false;  // sup-norms nondecreasing within 10 * tol
};

struct ContinuationSchedule {
  enum class Mode { adaptive, fixed };
  Mode mode = Mode::adaptive;
  std::vector<double> lambdas;  // fixed mode; must start at 0

  static ContinuationSchedule adaptive() { return {}; }
  static ContinuationSchedule fixed(std::vector<double> lams);
};

struct EigenResult {
  double lambda1 = 0.0;
  GridField eigenfunction;  // sup-norm 1, <= 0
  double residual = 0.0;    // sup of F(D^2 u1) + Lambda1 u1 away from the
                            // boundary ring (3h) and the flat tail |u|<=0.01
  double lower_bound = 0.0;  // 1 / ||u_0||_inf
  double upper_bound = 0.0;  // mu_1 / n
  int refine_iterations = 0;
  ContinuationTrace trace;
};

struct EigenOptions {
  NewtonOptions newton;
  double tol_eig = 1e-9;
  double blowup_cap = 1e4;
  int max_refine = 200;

  bool operator==(const EigenOptions&) const = default;
};

ContinuationTrace run_continuation(const HessianOperator& op, const Grid& grid,
                                   const ContinuationSchedule& schedule,
                                   double blowup_cap,
                                   const NewtonOptions& opts = {});

// Least-squares linear fit of 1/||u_lambda|| over the last 4-8 records with
// sup-norm > 10; returns the fitted root. Throws EstimationError when the
// trace shows no blow-up trend.
double estimate_lambda1(const ContinuationTrace& trace);

// Iterates: solve F(D^2 w) = max(-v, delta_reg), set Lambda <- 1/||w||,
// v <- Lambda w; a fixed point satisfies F(D^2 v) = -Lambda v by degree-1
// homogeneity. v0 must be admissible, <= 0, with sup-norm 1.
EigenResult inverse_power_refine(const HessianOperator& op, const Grid& grid,
                                 const GridField& v0, double Lambda0,
                                 double tol_eig,
                                 const EigenOptions& opts = {});

// Full pipeline: family solve at 0, continuation, extrapolation, refinement;
// fills the bracket bounds.
EigenResult solve_eigenproblem(const HessianOperator& op, const Grid& grid,
                               const EigenOptions& opts = {});

// Lemma-style bracket check: 1/||u0|| <= lambda1 <= mu_1/n * 1.02.
PropertyReport verify_bounds(const HessianOperator& op, const Grid& grid,
                             const EigenResult& result, const GridField& u0);

// Reruns the refinement from `trials` distinct admissible starts and checks
// that the eigenvalue spread stays within 10 * tol_eig * Lambda1 and the
// normalized eigenfunctions within 50 * tol_eig in sup norm.
PropertyReport verify_uniqueness(const HessianOperator& op, const Grid& grid,
                                 const EigenResult& result, int trials,
                                 std::uint64_t seed,
                                 const EigenOptions& opts = {});

}  // namespace hesseig

#endif  // HESSEIG_EIGEN_SOLVER_HPP
