// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Damped Newton solver for F(D^2 u) = psi(x, u) with zero Dirichlet data on
// structured grids, the one-parameter family F(D^2 u) = 1 - lambda u, and
// homotopy continuation from a scaled family solution.

#ifndef HESSEIG_NEWTON_HPP
#define HESSEIG_NEWTON_HPP

#include <functional>
#include <optional>

#include "hesseig/errors.hpp"
#include "hesseig/grid.hpp"
#include "hesseig/operators.hpp"

namespace hesseig {

// Right-hand side psi(x, u) with its u-derivative. psi >= 0 on admissible
// iterates; psi_u bounded. The family kind is psi = 1 - lambda u.
struct RhsSpec {
  enum class Kind { family, custom };
  Kind kind = Kind::family;
  double lambda = 0.0;
  std::function<double(double, double, double)> psi;     // (x, y, u)
  std::function<double(double, double, double)> psi_u;   // (x, y, u)

  static RhsSpec family(double lam) {
    if (!(lam >= 0.0)) throw ContractViolation("family parameter lambda must be >= 0");
    RhsSpec r;
    r.kind = Kind::family;
    r.lambda = lam;
    return r;
  }
  static RhsSpec custom(std::function<double(double, double, double)> psi_fn,
                        std::function<double(double, double, double)> psi_u_fn) {
    RhsSpec r;
    r.kind = Kind::custom;
    r.psi = std::move(psi_fn);
    r.psi_u = std::move(psi_u_fn);
    return r;
  }

  double value(double x, double y, double u) const {
    return kind == Kind::family ? 1.0 - lambda * u : psi(x, y, u);
  }
  double derivative(double x, double y, double u) const {
    return kind == Kind::family ? -lambda : psi_u(x, y, u);
  }
};

struct NewtonOptions {
  double tol = 1e-9;          // residual sup-norm
  int max_iter = 60;
  double shrink = 0.5;        // damping factor
  double cone_margin = 1e-8;  // epsilon_cone
  double delta_reg = 1e-10;   // RHS clamp for degenerate right-hand sides

  bool operator==(const NewtonOptions&) const = default;
};

struct NewtonReport {
  int iterations = 0;
  double residual = 0.0;
  int damping_events = 0;
  int admissibility_backtracks = 0;
  bool converged = false;
};

// Solves F(D^2 u) = max(psi(x, u), delta_reg), u = 0 on the boundary.
// u_init must be admissible with margin at every interior node and <= 0.
// Throws ConvergenceError / AdmissibilityError on failure.
std::pair<GridField, NewtonReport> newton_solve(const HessianOperator& op,
                                                const Grid& grid,
                                                const RhsSpec& rhs,
                                                const GridField& u_init,
                                                const NewtonOptions& opts = {});

// Family instance F(D^2 u) = 1 - lambda u. Without a warm start the solve
// begins from a scaled admissible initializer; if the fresh solve stalls at
// large lambda it restarts via a short internal continuation from lambda=0.
std::pair<GridField, NewtonReport> solve_family(
    const HessianOperator& op, const Grid& grid, double lambda,
    const std::optional<GridField>& warm_start = std::nullopt,
    const NewtonOptions& opts = {});

// Continuity method for F(D^2 u) = psi(x, u): builds the subsolution
// u_N = N u_{lambda_pick}, then marches t over a uniform partition of [0,1]
// solving F(D^2 u_t) = t psi(x, u_t) + (1-t) F(D^2 u_N), warm-started.
// Requires psi_u >= -Lambda0 (caller asserts), lambda_pick > Lambda0 >= 0,
// and N > sup_x psi(x, 0).
GridField homotopy_solve(const HessianOperator& op, const Grid& grid,
                         const RhsSpec& psi, double Lambda0, double lambda_pick,
                         double N, int steps, const NewtonOptions& opts = {});

// Scaled admissible start for fresh solves: the barrier when its discrete
// Hessian clears the cone margin everywhere, otherwise a paraboloid pinned
// to 0 on the boundary; scaled by 1-homogeneity so F(D^2 u) >= psi_floor.
GridField admissible_initializer(const HessianOperator& op, const Grid& grid,
                                 double psi_floor, double cone_margin);

}  // namespace hesseig

#endif  // HESSEIG_NEWTON_HPP
