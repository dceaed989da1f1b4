// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/newton.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "hesseig/errors.hpp"

namespace hesseig {

namespace {

using SparseMat = Eigen::SparseMatrix<double>;

struct NodeRhs {
  std::function<double(int, double)> value;       // (node, u) -> psi
  std::function<double(int, double)> derivative;  // (node, u) -> dpsi/du
};

NodeRhs bind_rhs(const Grid& grid, const RhsSpec& rhs) {
  NodeRhs r;
  if (rhs.kind == RhsSpec::Kind::family) {
    const double lam = rhs.lambda;
    r.value = [lam](int, double u) { return 1.0 - lam * u; };
    r.derivative = [lam](int, double) { return -lam; };
  } else {
    r.value = [&grid, &rhs](int node, double u) {
      return rhs.psi(grid.x_of(node), grid.y_of(node), u);
    };
    r.derivative = [&grid, &rhs](int node, double u) {
      return rhs.psi_u(grid.x_of(node), grid.y_of(node), u);
    };
  }
  return r;
}

struct Workspace {
  const HessianOperator* op;
  const Grid* grid;
  std::vector<HessianStencil> stencils;  // per interior node
  std::vector<double> slack_buf;

  explicit Workspace(const HessianOperator& o, const Grid& g) : op(&o), grid(&g) {
    stencils.reserve(g.num_interior());
    for (int node : g.interior_nodes) stencils.push_back(hessian_stencil(g, node));
  }

  Eigen::Matrix2d hessian(const Eigen::VectorXd& u, int row) const {
    const Grid& g = *grid;
    const HessianStencil& st = stencils[row];
    const double up = u[row];
    double uxx = st.center[0] * up, uyy = st.center[1] * up, uxy = st.center[2] * up;
    for (int d = 0; d < 8; ++d) {
      const int t = st.target[d];
      if (t < 0) continue;
      const int col = g.interior_index[t];
      if (col < 0) continue;  // boundary node: Dirichlet 0
      const double v = u[col];
      uxx += st.weight[d][0] * v;
      uyy += st.weight[d][1] * v;
      uxy += st.weight[d][2] * v;
    }
    Eigen::Matrix2d H;
    H << uxx, uxy, uxy, uyy;
    return H;
  }
};

struct IterateEval {
  Eigen::VectorXd residual;
  std::vector<double> rhs;              // clamped psi per node
  std::vector<Eigen::Vector2d> lam;     // spectrum per node
  std::vector<Eigen::Matrix2d> qvec;    // eigenvectors per node
  double res_norm = 0.0;
  bool admissible = false;
};

// Ellipticity degenerates together with the right-hand side near the
// boundary of degenerate (eigen-refinement) solves, so the cone margin
// requirement scales with rhs^k there; for nondegenerate solves
// (rhs >= 1) it is the plain absolute margin.
double node_margin(double base, double rhs, int index) {
  return base * std::min(1.0, std::pow(rhs, index));
}

bool evaluate(const Workspace& ws, const NodeRhs& rhs, const NewtonOptions& opts,
              double margin_base, const Eigen::VectorXd& u, IterateEval& ev) {
  const Grid& g = *ws.grid;
  const int n = g.num_interior();
  ev.residual.resize(n);
  ev.rhs.resize(n);
  ev.lam.resize(n);
  ev.qvec.resize(n);
  ev.res_norm = 0.0;
  ev.admissible = true;
  for (int row = 0; row < n; ++row) {
    const int node = g.interior_nodes[row];
    const Eigen::Matrix2d H = ws.hessian(u, row);
    double eig[2], vec[4];
    sym_eigen_2x2(H(0, 0), H(0, 1), H(1, 1), eig, vec);
    ev.lam[row] << eig[0], eig[1];
    ev.qvec[row] << vec[0], vec[2], vec[1], vec[3];
    const double psi = rhs.value(node, u[row]);
    const double r = std::max(psi, opts.delta_reg);
    ev.rhs[row] = r;
    const double m = node_margin(margin_base, r, ws.op->index);
    if (!cone_contains(*ws.op, std::span<const double>(eig, 2), m)) {
      ev.admissible = false;
      return false;
    }
    const double f = eval_f(*ws.op, std::span<const double>(eig, 2));
    ev.residual[row] = f - r;
    ev.res_norm = std::max(ev.res_norm, std::abs(ev.residual[row]));
  }
  return true;
}

std::pair<GridField, NewtonReport> newton_core(const HessianOperator& op,
                                               const Grid& grid, const NodeRhs& rhs,
                                               const GridField& u_init,
                                               const NewtonOptions& opts) {
  if (op.dim != 2) {
    throw ContractViolation("grid solver supports n = 2 operators only");
  }
  if (u_init.grid != &grid) {
    throw ContractViolation("initial field does not live on the solver grid");
  }
  Workspace ws(op, grid);
  const int n = grid.num_interior();

  Eigen::VectorXd u(n);
  for (int row = 0; row < n; ++row) {
    u[row] = u_init.values[grid.interior_nodes[row]];
    if (u[row] > 1e-14) {
      throw ContractViolation("initial iterate must be <= 0");
    }
  }

  IterateEval cur;
  if (!evaluate(ws, rhs, opts, opts.cone_margin, u, cur)) {
    throw ContractViolation(
        "initial iterate is not admissible with the requested cone margin");
  }

  NewtonReport report;
  Eigen::SparseLU<SparseMat> lu;
  bool pattern_ready = false;
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> grad(2);

  while (cur.res_norm > opts.tol) {
    if (report.iterations >= opts.max_iter) {
      report.residual = cur.res_norm;
      throw ConvergenceError("Newton did not converge in " +
                                 std::to_string(opts.max_iter) + " iterations",
                             report.iterations, cur.res_norm);
    }
    // Assemble J = dF/du - psi_u I from the linearization coefficients at
    // the current iterate.
    trip.clear();
    for (int row = 0; row < n; ++row) {
      const int node = grid.interior_nodes[row];
      grad_f(op, std::span<const double>(cur.lam[row].data(), 2),
             std::span<double>(grad.data(), 2));
      const Eigen::Matrix2d& q = cur.qvec[row];
      const double dfxx = grad[0] * q(0, 0) * q(0, 0) + grad[1] * q(0, 1) * q(0, 1);
      const double dfyy = grad[0] * q(1, 0) * q(1, 0) + grad[1] * q(1, 1) * q(1, 1);
      const double dfxy = grad[0] * q(0, 0) * q(1, 0) + grad[1] * q(0, 1) * q(1, 1);
      const HessianStencil& st = ws.stencils[row];
      auto weight_dot = [&](const std::array<double, 3>& w) {
        return dfxx * w[0] + dfyy * w[1] + 2.0 * dfxy * w[2];
      };
      double diag = weight_dot(st.center);
      if (rhs.value(node, u[row]) > opts.delta_reg) {
        diag -= rhs.derivative(node, u[row]);
      }
      trip.emplace_back(row, row, diag);
      for (int d = 0; d < 8; ++d) {
        const int t = st.target[d];
        if (t < 0) continue;
        const int col = grid.interior_index[t];
        if (col < 0) continue;
        trip.emplace_back(row, col, weight_dot(st.weight[d]));
      }
    }
    SparseMat J(n, n);
    J.setFromTriplets(trip.begin(), trip.end());
    J.makeCompressed();
    if (!pattern_ready) {
      lu.analyzePattern(J);
      pattern_ready = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) {
      throw ConvergenceError("Newton linear system is singular",
                             report.iterations, cur.res_norm);
    }
    const Eigen::VectorXd delta = lu.solve(-cur.residual);

    double alpha = 1.0;
    IterateEval trial;
    bool accepted = false;
    bool last_fail_admissibility = false;
    while (alpha >= 1e-12) {
      const Eigen::VectorXd u_trial = u + alpha * delta;
      const bool in_cone =
          evaluate(ws, rhs, opts, 0.5 * opts.cone_margin, u_trial, trial);
      if (in_cone && trial.res_norm < cur.res_norm) {
        u = u_trial;
        cur = trial;
        accepted = true;
        break;
      }
      if (!in_cone) {
        ++report.admissibility_backtracks;
        last_fail_admissibility = true;
      } else {
        last_fail_admissibility = false;
      }
      alpha *= opts.shrink;
      ++report.damping_events;
    }
    if (!accepted) {
      report.residual = cur.res_norm;
      if (last_fail_admissibility) {
        throw AdmissibilityError(
            "Newton step left the admissible cone and damping could not recover");
      }
      throw ConvergenceError("Newton line search stagnated", report.iterations,
                             cur.res_norm);
    }
    ++report.iterations;
  }

  report.residual = cur.res_norm;
  report.converged = true;

  if (u.size() > 0 && u.maxCoeff() > 10.0 * opts.tol) {
    throw ConvergenceError(
        "accepted iterate violates the sign constraint u <= 0 (no admissible "
        "solution at this parameter)",
        report.iterations, u.maxCoeff());
  }

  GridField out(grid);
  for (int row = 0; row < n; ++row) out.values[grid.interior_nodes[row]] = u[row];
  return {std::move(out), report};
}

GridField paraboloid_base(const Grid& grid) {
  const DomainSpec& dom = grid.domain;
  double xc, yc, rmax2;
  if (dom.shape == DomainSpec::Shape::rectangle) {
    xc = 0.5 * dom.width;
    yc = 0.5 * dom.height;
    rmax2 = 0.25 * (dom.width * dom.width + dom.height * dom.height);
  } else {
    xc = yc = 0.0;
    rmax2 = dom.radius * dom.radius;
  }
  const double rho2 = 2.0 * rmax2;
  GridField b(grid);
  for (int node : grid.interior_nodes) {
    const double dx = grid.x_of(node) - xc, dy = grid.y_of(node) - yc;
    b.values[node] = 0.5 * (dx * dx + dy * dy - rho2);
  }
  return b;
}

// min of F(D^2 b) over interior nodes; admissible=false if any node misses
// the cone margin.
struct BaseEval {
  bool admissible = false;
  double min_F = 0.0;
};

BaseEval eval_base(const HessianOperator& op, const Grid& grid, const GridField& b,
                   double margin) {
  Workspace ws(op, grid);
  Eigen::VectorXd u(grid.num_interior());
  for (int row = 0; row < grid.num_interior(); ++row) {
    u[row] = b.values[grid.interior_nodes[row]];
  }
  BaseEval out;
  out.min_F = std::numeric_limits<double>::infinity();
  for (int row = 0; row < grid.num_interior(); ++row) {
    const Eigen::Matrix2d H = ws.hessian(u, row);
    double eig[2], vec[4];
    sym_eigen_2x2(H(0, 0), H(0, 1), H(1, 1), eig, vec);
    if (!cone_contains(op, std::span<const double>(eig, 2), margin)) {
      return out;
    }
    out.min_F = std::min(out.min_F, eval_f(op, std::span<const double>(eig, 2)));
  }
  out.admissible = true;
  return out;
}

}  // namespace

GridField admissible_initializer(const HessianOperator& op, const Grid& grid,
                                 double psi_floor, double cone_margin) {
  const double R_barrier = 8.0 / grid.domain.diameter();
  GridField candidates[2] = {barrier_subsolution(grid, R_barrier),
                             paraboloid_base(grid)};
  for (GridField& base : candidates) {
    for (int node = 0; node < grid.num_nodes(); ++node) {
      if (!grid.is_interior(node)) base.values[node] = 0.0;
    }
    const BaseEval ev = eval_base(op, grid, base, cone_margin);
    if (!ev.admissible || !(ev.min_F > 0.0)) continue;
    const double c = std::max(1.0, 1.05 * psi_floor / ev.min_F);
    GridField scaled(grid);
    for (int node : grid.interior_nodes) scaled.values[node] = c * base.values[node];
    if (eval_base(op, grid, scaled, cone_margin).admissible) return scaled;
  }
  throw AdmissibilityError("no admissible initializer found for " + op.token() +
                           " on " + grid.domain.token());
}

std::pair<GridField, NewtonReport> newton_solve(const HessianOperator& op,
                                                const Grid& grid,
                                                const RhsSpec& rhs,
                                                const GridField& u_init,
                                                const NewtonOptions& opts) {
  return newton_core(op, grid, bind_rhs(grid, rhs), u_init, opts);
}

namespace {

std::pair<GridField, NewtonReport> solve_family_fresh(const HessianOperator& op,
                                                      const Grid& grid,
                                                      double lambda,
                                                      const NewtonOptions& opts) {
  // Scale the admissible base so F(D^2 u) >= 1 - lambda u pointwise when the
  // subsolution scaling is feasible; otherwise fall back to a heuristic
  // floor and let damping (or the caller's continuation) do the rest.
  GridField base = admissible_initializer(op, grid, 1.0, opts.cone_margin);
  Workspace ws(op, grid);
  Eigen::VectorXd u(grid.num_interior());
  for (int row = 0; row < grid.num_interior(); ++row) {
    u[row] = base.values[grid.interior_nodes[row]];
  }
  double denom = std::numeric_limits<double>::infinity();
  for (int row = 0; row < grid.num_interior(); ++row) {
    const Eigen::Matrix2d H = ws.hessian(u, row);
    double eig[2], vec[4];
    sym_eigen_2x2(H(0, 0), H(0, 1), H(1, 1), eig, vec);
    const double f = eval_f(op, std::span<const double>(eig, 2));
    denom = std::min(denom, f - lambda * std::abs(u[row]));
  }
  double c = 1.0;
  if (denom > 1e-6) {
    c = std::max(1.0, 1.05 / denom);
  } else {
    c = 1.0 + 0.5 * lambda * base.sup_norm();
  }
  GridField init(grid);
  for (int node : grid.interior_nodes) init.values[node] = c * base.values[node];
  return newton_solve(op, grid, RhsSpec::family(lambda), init, opts);
}

}  // namespace

std::pair<GridField, NewtonReport> solve_family(
    const HessianOperator& op, const Grid& grid, double lambda,
    const std::optional<GridField>& warm_start, const NewtonOptions& opts) {
  if (!(lambda >= 0.0)) throw ContractViolation("family parameter lambda must be >= 0");
  if (warm_start) {
    return newton_solve(op, grid, RhsSpec::family(lambda), *warm_start, opts);
  }
  try {
    return solve_family_fresh(op, grid, lambda, opts);
  } catch (const std::runtime_error&) {
    if (lambda == 0.0) throw;
  }
  // Fresh solve stalled at this lambda: continue from lambda = 0 in a few
  // warm-started stages.
  for (int steps : {4, 16, 64}) {
    try {
      auto cur = solve_family_fresh(op, grid, 0.0, opts);
      for (int j = 1; j <= steps; ++j) {
        const double lam_j = lambda * static_cast<double>(j) / steps;
        cur = newton_solve(op, grid, RhsSpec::family(lam_j), cur.first, opts);
      }
      return cur;
    } catch (const std::runtime_error&) {
      if (steps == 64) throw;
    }
  }
  throw ConvergenceError("family solve failed", 0, 0.0);  // unreachable
}

GridField homotopy_solve(const HessianOperator& op, const Grid& grid,
                         const RhsSpec& psi, double Lambda0, double lambda_pick,
                         double N, int steps, const NewtonOptions& opts) {
  if (!(Lambda0 >= 0.0) || !(lambda_pick > Lambda0)) {
    throw ContractViolation("homotopy requires lambda_pick > Lambda0 >= 0");
  }
  if (steps < 1) throw ContractViolation("homotopy needs at least one step");
  double sup_psi0 = 0.0;
  for (int node : grid.interior_nodes) {
    sup_psi0 = std::max(sup_psi0, psi.value(grid.x_of(node), grid.y_of(node), 0.0));
  }
  if (!(N > sup_psi0)) {
    throw ContractViolation("homotopy scale N must exceed sup psi(x, 0)");
  }

  auto [u_pick, rep] = solve_family(op, grid, lambda_pick, std::nullopt, opts);
  GridField u_N(grid);
  std::vector<double> rhs0(grid.num_interior());
  for (int row = 0; row < grid.num_interior(); ++row) {
    const int node = grid.interior_nodes[row];
    u_N.values[node] = N * u_pick.values[node];
    rhs0[row] = N - lambda_pick * u_N.values[node];
  }

  GridField current = u_N;
  double last_good_t = 0.0;
  for (int j = 1; j <= steps; ++j) {
    const double t = static_cast<double>(j) / steps;
    NodeRhs blend;
    blend.value = [&grid, &psi, &rhs0, t](int node, double u) {
      const int row = grid.interior_index[node];
      return t * psi.value(grid.x_of(node), grid.y_of(node), u) +
             (1.0 - t) * rhs0[row];
    };
    blend.derivative = [&grid, &psi, t](int node, double u) {
      return t * psi.derivative(grid.x_of(node), grid.y_of(node), u);
    };
    try {
      auto [u_t, rep_t] = newton_core(op, grid, blend, current, opts);
      current = std::move(u_t);
      last_good_t = t;
    } catch (const std::runtime_error& e) {
      throw HomotopyError("homotopy stage t=" + std::to_string(t) +
                              " failed: " + e.what(),
                          last_good_t);
    }
  }
  return current;
}

}  // namespace hesseig
