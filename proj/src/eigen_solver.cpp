// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hesseig/errors.hpp"
#include "hesseig/rng.hpp"

namespace hesseig {

ContinuationSchedule ContinuationSchedule::fixed(std::vector<double> lams) {
  if (lams.empty() || lams.front() != 0.0) {
    throw ContractViolation("fixed continuation schedule must start at lambda = 0");
  }
  for (std::size_t i = 1; i < lams.size(); ++i) {
    if (!(lams[i] > lams[i - 1])) {
      throw ContractViolation("continuation schedule must be strictly increasing");
    }
  }
  ContinuationSchedule s;
  s.mode = Mode::fixed;
  s.lambdas = std::move(lams);
  return s;
}

namespace {

struct ContinuationRun {
  ContinuationTrace trace;
  GridField u0;
  GridField u_last;
};

void finish_trace(ContinuationTrace& trace, double tol) {
  trace.monotone = true;
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    if (trace.records[i].sup_norm < trace.records[i - 1].sup_norm - 10.0 * tol) {
      trace.monotone = false;
      break;
    }
  }
}

ContinuationRun run_continuation_full(const HessianOperator& op, const Grid& grid,
                                      const ContinuationSchedule& schedule,
                                      double blowup_cap, const NewtonOptions& opts) {
  ContinuationRun run;
  GridField current(grid);
  try {
    auto [u0, rep0] = solve_family(op, grid, 0.0, std::nullopt, opts);
    current = u0;
    run.u0 = u0;
    run.trace.records.push_back({0.0, u0.sup_norm(), rep0.iterations, rep0.residual});
  } catch (const std::runtime_error& e) {
    throw ConvergenceError(std::string("continuation base case lambda=0 failed: ") +
                               e.what(),
                           0, 0.0);
  }

  if (schedule.mode == ContinuationSchedule::Mode::fixed) {
    for (std::size_t i = 1; i < schedule.lambdas.size(); ++i) {
      auto [u, rep] = solve_family(op, grid, schedule.lambdas[i], current, opts);
      current = std::move(u);
      run.trace.records.push_back({schedule.lambdas[i], current.sup_norm(),
                                   rep.iterations, rep.residual});
      if (current.sup_norm() > blowup_cap) {
        run.trace.reached_cap = true;
        break;
      }
    }
  } else {
    const double lower = 1.0 / run.u0.sup_norm();
    double lambda = 0.0;
    double step = 0.5 * lower;
    const double min_step = 1e-6 * lower;
    int fails_at_min = 0;
    NewtonOptions probe = opts;
    probe.max_iter = std::min(opts.max_iter, 25);
    while (fails_at_min < 2) {
      const double lambda_next = lambda + step;
      try {
        auto [u, rep] = solve_family(op, grid, lambda_next, current, probe);
        current = std::move(u);
        lambda = lambda_next;
        run.trace.records.push_back(
            {lambda, current.sup_norm(), rep.iterations, rep.residual});
        if (current.sup_norm() > blowup_cap) {
          run.trace.reached_cap = true;
          break;
        }
        if (rep.iterations <= 8) step *= 2.0;
      } catch (const std::runtime_error&) {
        step *= 0.5;
        if (step < min_step) {
          step = min_step;
          ++fails_at_min;
        }
      }
    }
  }

  finish_trace(run.trace, opts.tol);
  run.u_last = std::move(current);
  return run;
}

}  // namespace

ContinuationTrace run_continuation(const HessianOperator& op, const Grid& grid,
                                   const ContinuationSchedule& schedule,
                                   double blowup_cap, const NewtonOptions& opts) {
  return run_continuation_full(op, grid, schedule, blowup_cap, opts).trace;
}

double estimate_lambda1(const ContinuationTrace& trace) {
  std::vector<const TraceRecord*> usable;
  for (const auto& rec : trace.records) {
    if (rec.sup_norm > 10.0) usable.push_back(&rec);
  }
  if (usable.size() < 4) {
    throw EstimationError("need at least 4 records with sup-norm > 10, have " +
                          std::to_string(usable.size()));
  }
  const std::size_t take = std::min<std::size_t>(8, usable.size());
  usable.erase(usable.begin(), usable.end() - take);

  // least squares y = a + b lambda on y = 1/||u||
  double sl = 0, sy = 0, sll = 0, sly = 0;
  const double m = static_cast<double>(take);
  for (const auto* rec : usable) {
    const double y = 1.0 / rec->sup_norm;
    sl += rec->lambda;
    sy += y;
    sll += rec->lambda * rec->lambda;
    sly += rec->lambda * y;
  }
  const double denom = m * sll - sl * sl;
  const double b = (m * sly - sl * sy) / denom;
  const double a = (sy - b * sl) / m;
  if (!(b < 0.0)) {
    throw EstimationError("reciprocal norms show no blow-up trend (slope >= 0)");
  }
  const double root = -a / b;
  const double last = trace.records.back().lambda;
  if (!(root > last)) {
    throw EstimationError("extrapolated Lambda_1 does not exceed the last solved lambda");
  }
  return root;
}

namespace {

GridField normalized(const GridField& u) {
  GridField v = u;
  const double norm = u.sup_norm();
  if (!(norm > 0.0)) throw ContractViolation("cannot normalize the zero field");
  for (double& x : v.values) x /= norm;
  return v;
}

double eigen_residual(const HessianOperator& op, const Grid& grid,
                      const GridField& v, double lambda) {
  const double ring = 3.0 * std::max(grid.hx, grid.hy);
  double worst = 0.0;
  for (int node : grid.interior_nodes) {
    if (std::abs(v.values[node]) <= 0.01) continue;
    if (grid.boundary_distance(node) < ring) continue;
    const Eigen::Matrix2d H = hessian_at(v, node);
    double eig[2], vec[4];
    sym_eigen_2x2(H(0, 0), H(0, 1), H(1, 1), eig, vec);
    const double f = eval_f(op, std::span<const double>(eig, 2));
    worst = std::max(worst, std::abs(f + lambda * v.values[node]));
  }
  return worst;
}

}  // namespace

EigenResult inverse_power_refine(const HessianOperator& op, const Grid& grid,
                                 const GridField& v0, double Lambda0,
                                 double tol_eig, const EigenOptions& opts) {
  if (!(tol_eig > 0.0)) throw ContractViolation("tol_eig must be positive");
  if (std::abs(v0.sup_norm() - 1.0) > 1e-12) {
    throw ContractViolation("refinement start must have sup-norm 1");
  }
  if (v0.max_value() > 1e-14) {
    throw ContractViolation("refinement start must be <= 0");
  }
  if (!(Lambda0 > 0.0)) throw ContractViolation("Lambda0 must be positive");

  GridField v = v0;
  double lambda = Lambda0;
  std::optional<GridField> warm;
  EigenResult result;

  for (int it = 1; it <= opts.max_refine; ++it) {
    RhsSpec rhs = RhsSpec::custom(
        [&grid, &v, &opts](double x, double y, double) {
          const int i = static_cast<int>(std::lround((x - grid.x0) / grid.hx));
          const int j = static_cast<int>(std::lround((y - grid.y0) / grid.hy));
          return std::max(-v.values[grid.node_id(i, j)], opts.newton.delta_reg);
        },
        [](double, double, double) { return 0.0; });
    GridField init =
        warm ? *warm
             : admissible_initializer(op, grid, 1.0, opts.newton.cone_margin);
    GridField w;
    NewtonReport rep;
    try {
      std::tie(w, rep) = newton_solve(op, grid, rhs, init, opts.newton);
    } catch (const std::runtime_error& e) {
      throw ConvergenceError(
          std::string("inverse power step ") + std::to_string(it) +
              " failed: " + e.what(),
          it, lambda);
    }
    const double norm = w.sup_norm();
    const double lambda_next = 1.0 / norm;
    GridField v_next(grid);
    double dv = 0.0;
    for (int node : grid.interior_nodes) {
      v_next.values[node] = w.values[node] * lambda_next;
      dv = std::max(dv, std::abs(v_next.values[node] - v.values[node]));
    }
    const double dl = std::abs(lambda_next - lambda);
    v = std::move(v_next);
    lambda = lambda_next;
    warm = w;
    if (it >= 2 && dl <= tol_eig * lambda && dv <= 10.0 * tol_eig) {
      result.lambda1 = lambda;
      result.eigenfunction = v;
      result.refine_iterations = it;
      result.residual = eigen_residual(op, grid, v, lambda);
      return result;
    }
  }
  throw ConvergenceError("inverse power refinement hit the iteration cap (last Lambda=" +
                             std::to_string(lambda) + ")",
                         opts.max_refine, lambda);
}

EigenResult solve_eigenproblem(const HessianOperator& op, const Grid& grid,
                               const EigenOptions& opts) {
  ContinuationRun run = run_continuation_full(op, grid, ContinuationSchedule::adaptive(),
                                              opts.blowup_cap, opts.newton);
  const double lambda_est = estimate_lambda1(run.trace);
  GridField v0 = normalized(run.u_last);
  EigenResult result = inverse_power_refine(op, grid, v0, lambda_est, opts.tol_eig, opts);
  result.lower_bound = 1.0 / run.u0.sup_norm();
  result.upper_bound = laplace_mu1(grid) / op.dim;
  result.trace = std::move(run.trace);
  return result;
}

PropertyReport verify_bounds(const HessianOperator& op, const Grid& grid,
                             const EigenResult& result, const GridField& u0) {
  PropertyReport rep;
  rep.property = "eigenvalue-bracket";
  rep.operator_token = op.token();
  rep.samples = 1;
  const double lower = 1.0 / u0.sup_norm();
  const double upper = laplace_mu1(grid) / op.dim;
  const double m1 = result.lambda1 - lower;
  const double m2 = upper * 1.02 - result.lambda1;
  rep.worst_margin = std::min(m1, m2);
  rep.witness = {lower, result.lambda1, upper};
  rep.pass = rep.worst_margin >= 0.0;
  return rep;
}

namespace {

// Deterministic admissible start: admissible base plus a negative Gaussian
// bump, amplitude halved until the discrete Hessians clear the cone margin.
GridField randomized_start(const HessianOperator& op, const Grid& grid,
                           std::uint64_t seed, int trial,
                           const NewtonOptions& nopts) {
  Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(trial));
  GridField base = admissible_initializer(op, grid, 1.0, nopts.cone_margin);
  const DomainSpec& dom = grid.domain;
  double xc, yc, half;
  if (dom.shape == DomainSpec::Shape::rectangle) {
    xc = dom.width * rng.uniform(0.35, 0.65);
    yc = dom.height * rng.uniform(0.35, 0.65);
    half = 0.5 * std::min(dom.width, dom.height);
  } else {
    const double r = dom.radius * rng.uniform(0.0, 0.4);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    xc = r * std::cos(phi);
    yc = r * std::sin(phi);
    half = dom.radius;
  }
  const double sigma = half / 3.0;
  double amp = 0.3 * base.sup_norm();
  for (int halvings = 0; halvings < 60; ++halvings, amp *= 0.5) {
    GridField cand = base;
    for (int node : grid.interior_nodes) {
      const double dx = grid.x_of(node) - xc, dy = grid.y_of(node) - yc;
      cand.values[node] -= amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
    bool ok = true;
    for (int node : grid.interior_nodes) {
      const Eigen::Matrix2d H = hessian_at(cand, node);
      double eig[2], vec[4];
      sym_eigen_2x2(H(0, 0), H(0, 1), H(1, 1), eig, vec);
      if (!cone_contains(op, std::span<const double>(eig, 2), nopts.cone_margin)) {
        ok = false;
        break;
      }
    }
    if (ok) return normalized(cand);
  }
  throw AdmissibilityError("could not build an admissible randomized start");
}

}  // namespace

PropertyReport verify_uniqueness(const HessianOperator& op, const Grid& grid,
                                 const EigenResult& result, int trials,
                                 std::uint64_t seed, const EigenOptions& opts) {
  if (trials < 2) throw ContractViolation("uniqueness check needs at least 2 trials");
  PropertyReport rep;
  rep.property = "eigenpair-uniqueness";
  rep.operator_token = op.token();
  rep.seed = seed;
  rep.samples = trials;

  std::vector<double> lambdas = {result.lambda1};
  std::vector<GridField> funcs = {result.eigenfunction};
  for (int t = 0; t < trials; ++t) {
    try {
      GridField v0 = randomized_start(op, grid, seed, t, opts.newton);
      EigenResult r =
          inverse_power_refine(op, grid, v0, result.lambda1, opts.tol_eig, opts);
      lambdas.push_back(r.lambda1);
      funcs.push_back(r.eigenfunction);
    } catch (const std::runtime_error& e) {
      rep.pass = false;
      rep.note = std::string("inconclusive: trial ") + std::to_string(t) +
                 " did not converge: " + e.what();
      return rep;
    }
  }

  const double lam_ref = result.lambda1;
  double lam_spread = 0.0;
  for (double l : lambdas) {
    for (double l2 : lambdas) lam_spread = std::max(lam_spread, std::abs(l - l2));
  }
  double fun_dist = 0.0;
  for (std::size_t a = 0; a < funcs.size(); ++a) {
    for (std::size_t b = a + 1; b < funcs.size(); ++b) {
      double d = 0.0;
      for (int node : grid.interior_nodes) {
        d = std::max(d, std::abs(funcs[a].values[node] - funcs[b].values[node]));
      }
      fun_dist = std::max(fun_dist, d);
    }
  }
  const double m1 = 10.0 * opts.tol_eig * lam_ref - lam_spread;
  const double m2 = 50.0 * opts.tol_eig - fun_dist;
  rep.worst_margin = std::min(m1, m2);
  rep.witness = {lam_spread, fun_dist};
  rep.pass = rep.worst_margin >= 0.0;
  return rep;
}

}  // namespace hesseig
