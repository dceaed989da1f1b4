// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hesseig/config.hpp"
#include "hesseig/eigen_solver.hpp"
#include "hesseig/errors.hpp"
#include "hesseig/json_writer.hpp"
#include "hesseig/radial.hpp"
#include "hesseig/verify.hpp"

namespace hesseig {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_text(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigurationError("cannot open '" + path + "' for writing");
  out << text;
}

JsonValue config_json(const RunConfig& cfg) {
  JsonValue solver = JsonValue::object();
  solver.set("tol", cfg.solver.tol)
      .set("max_iter", cfg.solver.max_iter)
      .set("shrink", cfg.solver.shrink)
      .set("cone_margin", cfg.solver.cone_margin)
      .set("delta_reg", cfg.solver.delta_reg);
  JsonValue eigen = JsonValue::object();
  eigen.set("tol_eig", cfg.tol_eig)
      .set("blowup_cap", cfg.blowup_cap)
      .set("max_refine", cfg.max_refine)
      .set("trials", cfg.trials);
  JsonValue run = JsonValue::object();
  run.set("seed", static_cast<long long>(cfg.seed)).set("output_dir", cfg.output_dir);
  JsonValue root = JsonValue::object();
  root.set("operator", cfg.op.token())
      .set("domain", cfg.domain.token())
      .set("h", cfg.h)
      .set("solver", std::move(solver))
      .set("eigen", std::move(eigen))
      .set("run", std::move(run));
  return root;
}

JsonValue report_json(const PropertyReport& rep) {
  JsonValue w = JsonValue::array();
  for (double v : rep.witness) w.push(v);
  JsonValue j = JsonValue::object();
  j.set("property", rep.property)
      .set("operator", rep.operator_token)
      .set("seed", static_cast<long long>(rep.seed))
      .set("samples", rep.samples)
      .set("worst_margin", rep.worst_margin)
      .set("witness", std::move(w))
      .set("pass", rep.pass);
  if (!rep.note.empty()) j.set("note", rep.note);
  return j;
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

int cmd_verify(const std::string& token, std::uint64_t seed, int samples,
               const std::string& out_dir) {
  const HessianOperator op = HessianOperator::parse(token);
  const SampleCloud interior = sample_cone(op, samples, seed, SampleStrategy::interior);
  const SampleCloud approach =
      sample_cone(op, samples, seed + 1, SampleStrategy::boundary_approach);

  // tau cloud restricted to the positive orthant for the increment check
  const HessianOperator positive = HessianOperator::k_hessian(op.dim, op.dim);
  const int pair_side = std::min(samples, 200);
  const SampleCloud lam_cloud = sample_cone(op, pair_side, seed + 2, SampleStrategy::interior);
  const SampleCloud tau_cloud =
      sample_cone(positive, pair_side, seed + 3, SampleStrategy::interior);

  std::vector<PropertyReport> reports;
  reports.push_back(check_condition_T(op, interior));
  reports.push_back(check_condition_T(op, approach));
  reports.back().property += "(boundary-approach)";
  reports.push_back(check_urbas(op, interior));
  reports.push_back(check_concavity(op, interior));
  reports.push_back(check_garding_equivalence(op, lam_cloud, tau_cloud));

  JsonValue arr = JsonValue::array();
  bool all_pass = true;
  for (const auto& rep : reports) {
    JsonValue j = report_json(rep);
    std::cout << j.dump(0) << "\n";
    arr.push(std::move(j));
    all_pass = all_pass && rep.pass;
  }
  write_text(out_path(out_dir, "report.json"), arr.dump() + "\n");
  return all_pass ? 0 : 1;
}

int cmd_solve(const std::string& config_path, double lambda_override, bool has_lambda,
              bool dump_field, const std::string& out_override) {
  const Clock::time_point start = Clock::now();
  RunConfig cfg = load_config_file(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  const double lambda = has_lambda ? lambda_override : 0.0;

  const Grid grid = build_grid(cfg.domain, cfg.h);
  auto [u, rep] = solve_family(cfg.op, grid, lambda, std::nullopt, cfg.solver);

  JsonValue j = JsonValue::object();
  j.set("operator", cfg.op.token())
      .set("domain", cfg.domain.token())
      .set("h", grid.hx)
      .set("lambda", lambda)
      .set("iterations", rep.iterations)
      .set("residual", rep.residual)
      .set("sup_norm", u.sup_norm())
      .set("config", config_json(cfg));
  JsonValue meta = JsonValue::object();
  meta.set("wall_time_ms", elapsed_ms(start));
  j.set("meta", std::move(meta));
  write_text(out_path(cfg.output_dir, "report.json"), j.dump() + "\n");
  if (dump_field) dump_field_csv(u, out_path(cfg.output_dir, "field.csv"));
  std::cout << "lambda = " << lambda << "  sup_norm = " << u.sup_norm()
            << "  iterations = " << rep.iterations << "\n";
  return 0;
}

int cmd_eigen(const std::string& config_path, const std::string& out_override) {
  const Clock::time_point start = Clock::now();
  RunConfig cfg = load_config_file(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;

  const Grid grid = build_grid(cfg.domain, cfg.h);
  const EigenOptions opts = cfg.eigen_options();
  const EigenResult result = solve_eigenproblem(cfg.op, grid, opts);

  auto [u0, rep0] = solve_family(cfg.op, grid, 0.0, std::nullopt, cfg.solver);
  const PropertyReport bounds = verify_bounds(cfg.op, grid, result, u0);

  JsonValue trace = JsonValue::array();
  for (const auto& rec : result.trace.records) {
    JsonValue r = JsonValue::object();
    r.set("lambda", rec.lambda)
        .set("sup_norm", rec.sup_norm)
        .set("newton_iterations", rec.newton_iterations)
        .set("residual", rec.residual);
    trace.push(std::move(r));
  }
  JsonValue j = JsonValue::object();
  j.set("operator", cfg.op.token())
      .set("domain", cfg.domain.token())
      .set("h", grid.hx)
      .set("lambda1", result.lambda1)
      .set("lower", result.lower_bound)
      .set("upper", result.upper_bound)
      .set("iterations", result.refine_iterations)
      .set("residual", result.residual)
      .set("bracket_pass", bounds.pass)
      .set("trace", std::move(trace))
      .set("config", config_json(cfg));
  JsonValue meta = JsonValue::object();
  meta.set("wall_time_ms", elapsed_ms(start));
  j.set("meta", std::move(meta));
  write_text(out_path(cfg.output_dir, "report.json"), j.dump() + "\n");

  std::string csv = "lambda,sup_norm,newton_iterations,residual\n";
  char line[160];
  for (const auto& rec : result.trace.records) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%d,%.17g\n", rec.lambda,
                  rec.sup_norm, rec.newton_iterations, rec.residual);
    csv += line;
  }
  write_text(out_path(cfg.output_dir, "trace.csv"), csv);
  dump_field_csv(result.eigenfunction, out_path(cfg.output_dir, "field.csv"));

  std::cout << "lambda1 = " << result.lambda1 << "  bracket = [" << result.lower_bound
            << ", " << result.upper_bound << "]"
            << (bounds.pass ? "" : "  BRACKET VIOLATION") << "\n";
  return bounds.pass ? 0 : 1;
}

int cmd_oracle(const std::string& token, double radius, int mesh,
               const std::string& out_dir) {
  const Clock::time_point start = Clock::now();
  RadialProblem problem{HessianOperator::parse(token), radius, mesh};
  const OracleResult res = oracle_lambda1_detailed(problem);
  JsonValue j = JsonValue::object();
  JsonValue bracket = JsonValue::array();
  bracket.push(res.bracket_lo).push(res.bracket_hi);
  j.set("operator", problem.op.token())
      .set("radius", radius)
      .set("lambda1", res.lambda1)
      .set("mesh", mesh)
      .set("bracket", std::move(bracket));
  JsonValue meta = JsonValue::object();
  meta.set("wall_time_ms", elapsed_ms(start));
  j.set("meta", std::move(meta));
  write_text(out_path(out_dir, "report.json"), j.dump() + "\n");
  std::cout << "lambda1 = " << res.lambda1 << "\n";
  return 0;
}

int cmd_falsify(int n, int k, int l, const std::string& out_dir) {
  const PropertyReport rep = falsify_quotient_T(n, k, l);
  JsonValue j = report_json(rep);
  write_text(out_path(out_dir, "report.json"), j.dump() + "\n");
  std::cout << j.dump() << "\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"first Dirichlet eigenpairs of concave elliptic Hessian operators"};
  app.require_subcommand(1);

  std::string op_token, config_path, out_dir = ".";
  std::uint64_t seed = 1;
  int samples = 10000;
  double lambda = 0.0, radius = 1.0;
  int mesh = 100000, qn = 2, qk = 2, ql = 1;
  bool dump_field = false;
  std::string out_override;

  CLI::App* verify = app.add_subcommand("verify", "structural property suite for one operator");
  verify->add_option("--operator", op_token, "operator token")->required();
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--samples", samples, "cloud size");
  verify->add_option("--out", out_dir, "output directory");

  CLI::App* solve = app.add_subcommand("solve", "solve F(D^2 u) = 1 - lambda u");
  solve->add_option("--config", config_path, "config file")->required();
  CLI::Option* lam_opt = solve->add_option("--lambda", lambda, "family parameter");
  solve->add_flag("--dump-field", dump_field, "write field.csv");
  solve->add_option("--out", out_override, "override output directory");

  CLI::App* eigen = app.add_subcommand("eigen", "compute the first eigenpair");
  eigen->add_option("--config", config_path, "config file")->required();
  eigen->add_option("--out", out_override, "override output directory");

  CLI::App* oracle = app.add_subcommand("oracle", "radial shooting reference eigenvalue");
  oracle->add_option("--operator", op_token, "operator token")->required();
  oracle->add_option("--radius", radius, "ball radius")->required();
  oracle->add_option("--mesh", mesh, "radial step count");
  oracle->add_option("--out", out_dir, "output directory");

  CLI::App* falsify = app.add_subcommand(
      "falsify-quotient", "show the quotient operator admits no uniform gradient-product bound");
  falsify->add_option("--n", qn, "dimension")->required();
  falsify->add_option("--k", qk, "numerator index")->required();
  falsify->add_option("--l", ql, "denominator index")->required();
  falsify->add_option("--out", out_dir, "output directory");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help() << "\n";
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(op_token, seed, samples, out_dir);
    if (solve->parsed()) {
      return cmd_solve(config_path, lambda, lam_opt->count() > 0, dump_field,
                       out_override);
    }
    if (eigen->parsed()) return cmd_eigen(config_path, out_override);
    if (oracle->parsed()) return cmd_oracle(op_token, radius, mesh, out_dir);
    if (falsify->parsed()) return cmd_falsify(qn, qk, ql, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hesseig
