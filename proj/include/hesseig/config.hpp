// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// INI-style run configuration ("key = value", sections per module) shared by
// the solve/eigen subcommands. Parsing reports every validation issue, not
// just the first, and serialization round-trips exactly.

#ifndef HESSEIG_CONFIG_HPP
#define HESSEIG_CONFIG_HPP

#include <cstdint>
#include <string>

#include "hesseig/eigen_solver.hpp"
#include "hesseig/grid.hpp"
#include "hesseig/newton.hpp"

namespace hesseig {

struct RunConfig {
  HessianOperator op = HessianOperator::k_hessian(1, 2);
  DomainSpec domain = DomainSpec::rectangle(1.0, 1.0);
  double h = 1.0 / 32;
  NewtonOptions solver;
  double tol_eig = 1e-9;
  double blowup_cap = 1e4;
  int max_refine = 200;
  int trials = 3;
  std::uint64_t seed = 1;
  std::string output_dir = ".";

  EigenOptions eigen_options() const {
    EigenOptions e;
    e.newton = solver;
    e.tol_eig = tol_eig;
    e.blowup_cap = blowup_cap;
    e.max_refine = max_refine;
    return e;
  }

  std::string to_text() const;  // canonical form; parse(to_text()) == *this

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError carrying the full list of issues.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace hesseig

#endif  // HESSEIG_CONFIG_HPP
