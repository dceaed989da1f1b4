// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HESSEIG_RUNNER_HPP
#define HESSEIG_RUNNER_HPP

#include <string>
#include <vector>

namespace hesseig {

// Subcommand dispatch for the CLI: verify, solve, eigen, oracle,
// falsify-quotient. Writes report.json (plus trace.csv / field.csv where
// applicable) into the output directory. Returns 0 on success, 1 on an
// assertion failure (bracket violation, failed property), 2 on usage errors.
int dispatch(const std::vector<std::string>& argv);

}  // namespace hesseig

#endif  // HESSEIG_RUNNER_HPP
