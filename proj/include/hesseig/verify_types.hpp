// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HESSEIG_VERIFY_TYPES_HPP
#define HESSEIG_VERIFY_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hesseig {

// Outcome of one sampled structural check. `witness` holds the point (or
// small value tuple) realizing the worst margin.
struct PropertyReport {
  std::string property;
  std::string operator_token;
  std::uint64_t seed = 0;
  int samples = 0;
  double worst_margin = 0.0;
  std::vector<double> witness;
  bool pass = false;
  std::string note;  // optional diagnostics ("inconclusive: ...")
};

}  // namespace hesseig

#endif  // HESSEIG_VERIFY_TYPES_HPP
