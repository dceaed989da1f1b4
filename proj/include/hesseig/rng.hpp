// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef HESSEIG_RNG_HPP
#define HESSEIG_RNG_HPP

#include <cstdint>
#include <random>

namespace hesseig {

// Deterministic uniform generator. mt19937_64 output is fixed by the
// standard, and the int->double mapping below avoids the
// implementation-defined std::uniform_real_distribution, so streams are
// reproducible bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // log-uniform over [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return lo * std::exp(uniform() * std::log(hi / lo));
  }

  std::uint64_t bits() { return engine_(); }

  int index(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hesseig

#endif  // HESSEIG_RNG_HPP
