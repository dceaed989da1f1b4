// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Sampling-based certification / falsification of the operator structure:
// the uniform gradient-product lower bound (Condition (T)), the Garding
// increment inequality, the arithmetic-mean bound, midpoint concavity, and
// the quotient-operator counterexample.

#ifndef HESSEIG_VERIFY_HPP
#define HESSEIG_VERIFY_HPP

#include <cstdint>

#include "hesseig/operators.hpp"
#include "hesseig/verify_types.hpp"

namespace hesseig {

enum class SampleStrategy { interior, boundary_approach, ray };

struct SampleCloud {
  std::vector<Spectrum> points;  // every point strictly inside the cone
  std::uint64_t seed = 0;
  SampleStrategy strategy = SampleStrategy::interior;
};

// Points mu * 1 + nu * d with d componentwise in [-1, 1], rejected unless in
// the cone. `boundary_approach` blends an interior point toward the cone
// wall by factors 10^-j, j = 1..6; `ray` returns t * lambda0 over a log grid.
SampleCloud sample_cone(const HessianOperator& op, int count, std::uint64_t seed,
                        SampleStrategy strategy);

// worst margin of prod_i f_i against the closed-form constant when one is
// known (reported margins hover at 0 for the endpoint operators); otherwise
// reports the raw sampled infimum.
PropertyReport check_condition_T(const HessianOperator& op, const SampleCloud& cloud);

// f(lambda + tau) - f(lambda) >= T^{1/n} (prod tau_i)^{1/n} for all pairs,
// tau drawn from the positive orthant.
PropertyReport check_garding_equivalence(const HessianOperator& op,
                                         const SampleCloud& cloud_lam,
                                         const SampleCloud& cloud_tau);

// f(lambda) <= mean(lambda) over the cloud.
PropertyReport check_urbas(const HessianOperator& op, const SampleCloud& cloud);

// Midpoint concavity f((x+y)/2) >= (f(x)+f(y))/2 over random cloud pairs.
PropertyReport check_concavity(const HessianOperator& op, const SampleCloud& cloud);

// prod_i df/dlambda_i for the quotient operator (sigma_k/sigma_l)^{1/(k-l)}
// at the ray point (t, 1, ..., 1); analytic gradient.
double quotient_T_product(int n, int k, int l, double t);

// Scans the ray t -> infinity; pass iff the product drops below 1e-3,
// demonstrating that no uniform lower bound exists.
PropertyReport falsify_quotient_T(int n, int k, int l);

}  // namespace hesseig

#endif  // HESSEIG_VERIFY_HPP
