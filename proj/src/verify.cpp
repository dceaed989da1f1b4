// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hesseig/errors.hpp"
#include "hesseig/rng.hpp"

namespace hesseig {

namespace {

constexpr double kMembershipEps = 1e-12;

bool in_cone_soft(const HessianOperator& op, const Spectrum& lam) {
  const double margin = kMembershipEps * (1.0 + lam.cwiseAbs().maxCoeff());
  return cone_contains(op, lam, margin);
}

Spectrum draw_interior(const HessianOperator& op, Rng& rng) {
  const int n = op.dim;
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double mu = rng.log_uniform(0.1, 10.0);
    const double nu = mu * rng.uniform(0.0, 1.2);
    Spectrum lam(n);
    for (int i = 0; i < n; ++i) lam[i] = mu + nu * rng.uniform(-1.0, 1.0);
    if (in_cone_soft(op, lam)) return lam;
  }
  throw SamplingExhaustedError("rejection sampling found no interior cone point");
}

// Interpolation parameter t* in (0, 1] where (1-t) inner + t outer exits the
// cone, found by bisection.
double exit_parameter(const HessianOperator& op, const Spectrum& inner,
                      const Spectrum& outer) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Spectrum pt = (1.0 - mid) * inner + mid * outer;
    if (cone_contains(op, pt, 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

SampleCloud sample_cone(const HessianOperator& op, int count, std::uint64_t seed,
                        SampleStrategy strategy) {
  if (count < 1) throw ContractViolation("sample count must be >= 1");
  SampleCloud cloud;
  cloud.seed = seed;
  cloud.strategy = strategy;
  Rng rng(seed);

  switch (strategy) {
    case SampleStrategy::interior: {
      for (int i = 0; i < count; ++i) cloud.points.push_back(draw_interior(op, rng));
      break;
    }
    case SampleStrategy::boundary_approach: {
      while (static_cast<int>(cloud.points.size()) < count) {
        const Spectrum inner = draw_interior(op, rng);
        Spectrum outer(op.dim);
        bool found_outer = false;
        for (int attempt = 0; attempt < 1000000 && !found_outer; ++attempt) {
          for (int i = 0; i < op.dim; ++i) outer[i] = rng.uniform(-2.0, 2.0);
          found_outer = !cone_contains(op, outer, 0.0);
        }
        if (!found_outer) {
          throw SamplingExhaustedError("no out-of-cone direction found");
        }
        const double t_exit = exit_parameter(op, inner, outer);
        const Spectrum wall = (1.0 - t_exit) * inner + t_exit * outer;
        for (int j = 1; j <= 6 && static_cast<int>(cloud.points.size()) < count; ++j) {
          const double back = std::pow(10.0, -j);
          const Spectrum pt = wall + back * (inner - wall);
          if (cone_contains(op, pt, 0.0)) cloud.points.push_back(pt);
        }
      }
      break;
    }
    case SampleStrategy::ray: {
      const Spectrum lam0 = draw_interior(op, rng);
      for (int i = 0; i < count; ++i) {
        const double t = (count == 1)
                             ? 1.0
                             : std::pow(10.0, -2.0 + 4.0 * i / (count - 1));
        cloud.points.push_back(t * lam0);
      }
      break;
    }
  }
  return cloud;
}

PropertyReport check_condition_T(const HessianOperator& op, const SampleCloud& cloud) {
  PropertyReport rep;
  rep.property = "condition-T";
  rep.operator_token = op.token();
  rep.seed = cloud.seed;
  rep.samples = static_cast<int>(cloud.points.size());

  const std::optional<double> closed = condition_T_constant(op);
  double worst = std::numeric_limits<double>::infinity();
  for (const Spectrum& lam : cloud.points) {
    const Spectrum g = grad_f(op, lam);
    const double prod = g.prod();
    const double margin = closed ? prod - *closed : prod;
    if (margin < worst) {
      worst = margin;
      rep.witness.assign(lam.data(), lam.data() + lam.size());
    }
  }
  rep.worst_margin = worst;
  rep.pass = closed ? (worst >= -1e-10) : (worst > 0.0);
  if (!closed) rep.note = "no closed form; worst margin is the raw sampled infimum";
  return rep;
}

PropertyReport check_garding_equivalence(const HessianOperator& op,
                                         const SampleCloud& cloud_lam,
                                         const SampleCloud& cloud_tau) {
  PropertyReport rep;
  rep.property = "garding-increment";
  rep.operator_token = op.token();
  rep.seed = cloud_lam.seed;
  rep.samples = static_cast<int>(cloud_lam.points.size() * cloud_tau.points.size());

  // tau must lie in the positive orthant
  for (const Spectrum& tau : cloud_tau.points) {
    if (tau.minCoeff() <= 0.0) {
      throw ContractViolation("garding check requires tau with positive entries");
    }
  }
  double T;
  if (auto closed = condition_T_constant(op)) {
    T = *closed;
  } else {
    T = std::numeric_limits<double>::infinity();
    for (const Spectrum& lam : cloud_lam.points) {
      T = std::min(T, grad_f(op, lam).prod());
    }
    rep.note = "constant taken from the sampled gradient-product infimum";
  }
  const double c = std::pow(T, 1.0 / op.dim);

  double worst = std::numeric_limits<double>::infinity();
  for (const Spectrum& lam : cloud_lam.points) {
    const double f_lam = eval_f(op, lam);
    for (const Spectrum& tau : cloud_tau.points) {
      const double lhs = eval_f(op, lam + tau) - f_lam;
      const double rhs = c * std::exp(tau.array().log().sum() / op.dim);
      const double scale = std::max(1.0, std::abs(lhs));
      const double margin = (lhs - rhs) / scale;
      if (margin < worst) {
        worst = margin;
        rep.witness.assign(lam.data(), lam.data() + lam.size());
        for (int i = 0; i < tau.size(); ++i) rep.witness.push_back(tau[i]);
      }
    }
  }
  rep.worst_margin = worst;
  rep.pass = worst >= -1e-9;
  return rep;
}

PropertyReport check_urbas(const HessianOperator& op, const SampleCloud& cloud) {
  PropertyReport rep;
  rep.property = "mean-bound";
  rep.operator_token = op.token();
  rep.seed = cloud.seed;
  rep.samples = static_cast<int>(cloud.points.size());

  double worst = std::numeric_limits<double>::infinity();
  for (const Spectrum& lam : cloud.points) {
    const double margin = lam.mean() - eval_f(op, lam);
    if (margin < worst) {
      worst = margin;
      rep.witness.assign(lam.data(), lam.data() + lam.size());
    }
  }
  rep.worst_margin = worst;
  rep.pass = worst >= -1e-10;
  return rep;
}

PropertyReport check_concavity(const HessianOperator& op, const SampleCloud& cloud) {
  if (cloud.points.size() < 2) {
    throw ContractViolation("concavity check needs a cloud of size >= 2");
  }
  PropertyReport rep;
  rep.property = "midpoint-concavity";
  rep.operator_token = op.token();
  rep.seed = cloud.seed;

  Rng rng(cloud.seed ^ 0x9e3779b97f4a7c15ULL);
  const int pairs = static_cast<int>(cloud.points.size());
  rep.samples = pairs;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    const Spectrum& x = cloud.points[rng.index(pairs)];
    const Spectrum& y = cloud.points[rng.index(pairs)];
    const double mid = eval_f(op, Spectrum(0.5 * (x + y)));
    const double avg = 0.5 * (eval_f(op, x) + eval_f(op, y));
    const double scale = std::max(1.0, std::abs(mid));
    const double margin = (mid - avg) / scale;
    if (margin < worst) {
      worst = margin;
      rep.witness.assign(x.data(), x.data() + x.size());
      for (int j = 0; j < y.size(); ++j) rep.witness.push_back(y[j]);
    }
  }
  rep.worst_margin = worst;
  rep.pass = worst >= -1e-10;
  return rep;
}

double quotient_T_product(int n, int k, int l, double t) {
  if (!(n >= k && k > l && l >= 1)) {
    throw ContractViolation("quotient operator requires n >= k > l >= 1");
  }
  std::vector<double> lam(n, 1.0);
  lam[0] = t;
  std::vector<double> e;
  elementary_symmetric(lam, e);
  const double q = e[k] / e[l];
  const double f_pow = std::pow(q, 1.0 / (k - l) - 1.0) / (k - l);
  double prod = 1.0;
  for (int i = 0; i < n; ++i) {
    // sigma_{k-1} and sigma_{l-1} with entry i removed
    double sk = 1.0;
    for (int j = 1; j <= k - 1; ++j) sk = e[j] - lam[i] * sk;
    double sl = 1.0;
    for (int j = 1; j <= l - 1; ++j) sl = e[j] - lam[i] * sl;
    const double dq = (sk * e[l] - e[k] * sl) / (e[l] * e[l]);
    prod *= f_pow * dq;
  }
  return prod;
}

PropertyReport falsify_quotient_T(int n, int k, int l) {
  PropertyReport rep;
  rep.property = "quotient-condition-T-falsification";
  rep.operator_token = "quotient:k=" + std::to_string(k) + ",l=" + std::to_string(l) +
                       ",n=" + std::to_string(n);
  const int scan = 121;
  rep.samples = scan;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan; ++i) {
    const double t = std::pow(10.0, 6.0 * i / (scan - 1));
    const double prod = quotient_T_product(n, k, l, t);
    if (prod < worst) {
      worst = prod;
      rep.witness = {t};
    }
  }
  rep.worst_margin = worst;
  rep.pass = worst < 1e-3;
  return rep;
}

}  // namespace hesseig
