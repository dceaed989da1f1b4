// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hesseig/errors.hpp"

namespace hesseig {

namespace {

void check_dim(const HessianOperator& op, std::size_t len) {
  if (static_cast<int>(len) != op.dim) {
    throw ContractViolation("spectrum length " + std::to_string(len) +
                            " does not match operator dimension " +
                            std::to_string(op.dim));
  }
}

void check_finite(std::span<const double> lam) {
  for (double v : lam) {
    if (!std::isfinite(v)) throw ContractViolation("spectrum entry not finite");
  }
}

// Iterates p-subsets of {0..n-1} in lexicographic order; calls fn(sum).
template <typename Fn>
void for_each_subset_sum(std::span<const double> lam, int p, Fn&& fn) {
  const int n = static_cast<int>(lam.size());
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    double s = 0.0;
    for (int i : idx) s += lam[i];
    fn(idx, s);
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

HessianOperator HessianOperator::k_hessian(int k, int n) {
  if (n < 2) throw ContractViolation("operator dimension must be >= 2");
  if (k < 1 || k > n) throw ContractViolation("k-Hessian index must satisfy 1 <= k <= n");
  HessianOperator op;
  op.kind = OperatorKind::kHessian;
  op.index = k;
  op.dim = n;
  op.norm_factor = std::pow(binomial(n, k), 1.0 / k);
  return op;
}

HessianOperator HessianOperator::p_monge_ampere(int p, int n) {
  if (n < 2) throw ContractViolation("operator dimension must be >= 2");
  if (p < 1 || p > n) throw ContractViolation("p-Monge-Ampere index must satisfy 1 <= p <= n");
  HessianOperator op;
  op.kind = OperatorKind::pMongeAmpere;
  op.index = p;
  op.dim = n;
  op.norm_factor = static_cast<double>(p);
  return op;
}

std::string HessianOperator::token() const {
  std::ostringstream os;
  if (kind == OperatorKind::kHessian) {
    os << "k-hessian:k=" << index << ",n=" << dim;
  } else {
    os << "p-ma:p=" << index << ",n=" << dim;
  }
  return os.str();
}

HessianOperator HessianOperator::parse(const std::string& token) {
  auto fail = [&] {
    throw ContractViolation("unrecognized operator token '" + token +
                            "' (expected k-hessian:k=K,n=N or p-ma:p=P,n=N)");
  };
  int a = 0, n = 0;
  if (token.rfind("k-hessian:", 0) == 0) {
    if (std::sscanf(token.c_str(), "k-hessian:k=%d,n=%d", &a, &n) != 2) fail();
    return k_hessian(a, n);
  }
  if (token.rfind("p-ma:", 0) == 0) {
    if (std::sscanf(token.c_str(), "p-ma:p=%d,n=%d", &a, &n) != 2) fail();
    return p_monge_ampere(a, n);
  }
  fail();
  return {};
}

void elementary_symmetric(std::span<const double> lam, std::vector<double>& e) {
  const int n = static_cast<int>(lam.size());
  e.assign(n + 1, 0.0);
  e[0] = 1.0;
  for (int m = 0; m < n; ++m) {
    for (int j = std::min(m + 1, n); j >= 1; --j) e[j] += lam[m] * e[j - 1];
  }
}

void cone_slacks(const HessianOperator& op, std::span<const double> lam,
                 std::vector<double>& out) {
  check_dim(op, lam.size());
  check_finite(lam);
  out.clear();
  if (op.kind == OperatorKind::kHessian) {
    std::vector<double> e;
    elementary_symmetric(lam, e);
    for (int j = 1; j <= op.index; ++j) out.push_back(e[j]);
  } else {
    for_each_subset_sum(lam, op.index,
                        [&](const std::vector<int>&, double s) { out.push_back(s); });
  }
}

bool cone_contains(const HessianOperator& op, std::span<const double> lam,
                   double margin) {
  if (margin < 0.0) throw ContractViolation("cone margin must be nonnegative");
  std::vector<double> slacks;
  cone_slacks(op, lam, slacks);
  return std::all_of(slacks.begin(), slacks.end(),
                     [&](double s) { return s > margin; });
}

namespace {

// Throws ConeError naming the first violated inequality.
void require_in_cone(const HessianOperator& op, std::span<const double> lam) {
  std::vector<double> slacks;
  cone_slacks(op, lam, slacks);
  for (std::size_t j = 0; j < slacks.size(); ++j) {
    if (!(slacks[j] > 0.0)) {
      std::ostringstream os;
      std::string name;
      if (op.kind == OperatorKind::kHessian) {
        name = "sigma_" + std::to_string(j + 1);
      } else {
        name = "partial sum #" + std::to_string(j + 1) + " (p=" +
               std::to_string(op.index) + ")";
      }
      os << "spectrum outside cone of " << op.token() << ": " << name << " = "
         << slacks[j] << " <= 0";
      throw ConeError(os.str(), std::vector<double>(lam.begin(), lam.end()), name);
    }
  }
}

}  // namespace

double eval_f(const HessianOperator& op, std::span<const double> lam) {
  require_in_cone(op, lam);
  if (op.kind == OperatorKind::kHessian) {
    std::vector<double> e;
    elementary_symmetric(lam, e);
    return std::pow(e[op.index], 1.0 / op.index) / op.norm_factor;
  }
  double log_sum = 0.0;
  for_each_subset_sum(lam, op.index, [&](const std::vector<int>&, double s) {
    log_sum += std::log(s);
  });
  const double c = binomial(op.dim, op.index);
  return std::exp(log_sum / c) / op.norm_factor;
}

void grad_f(const HessianOperator& op, std::span<const double> lam,
            std::span<double> out) {
  require_in_cone(op, lam);
  const int n = op.dim;
  if (static_cast<int>(out.size()) != n) {
    throw ContractViolation("gradient output span has wrong length");
  }
  if (op.kind == OperatorKind::kHessian) {
    const int k = op.index;
    std::vector<double> e;
    elementary_symmetric(lam, e);
    const double fk = std::pow(e[k], 1.0 / k) / op.norm_factor;
    // d sigma_k / d lambda_i = sigma_{k-1}(lambda with i removed), via the
    // deflation e_j(lam \ i) = e_j - lambda_i e_{j-1}(lam \ i).
    for (int i = 0; i < n; ++i) {
      double s_prev = 1.0;  // e_0
      for (int j = 1; j <= k - 1; ++j) s_prev = e[j] - lam[i] * s_prev;
      out[i] = fk / (k * e[k]) * s_prev;
    }
  } else {
    const double c = binomial(op.dim, op.index);
    const double f = eval_f(op, lam);
    for (int i = 0; i < n; ++i) out[i] = 0.0;
    for_each_subset_sum(lam, op.index, [&](const std::vector<int>& idx, double s) {
      for (int i : idx) out[i] += 1.0 / s;
    });
    for (int i = 0; i < n; ++i) out[i] *= f / c;
  }
}

bool cone_contains(const HessianOperator& op, const Spectrum& lam, double margin) {
  return cone_contains(op, std::span<const double>(lam.data(), lam.size()), margin);
}

double eval_f(const HessianOperator& op, const Spectrum& lam) {
  return eval_f(op, std::span<const double>(lam.data(), lam.size()));
}

Spectrum grad_f(const HessianOperator& op, const Spectrum& lam) {
  Spectrum g(lam.size());
  grad_f(op, std::span<const double>(lam.data(), lam.size()),
         std::span<double>(g.data(), g.size()));
  return g;
}

void sym_eigen_2x2(double a00, double a01, double a11, double eig[2],
                   double vec[4]) {
  const double mid = 0.5 * (a00 + a11);
  const double half_diff = 0.5 * (a00 - a11);
  const double disc = std::hypot(half_diff, a01);
  const double det = std::fma(a00, a11, -a01 * a01);
  double big = (mid >= 0.0) ? mid + disc : mid - disc;
  double small;
  if (big == 0.0) {
    big = mid + disc;
    small = mid - disc;
  } else {
    small = det / big;  // exact product identity; avoids cancellation
  }
  const double lo = std::min(big, small);
  const double hi = std::max(big, small);
  eig[0] = lo;
  eig[1] = hi;
  // Eigenvector for hi: (a01, hi - a00) or (hi - a11, a01), whichever is
  // better conditioned.
  double vx, vy;
  if (std::abs(hi - a00) >= std::abs(hi - a11)) {
    vx = a01;
    vy = hi - a00;
  } else {
    vx = hi - a11;
    vy = a01;
  }
  double norm = std::hypot(vx, vy);
  if (norm == 0.0) {
    vx = 1.0;
    vy = 0.0;
    norm = 1.0;
  }
  vx /= norm;
  vy /= norm;
  // columns: [v_lo, v_hi], v_lo perpendicular to v_hi
  vec[0] = -vy;
  vec[1] = vx;
  vec[2] = vx;
  vec[3] = vy;
}

void sym_eigen(const SymMatrix& A, Spectrum& values, SymMatrix& vectors) {
  const int n = static_cast<int>(A.rows());
  if (n == 2) {
    double eig[2], vec[4];
    sym_eigen_2x2(A(0, 0), 0.5 * (A(0, 1) + A(1, 0)), A(1, 1), eig, vec);
    values.resize(2);
    values << eig[0], eig[1];
    vectors.resize(2, 2);
    vectors << vec[0], vec[2], vec[1], vec[3];
    return;
  }
  Eigen::SelfAdjointEigenSolver<SymMatrix> solver(A);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("symmetric eigendecomposition failed");
  }
  values = solver.eigenvalues();
  vectors = solver.eigenvectors();
}

namespace {

void check_symmetric(const SymMatrix& A) {
  if (A.rows() != A.cols() || A.rows() < 2) {
    throw ContractViolation("matrix must be square with n >= 2");
  }
  const double scale = std::max(1e-300, A.cwiseAbs().maxCoeff());
  const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-14 * scale) {
    throw ContractViolation("matrix is not symmetric to 1e-14 of its magnitude");
  }
}

}  // namespace

double eval_F(const HessianOperator& op, const SymMatrix& A) {
  check_symmetric(A);
  Spectrum lam;
  SymMatrix q;
  sym_eigen(A, lam, q);
  return eval_f(op, lam);
}

SymMatrix linearization_DF(const HessianOperator& op, const SymMatrix& A,
                           double margin) {
  check_symmetric(A);
  Spectrum lam;
  SymMatrix q;
  sym_eigen(A, lam, q);
  if (!cone_contains(op, lam, std::max(margin, 0.0))) {
    throw DegenerateLinearizationError(
        "spectrum of linearization point misses cone margin " +
        std::to_string(margin) + " for " + op.token());
  }
  Spectrum g = grad_f(op, lam);
  return q * g.asDiagonal() * q.transpose();
}

std::optional<double> condition_T_constant(const HessianOperator& op) {
  const int n = op.dim;
  const bool endpoint = (op.index == 1 || op.index == n);
  if (!endpoint) return std::nullopt;
  // Normalized trace (k=1, p=n) has constant gradient (1/n,...,1/n);
  // normalized determinant (k=n, p=1) has f_i = f/(n lambda_i), so
  // prod f_i = f^n / (n^n prod lambda_i) = n^{-n}. Identically n^{-n}
  // in all four endpoint cases.
  return std::pow(static_cast<double>(n), -static_cast<double>(n));
}

}  // namespace hesseig
