// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Concave elliptic Hessian operator families f(lambda) on their Garding
// cones: the k-Hessian family sigma_k^{1/k} on Gamma_k and the
// p-Monge-Ampere family M_p^{1/C(n,p)} on P_p, both normalized so that
// f(1,...,1) = 1. Exact cone tests, values, gradients, the matrix-level
// operator F(A) = f(lambda(A)) and its linearization coefficients F^{ij}.

#ifndef HESSEIG_OPERATORS_HPP
#define HESSEIG_OPERATORS_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hesseig {

using Spectrum = Eigen::VectorXd;
using SymMatrix = Eigen::MatrixXd;

enum class OperatorKind { kHessian, pMongeAmpere };

struct HessianOperator {
  OperatorKind kind = OperatorKind::kHessian;
  int index = 1;             // k for sigma_k, p for M_p
  int dim = 2;               // n
  double norm_factor = 1.0;  // divisor making f(1,...,1) = 1

  static HessianOperator k_hessian(int k, int n);
  static HessianOperator p_monge_ampere(int p, int n);

  // String token "k-hessian:k=K,n=N" / "p-ma:p=P,n=N".
  std::string token() const;
  static HessianOperator parse(const std::string& token);

  bool operator==(const HessianOperator&) const = default;
};

// --- span kernels (allocation-free; used by solver hot loops) ------------

// Values of every cone-defining inequality at lam: sigma_1..sigma_k for the
// k-Hessian, all p-fold partial sums for p-Monge-Ampere.
void cone_slacks(const HessianOperator& op, std::span<const double> lam,
                 std::vector<double>& out);

bool cone_contains(const HessianOperator& op, std::span<const double> lam,
                   double margin);

double eval_f(const HessianOperator& op, std::span<const double> lam);

void grad_f(const HessianOperator& op, std::span<const double> lam,
            std::span<double> out);

// --- Eigen-vector convenience overloads ----------------------------------

bool cone_contains(const HessianOperator& op, const Spectrum& lam, double margin);
double eval_f(const HessianOperator& op, const Spectrum& lam);
Spectrum grad_f(const HessianOperator& op, const Spectrum& lam);

// F(A) = f(lambda(A)). A must be symmetric to 1e-14 of its own magnitude.
double eval_F(const HessianOperator& op, const SymMatrix& A);

// Coefficient matrix (F^{ij}) in ambient coordinates: with A = Q L Q^T,
// F^{ij} = sum_m Q_{im} f_m(lambda) Q_{jm}. Symmetric positive definite.
// Throws DegenerateLinearizationError when lambda(A) misses `margin`.
SymMatrix linearization_DF(const HessianOperator& op, const SymMatrix& A,
                           double margin = 0.0);

// Exact Condition (T) constant where a closed form is known: prod f_i is
// identically n^{-n} for the normalized trace and determinant endpoints
// (k = 1, k = n, p = 1, p = n). Absent otherwise; callers fall back to
// sampled bounds.
std::optional<double> condition_T_constant(const HessianOperator& op);

// Eigen-decomposition helper shared by eval_F / linearization / grids:
// 2x2 closed form, iterative symmetric solver for n >= 3. Eigenvalues
// ascending, columns of Q the matching eigenvectors.
void sym_eigen(const SymMatrix& A, Spectrum& values, SymMatrix& vectors);

// Closed-form 2x2 path. Stable for tiny determinants (computes the small
// eigenvalue as det/lambda_max).
void sym_eigen_2x2(double a00, double a01, double a11, double eig[2],
                   double vec[4] /* column major */);

// Elementary symmetric polynomials e_0..e_n of lam.
void elementary_symmetric(std::span<const double> lam, std::vector<double>& e);

// Binomial coefficient as double (desk-scale n).
double binomial(int n, int k);

}  // namespace hesseig

#endif  // HESSEIG_OPERATORS_HPP
