#pragma once

#include "cdkernel/complexmat.hpp"
#include "cdkernel/kernelzoo.hpp"

#include <functional>
#include <optional>
#include <string>

namespace cdk {

/// Smallest lambda in [lo, hi] where the monotone predicate turns true,
/// bisected to `tol`.
double bisect_threshold(const std::function<bool(double)>& holds_at, double lo,
                        double hi, double tol);

/// Carathéodory norm of the supported domains at the origin.
struct OriginNorm {
  enum class Kind { L2, Linf, MatrixOp };
  Kind kind = Kind::L2;
  int r = 1, s = 1;  // MatrixOp shape, dimension r*s

  int dim() const { return kind == Kind::MatrixOp ? r * s : r; }
  static OriginNorm l2(int n) { return {Kind::L2, n, 1}; }
  static OriginNorm linf(int n) { return {Kind::Linf, n, 1}; }
  static OriginNorm matrix_op(int r, int s) { return {Kind::MatrixOp, r, s}; }

  double eval(const std::vector<Complex>& v) const;
};

struct ANormResult {
  double value;
  bool approximate;  // true for the random-restart MatrixOp path
  int restarts;
};

/// ||A||_{l2 -> target}. Exact for l2 and linf targets and for scalar
/// multiples of the identity under the matrix-op target; otherwise a
/// random-restart alternating ascent, flagged approximate.
ANormResult a_norm(const ComplexMatrix& a, const OriginNorm& target,
                   uint64_t seed = 0);

/// H(w) >= H_frak(w) for the ball, via the lambda factorization of the
/// homogeneous curvature; equivalent to lambda (n+1) >= 1.
bool ball_curvature_inequality(const KernelSpec& k, const DomainPoint& w);

/// Trace-to-operator norm of (1/(lambda p)) I: equals 1/(lambda p).
double pmat_norm(double lambda, int r, int s);
/// The same value recomputed from the definition (sup over rank-one
/// trace-norm-unit directions).
double pmat_norm_direct(double lambda, int r, int s, uint64_t seed = 0);

struct NuTests {
  double nu;
  bool contractive_necessary;             // nu >= 1
  bool completely_contractive_necessary;  // nu >= s
};

NuTests nu_tests(double lambda, int r, int s);

struct PaNorm {
  double formula;  // max_i sum_j |v_ij|^2
  double direct;   // squared largest singular value of the assembled blocks
};

PaNorm pa_norm(const std::vector<Complex>& v, double lambda, int r, int s);

struct ContractivityReport {
  std::string test_name;
  double lambda;
  bool verdict;
  double computed_threshold;
  double claimed_threshold;
  bool discrepancy;
  std::string notes;
};

/// Contractivity and complete-contractivity tests for the omega2 Bergman
/// kernel via the closed-form a_ii(0) values.
std::pair<ContractivityReport, ContractivityReport> omega2_tests(double lambda);
std::pair<ContractivityReport, ContractivityReport> omega3_tests(double lambda);

/// Dispatch by test name: "omega2-contract", "omega2-cc", "omega3-contract",
/// "omega3-cc", "ball:N", "nu:RxS", "nu-cc:RxS".
ContractivityReport contract_test(const std::string& name, double lambda);

}  // namespace cdk
