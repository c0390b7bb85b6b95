#pragma once

#include "cdkernel/complexmat.hpp"

#include <string>
#include <vector>

namespace cdk {

using MultiIndex = std::vector<int>;
using DomainPoint = std::vector<Complex>;

int index_order(const MultiIndex& a);
/// Co-lexicographic comparison: compares at the last differing coordinate.
bool colex_less(const MultiIndex& a, const MultiIndex& b);

struct DomainSpec {
  enum class Tag { Disc, Polydisc, Ball, MatrixBall, Omega2, Omega3 };
  Tag tag = Tag::Disc;
  int n = 1;  // polydisc / ball
  int r = 1, s = 1;  // matrix ball

  int dim() const;
  std::string name() const;

  /// Parses "disc", "polydisc:n", "ball:n", "matrix-ball:rxs", "omega2",
  /// "omega2:normalized", "omega3". The normalized flag is reported through
  /// KernelSpec.
  static DomainSpec parse(const std::string& text, bool* normalized = nullptr);
};

struct KernelSpec {
  DomainSpec domain;
  double lambda = 1.0;
  int truncation = 20;  // omega3 series cap per index
  bool normalized = false;  // omega2 only: divide the raw kernel by 3

  static KernelSpec make(const std::string& domain_text, double lambda,
                         int truncation = 20);
};

/// Signed interior margin; positive inside, <= 0 on the boundary or outside.
double boundary_distance(const DomainSpec& d, const DomainPoint& z);
bool is_interior(const DomainSpec& d, const DomainPoint& z);
/// Throws a domain error naming the violated inequality. Points closer than
/// 1e-6 to the boundary are rejected.
void validate_point(const DomainSpec& d, const DomainPoint& z);

/// Polarized kernel K^lambda(z, w): holomorphic in z, anti-holomorphic in w,
/// positive on the diagonal. Principal-branch powers continued from the
/// diagonal; branch-cut violations raise an error.
Complex eval_polarized(const KernelSpec& k, const DomainPoint& z,
                       const DomainPoint& w);

/// Closed-path jets d^alpha dbar^beta K^lambda at z = w, orders <= 2 per
/// slot. Higher orders raise unsupported-order (callers fall back to jet_fd).
Complex jet_analytic(const KernelSpec& k, const DomainPoint& w,
                     const MultiIndex& alpha, const MultiIndex& beta);

/// Finite-difference oracle for the same jets: central differences applied
/// per variable of the polarized kernel, one Richardson level, error O(h^2).
Complex jet_fd(const KernelSpec& k, const DomainPoint& w,
               const MultiIndex& alpha, const MultiIndex& beta, double h);

/// Roundoff-balanced default step for a jet of the given total order.
double fd_default_step(int total_order);

/// Series coefficient of the omega3 Bergman kernel: the reciprocal monomial
/// norm (m+1) / (4 B(n+1, m+2) B(p+1, m+2)), via log-Gamma.
double omega3_coeff(int n, int m, int p);

/// All multi-indices of total order <= `order` in `dim` variables,
/// co-lexicographically sorted.
std::vector<MultiIndex> jet_index_list(int dim, int order);

/// Exact jet coefficient table: entry (i, j) holds
/// (d^{alpha_i} dbar^{beta_j} K^lambda)(w, w) / (alpha_i! beta_j!)
/// over jet_index_list(dim, order). Series-shift differentiation, exact to
/// rounding at every order.
ComplexMatrix jet_coeff_table(const KernelSpec& k, const DomainPoint& w,
                              int order);

}  // namespace cdk
