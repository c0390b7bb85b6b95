#pragma once

#include "cdkernel/complexmat.hpp"
#include "cdkernel/kernelzoo.hpp"

#include <map>

namespace cdk {

/// Grammian of kernel jets at a point: entries
/// (d^alpha dbar^beta K^lambda)(w,w) / (alpha! beta!), multi-indices of total
/// order <= `order` in co-lexicographic order.
struct JetMatrix {
  DomainPoint point;
  double lambda;
  int order;
  std::vector<MultiIndex> index_list;
  HermitianMatrix gram;
};

/// H(i,j) = lambda * (d_i dbar_j log K)(w) with K the lambda = 1 kernel;
/// positive definite for every zoo kernel at interior points. The
/// differential-geometric sign convention would be -H.
struct CurvatureMatrix {
  DomainPoint point;
  double lambda;
  HermitianMatrix H;
};

/// The localized nilpotent tuple: N_k is (m+1) x (m+1) with first row
/// (0, alpha_k^t) and zeros elsewhere; alpha_k is the k-th column of A and
/// A^t conj(A) = (H^t)^{-1}.
struct LocalTuple {
  DomainPoint point;
  ComplexMatrix A;                 // m x m
  std::vector<ComplexMatrix> N;    // m matrices, (m+1) x (m+1)
};

/// Polynomial in m variables, multi-index -> coefficient.
class Polynomial {
public:
  Polynomial(int variables, std::map<MultiIndex, Complex> terms);
  static Polynomial constant(int variables, Complex c);
  static Polynomial coordinate(int variables, int k);

  int variables() const { return variables_; }
  const std::map<MultiIndex, Complex>& terms() const { return terms_; }
  Complex eval(const DomainPoint& z) const;
  std::vector<Complex> gradient(const DomainPoint& z) const;
  Polynomial operator*(const Polynomial& rhs) const;

private:
  int variables_;
  std::map<MultiIndex, Complex> terms_;
};

JetMatrix jet_gram(const KernelSpec& k, const DomainPoint& w, int order);

CurvatureMatrix curvature(const KernelSpec& k, const DomainPoint& w);

/// Second route to the same matrix: jets of K^lambda itself,
/// H_ij = lambda-free quotient (K d_i dbar_j K - d_i K dbar_j K) / K^2
/// evaluated directly at the requested lambda. Used as a cross-check against
/// the lambda-scaled base-kernel path.
HermitianMatrix curvature_direct(const KernelSpec& k, const DomainPoint& w);

/// Finite-difference route to the same matrix, built from jet_fd values of
/// K^lambda at the requested lambda. h = 0 picks the roundoff-balanced default.
HermitianMatrix curvature_fd(const KernelSpec& k, const DomainPoint& w,
                             double h = 0.0);

LocalTuple local_tuple(const KernelSpec& k, const DomainPoint& w);

struct WallachResult {
  int max_order;
  int index;            // largest PD order, 0 if even order 1 fails
  bool saturated;       // true when every order up to max_order is PD
  std::vector<PDVerdict> verdicts;  // one per order 1..max_order
};

WallachResult wallach_index(const KernelSpec& k, const DomainPoint& w,
                            int max_order);

/// rho(f) = [[f(w), grad f(w) A^t], [0, f(w) I_m]].
ComplexMatrix rho_matrix(const KernelSpec& k, const DomainPoint& w,
                         const Polynomial& f);
ComplexMatrix rho_matrix(const LocalTuple& tuple, const Polynomial& f);

}  // namespace cdk
