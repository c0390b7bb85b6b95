#pragma once

#include "cdkernel/complexmat.hpp"
#include "cdkernel/kernelzoo.hpp"

namespace cdk {

/// Disc automorphism z -> (z - a) / (1 - conj(a) z), vanishing at a.
struct MobiusMap {
  Complex a;
};

struct MobiusValue {
  Complex value;
  Complex jacobian;
};

MobiusValue mobius_eval(const MobiusMap& map, Complex z);

/// Relative residual of the Bergman transformation rule
/// B(z,w) = J(z) conj(J(w)) B(phi z, phi w) for the disc kernel at lambda=1.
double check_kernel_transform(const KernelSpec& k, const MobiusMap& map,
                              Complex z, Complex w);

/// Derivative of the matrix-ball automorphism at its own center:
/// u -> (I - WW*)^{-1/2} u (I - W*W)^{-1/2}, as an rs x rs matrix acting on
/// the row-major vectorization.
struct MatrixBallTangentMap {
  ComplexMatrix W;
  ComplexMatrix jac;
};

MatrixBallTangentMap mb_tangent_jacobian(const ComplexMatrix& w);

/// (H^t)^{-1}(W) = 1/(lambda p) * (conj(jac)^t jac)^{-1}, p = r + s.
HermitianMatrix curvature_via_homogeneity(double lambda, const ComplexMatrix& w);

struct DetExpansion {
  double remainder;    // det(I - ZZ*) - 1 + sum_i ||Z_i||^2
  double closed_r2;    // X11 X22 - |X12|^2 when r = 2, else 0
  bool has_closed_r2;
};

DetExpansion det_expansion_remainder(const ComplexMatrix& z);

/// Closed-form curvature coefficients T_ij of the omega2 Bergman kernel at
/// lambda = 1.
HermitianMatrix omega2_curv_closed(const DomainPoint& w);

}  // namespace cdk
