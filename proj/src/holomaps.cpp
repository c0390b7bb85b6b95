#include "cdkernel/holomaps.hpp"

#include <cmath>

namespace cdk {

MobiusValue mobius_eval(const MobiusMap& map, Complex z) {
  if (std::abs(map.a) >= 1.0)
    throw Error(ErrorCode::Argument, "Mobius parameter must satisfy |a| < 1");
  Complex den = 1.0 - std::conj(map.a) * z;
  Complex value = (z - map.a) / den;
  Complex jac = (1.0 - std::norm(map.a)) / (den * den);
  return MobiusValue{value, jac};
}

double check_kernel_transform(const KernelSpec& k, const MobiusMap& map,
                              Complex z, Complex w) {
  if (k.domain.tag != DomainSpec::Tag::Disc)
    throw Error(ErrorCode::Argument, "kernel transform check is disc-only");
  MobiusValue fz = mobius_eval(map, z), fw = mobius_eval(map, w);
  Complex lhs = eval_polarized(k, {z}, {w});
  Complex rhs = fz.jacobian * std::conj(fw.jacobian) *
                eval_polarized(k, {fz.value}, {fw.value});
  return std::abs(lhs - rhs) / std::abs(lhs);
}

namespace {

HermitianMatrix inv_sqrt(const HermitianMatrix& m) {
  return sqrt_psd(inverse(m));
}

ComplexMatrix gram_left(const ComplexMatrix& w) {  // I - WW*
  int r = w.rows();
  return ComplexMatrix::identity(r) - w * w.adjoint();
}

ComplexMatrix gram_right(const ComplexMatrix& w) {  // I - W*W
  int s = w.cols();
  return ComplexMatrix::identity(s) - w.adjoint() * w;
}

}  // namespace

MatrixBallTangentMap mb_tangent_jacobian(const ComplexMatrix& w) {
  if (norms(w).operator_norm >= 1.0)
    throw Error(ErrorCode::Domain, "matrix-ball point needs operator norm < 1");
  const int r = w.rows(), s = w.cols();
  HermitianMatrix a = inv_sqrt(HermitianMatrix(gram_left(w)));
  HermitianMatrix b = inv_sqrt(HermitianMatrix(gram_right(w)));
  // u -> A u B on row-major vec(u): jac[(i,k),(j,l)] = A(i,j) B(l,k)
  ComplexMatrix jac(r * s, r * s);
  for (int i = 0; i < r; ++i)
    for (int kk = 0; kk < s; ++kk)
      for (int j = 0; j < r; ++j)
        for (int l = 0; l < s; ++l)
          jac(i * s + kk, j * s + l) = a(i, j) * b(l, kk);
  return MatrixBallTangentMap{w, jac};
}

HermitianMatrix curvature_via_homogeneity(double lambda, const ComplexMatrix& w) {
  if (lambda <= 0.0) throw Error(ErrorCode::Argument, "lambda must be positive");
  const double p = w.rows() + w.cols();
  MatrixBallTangentMap map = mb_tangent_jacobian(w);
  ComplexMatrix g = map.jac.adjoint() * map.jac;  // conj(jac)^t jac
  return HermitianMatrix(
      inverse(HermitianMatrix(g)).matrix().scaled(1.0 / (lambda * p)));
}

DetExpansion det_expansion_remainder(const ComplexMatrix& z) {
  ComplexMatrix x = z * z.adjoint();
  int r = z.rows();
  double rowsum = 0.0;
  for (int i = 0; i < r; ++i) rowsum += x(i, i).real();
  double det = determinant(gram_left(z)).real();
  DetExpansion out{det - 1.0 + rowsum, 0.0, r == 2};
  if (r == 2)
    out.closed_r2 = x(0, 0).real() * x(1, 1).real() - std::norm(x(0, 1));
  return out;
}

HermitianMatrix omega2_curv_closed(const DomainPoint& w) {
  validate_point(DomainSpec{DomainSpec::Tag::Omega2}, w);
  double a2 = std::norm(w[0]);     // |w1|^2
  double b2 = std::norm(w[1]);     // |w2|^2
  double c = (1.0 - a2) * (1.0 - a2) - b2;
  double d = 3.0 * (1.0 - a2) * (1.0 - a2) + b2;
  double inv2 = 1.0 / (c * c) + 1.0 / (d * d);
  ComplexMatrix t(2, 2);
  t(0, 0) = 6.0 * (1.0 / c - 1.0 / d) + 12.0 * a2 * b2 * inv2;
  // off-diagonal phase follows the H_ij = d_i dbar_j log K convention
  t(0, 1) = 6.0 * std::conj(w[0]) * w[1] * (1.0 - a2) * inv2;
  t(1, 0) = std::conj(t(0, 1));
  t(1, 1) = 3.0 * (1.0 - a2) * (1.0 - a2) * inv2;
  return HermitianMatrix(t);
}

}  // namespace cdk
