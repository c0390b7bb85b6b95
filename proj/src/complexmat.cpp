#include "cdkernel/complexmat.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace cdk {

namespace {

using EMat = Eigen::MatrixXcd;

EMat to_eigen(const ComplexMatrix& m) {
  EMat e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

ComplexMatrix from_eigen(const EMat& e) {
  ComplexMatrix m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

constexpr double kPdTau = 1e-10;

}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw Error(ErrorCode::Argument, "matrix product dimension mismatch");
  return from_eigen(to_eigen(*this) * to_eigen(rhs));
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw Error(ErrorCode::Argument, "matrix sum dimension mismatch");
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + rhs.data_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw Error(ErrorCode::Argument, "matrix difference dimension mismatch");
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - rhs.data_[k];
  return r;
}

ComplexMatrix ComplexMatrix::scaled(Complex c) const {
  ComplexMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = c * data_[k];
  return r;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

void ComplexMatrix::check_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::Argument, "matrix entry is not finite");
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : mat_(m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::Symmetry, "Hermitian matrix must be square");
  m.check_finite();
  const double tol = 1e-12 * std::max(1.0, m.max_abs());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
        throw Error(ErrorCode::Symmetry, "Hermitian symmetry violated at (" +
                                             std::to_string(i) + "," +
                                             std::to_string(j) + ")");
    }
  }
  // exact symmetrization so downstream solvers see clean input
  for (int i = 0; i < mat_.rows(); ++i) {
    mat_(i, i) = Complex(mat_(i, i).real(), 0.0);
    for (int j = i + 1; j < mat_.cols(); ++j) {
      Complex avg = 0.5 * (mat_(i, j) + std::conj(mat_(j, i)));
      mat_(i, j) = avg;
      mat_(j, i) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return HermitianMatrix(m);
}

const char* pd_class_name(PDClass c) {
  switch (c) {
    case PDClass::PositiveDefinite:
      return "positive-definite";
    case PDClass::Marginal:
      return "marginal";
    case PDClass::Indefinite:
      return "indefinite";
  }
  return "unknown";
}

std::vector<double> eig_hermitian(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(m.matrix()),
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::Argument, "Hermitian eigensolver failed");
  std::vector<double> out(m.dim());
  for (int i = 0; i < m.dim(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

PDVerdict pd_classify(const HermitianMatrix& m) {
  auto ev = eig_hermitian(m);
  double mn = ev.front(), mx = ev.back();
  double thr = kPdTau * std::max(1.0, std::abs(mx));
  PDClass cls;
  if (mn > thr)
    cls = PDClass::PositiveDefinite;
  else if (mn < -thr)
    cls = PDClass::Indefinite;
  else
    cls = PDClass::Marginal;
  return PDVerdict{cls, mn, mx};
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m) {
  if (pd_classify(m).cls == PDClass::Indefinite)
    throw Error(ErrorCode::Domain, "sqrt_psd: matrix is indefinite");
  Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(m.matrix()));
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::Argument, "Hermitian eigensolver failed");
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  EMat r = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  return HermitianMatrix(from_eigen(r));
}

HermitianMatrix inverse(const HermitianMatrix& m) {
  EMat e = to_eigen(m.matrix());
  Eigen::FullPivLU<EMat> lu(e);
  if (!lu.isInvertible())
    throw Error(ErrorCode::Singular, "matrix is singular");
  return HermitianMatrix(from_eigen(lu.inverse()));
}

MatrixNorms norms(const ComplexMatrix& m) {
  auto sv = singular_values(m);
  double op = sv.empty() ? 0.0 : sv.front();
  double tr = 0.0, fr = 0.0;
  for (double s : sv) {
    tr += s;
    fr += s * s;
  }
  return MatrixNorms{op, tr, std::sqrt(fr)};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<EMat> svd(to_eigen(m));
  std::vector<double> out(svd.singularValues().size());
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    out[i] = svd.singularValues()(i);
  return out;  // descending
}

Complex determinant(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::Argument, "determinant of non-square matrix");
  return to_eigen(m).determinant();
}

bool cholesky_ok(const HermitianMatrix& m) {
  Eigen::LLT<EMat> llt(to_eigen(m.matrix()));
  return llt.info() == Eigen::Success;
}

HermitianMatrix schur_complement(const HermitianMatrix& m, int k) {
  int n = m.dim();
  if (k < 1 || k >= n)
    throw Error(ErrorCode::Argument, "schur_complement: bad block size");
  EMat e = to_eigen(m.matrix());
  EMat a = e.topLeftCorner(k, k);
  Eigen::FullPivLU<EMat> lu(a);
  if (!lu.isInvertible())
    throw Error(ErrorCode::Singular, "schur_complement: leading block singular");
  EMat b = e.topRightCorner(k, n - k);
  EMat d = e.bottomRightCorner(n - k, n - k);
  return HermitianMatrix(from_eigen(d - b.adjoint() * lu.solve(b)));
}

}  // namespace cdk
