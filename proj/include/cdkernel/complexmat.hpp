#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdk {

using Complex = std::complex<double>;

enum class ErrorCode {
  Argument,
  Domain,
  Branch,
  Singular,
  UnsupportedOrder,
  Symmetry,
  Step,
  Parse,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 1 || cols < 1)
      throw Error(ErrorCode::Argument, "matrix dimensions must be positive");
  }
  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(Complex c) const;

  double max_abs() const;
  void check_finite() const;

private:
  int rows_, cols_;
  std::vector<Complex> data_;
};

/// Square matrix with the Hermitian symmetry invariant enforced at
/// construction: M(i,j) = conj(M(j,i)) within 1e-12 * max|entry|.
class HermitianMatrix {
public:
  explicit HermitianMatrix(const ComplexMatrix& m);
  static HermitianMatrix identity(int n);
  static HermitianMatrix diagonal(const std::vector<double>& d);

  int dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  const Complex& operator()(int i, int j) const { return mat_(i, j); }

private:
  ComplexMatrix mat_;
};

enum class PDClass { PositiveDefinite, Marginal, Indefinite };

struct PDVerdict {
  PDClass cls;
  double min_eigenvalue;
  double max_eigenvalue;
};

const char* pd_class_name(PDClass c);

// --- hermlin operations -------------------------------------------------

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> eig_hermitian(const HermitianMatrix& m);

/// Three-way positive definiteness classification with tolerance
/// tau = 1e-10 relative to max(1, |eigenvalues|).
PDVerdict pd_classify(const HermitianMatrix& m);

/// Hermitian PSD square root; rejects indefinite input.
HermitianMatrix sqrt_psd(const HermitianMatrix& m);

/// Hermitian inverse.
HermitianMatrix inverse(const HermitianMatrix& m);

struct MatrixNorms {
  double operator_norm;
  double trace_norm;
  double frobenius;
};

MatrixNorms norms(const ComplexMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);

Complex determinant(const ComplexMatrix& m);

/// Attempts a Cholesky factorization; true on success.
bool cholesky_ok(const HermitianMatrix& m);

/// D - B* A^{-1} B for the partition M = [[A,B],[B*,D]] with leading
/// k x k block A.
HermitianMatrix schur_complement(const HermitianMatrix& m, int k);

}  // namespace cdk
