#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdkernel/complexmat.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace cdk;

namespace {

std::mt19937_64 rng(12345);

ComplexMatrix random_matrix(int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = Complex(gauss(rng), gauss(rng)) * scale;
  return m;
}

HermitianMatrix random_hermitian(int n) {
  ComplexMatrix m = random_matrix(n, n);
  return HermitianMatrix(m.operator+(m.adjoint()).scaled(0.5));
}

// Gram-Schmidt on random columns; independent of the library eigensolver.
ComplexMatrix random_unitary(int n) {
  ComplexMatrix m = random_matrix(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(m(i, k)) * m(i, j);
      for (int i = 0; i < n; ++i) m(i, j) -= dot * m(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(m(i, j));
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) m(i, j) /= nrm;
  }
  return m;
}

// Real roots of det(M - xI) by sign-change bisection on a fine grid;
// LU-based determinant only, no eigensolver involved.
std::vector<double> charpoly_roots(const HermitianMatrix& m) {
  int n = m.dim();
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(m(i, j));
    bound = std::max(bound, row);
  }
  bound += 1.0;
  auto p = [&](double x) {
    ComplexMatrix shifted = m.matrix();
    for (int i = 0; i < n; ++i) shifted(i, i) -= x;
    return determinant(shifted).real();
  };
  std::vector<double> roots;
  const int grid = 4000;
  double prev_x = -bound, prev_v = p(prev_x);
  for (int g = 1; g <= grid; ++g) {
    double x = -bound + 2.0 * bound * g / grid;
    double v = p(x);
    if ((prev_v < 0) != (v < 0)) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((p(lo) < 0) != (p(mid) < 0))
          hi = mid;
        else
          lo = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

}  // namespace

TEST_CASE("hermitian eigenvalues") {
  auto id = eig_hermitian(HermitianMatrix::identity(3));
  CHECK(id == std::vector<double>{1.0, 1.0, 1.0});

  auto d = eig_hermitian(HermitianMatrix::diagonal({4.0, 10.0 / 3.0}));
  CHECK(d[0] == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(4.0).epsilon(1e-14));

  HermitianMatrix m = random_hermitian(5);
  auto eigs = eig_hermitian(m);
  CHECK(std::is_sorted(eigs.begin(), eigs.end()));
  auto roots = charpoly_roots(m);
  REQUIRE(roots.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(eigs[i] == doctest::Approx(roots[i]).epsilon(1e-8));

  double tr = 0.0, sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    tr += m(i, i).real();
    sum += eigs[i];
  }
  CHECK(sum == doctest::Approx(tr).epsilon(1e-10));
}

TEST_CASE("eigenvalues invariant under unitary conjugation") {
  HermitianMatrix m = random_hermitian(4);
  ComplexMatrix u = random_unitary(4);
  HermitianMatrix conj(u.adjoint() * m.matrix() * u);
  auto a = eig_hermitian(m);
  auto b = eig_hermitian(conj);
  for (int i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
}

TEST_CASE("positive definiteness classification") {
  CHECK(pd_classify(HermitianMatrix::identity(2)).cls ==
        PDClass::PositiveDefinite);

  ComplexMatrix ones(2, 2);
  ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1.0;
  PDVerdict v = pd_classify(HermitianMatrix(ones));
  CHECK(v.cls == PDClass::Marginal);
  CHECK(v.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.max_eigenvalue == doctest::Approx(2.0));

  CHECK(pd_classify(HermitianMatrix::diagonal({1.0, -0.5})).cls ==
        PDClass::Indefinite);
}

TEST_CASE("pd classification agrees with Cholesky") {
  for (int t = 0; t < 20; ++t) {
    HermitianMatrix m = random_hermitian(4);
    PDVerdict v = pd_classify(m);
    if (v.cls == PDClass::PositiveDefinite) CHECK(cholesky_ok(m));
    if (v.cls == PDClass::Indefinite) CHECK_FALSE(cholesky_ok(m));
  }
}

TEST_CASE("psd square root") {
  ComplexMatrix id = sqrt_psd(HermitianMatrix::identity(3)).matrix();
  for (int i = 0; i < 3; ++i) CHECK(id(i, i) == Complex(1.0, 0.0));

  auto d = sqrt_psd(HermitianMatrix::diagonal({4.0, 9.0}));
  CHECK(d(0, 0).real() == doctest::Approx(2.0));
  CHECK(d(1, 1).real() == doctest::Approx(3.0));

  ComplexMatrix a = random_matrix(4, 4);
  HermitianMatrix gram(a.adjoint() * a);
  HermitianMatrix root = sqrt_psd(gram);
  ComplexMatrix sq = root.matrix() * root.matrix();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      num += std::norm(sq(i, j) - gram(i, j));
      den += std::norm(gram(i, j));
    }
  CHECK(std::sqrt(num / den) < 1e-10);

  CHECK_THROWS_AS(sqrt_psd(HermitianMatrix::diagonal({1.0, -1.0})), Error);
}

TEST_CASE("sqrt scaling law") {
  ComplexMatrix a = random_matrix(3, 3);
  HermitianMatrix gram(a.adjoint() * a);
  double c = 2.7;
  ComplexMatrix lhs = sqrt_psd(HermitianMatrix(gram.matrix().scaled(c))).matrix();
  ComplexMatrix rhs = sqrt_psd(gram).matrix().scaled(std::sqrt(c));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(lhs(i, j) - rhs(i, j)) < 1e-12 * (1.0 + std::abs(rhs(i, j))));
}

TEST_CASE("norms and singular values") {
  auto n = norms(ComplexMatrix::identity(4));
  CHECK(n.operator_norm == doctest::Approx(1.0));
  CHECK(n.trace_norm == doctest::Approx(4.0));

  // rank one uv*
  ComplexMatrix uv(3, 2);
  uv(0, 0) = 1.0;  // u = e1, v = e1
  auto r1 = norms(uv);
  CHECK(r1.operator_norm == doctest::Approx(1.0));
  CHECK(r1.trace_norm == doctest::Approx(1.0));

  ComplexMatrix m = random_matrix(3, 4);
  auto sv = singular_values(m);
  auto gram_eigs = eig_hermitian(HermitianMatrix(m * m.adjoint()));
  std::sort(sv.begin(), sv.end());
  for (int i = 0; i < 3; ++i)
    CHECK(sv[i] * sv[i] == doctest::Approx(gram_eigs[i]).epsilon(1e-10));

  // duality |tr(AB*)| <= ||A||_op ||B||_tr
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix a = random_matrix(3, 3), b = random_matrix(3, 3);
    Complex tr = 0.0;
    ComplexMatrix prod = a * b.adjoint();
    for (int i = 0; i < 3; ++i) tr += prod(i, i);
    CHECK(std::abs(tr) <= norms(a).operator_norm * norms(b).trace_norm + 1e-10);
  }
}

TEST_CASE("schur complement") {
  {
    HermitianMatrix m = HermitianMatrix::diagonal({1.0, 5.0});
    auto s = schur_complement(m, 1);
    CHECK(s.dim() == 1);
    CHECK(s(0, 0).real() == doctest::Approx(5.0));
  }
  {
    ComplexMatrix m(2, 2);
    m(0, 0) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 1.0;
    auto s = schur_complement(HermitianMatrix(m), 1);
    CHECK(s(0, 0).real() == doctest::Approx(0.5));
  }
  for (int t = 0; t < 10; ++t) {
    HermitianMatrix m = random_hermitian(5);
    ComplexMatrix lead(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) lead(i, j) = m(i, j);
    if (std::abs(determinant(lead)) < 1e-6) continue;
    auto s = schur_complement(m, 2);
    double lhs = determinant(m.matrix()).real();
    double rhs = determinant(lead).real() * determinant(s.matrix()).real();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("symmetry violations rejected") {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(1.0, 0.0);
  m(1, 0) = Complex(0.5, 0.0);
  CHECK_THROWS_AS(HermitianMatrix{m}, Error);
}
