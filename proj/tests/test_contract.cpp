#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdkernel/contract.hpp"
#include "cdkernel/holomaps.hpp"
#include "cdkernel/jetcurv.hpp"

#include <cmath>
#include <random>

using namespace cdk;

namespace {

std::mt19937_64 rng(31337);

ComplexMatrix rand_matrix(int r, int s, double scale = 1.0) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(r, s);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = Complex(gauss(rng), gauss(rng)) * scale;
  return m;
}

ComplexMatrix random_unitary(int n) {
  ComplexMatrix m = rand_matrix(n, n);
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

}  // namespace

TEST_CASE("origin norms") {
  OriginNorm l2 = OriginNorm::l2(2);
  CHECK(l2.eval({Complex(3, 0), Complex(4, 0)}) == doctest::Approx(5.0));
  OriginNorm linf = OriginNorm::linf(2);
  CHECK(linf.eval({Complex(3, 0), Complex(-4, 0)}) == doctest::Approx(4.0));
  OriginNorm op = OriginNorm::matrix_op(2, 2);
  // reshape of (1,0,0,1) is the identity: operator norm 1
  CHECK(op.eval({1.0, 0.0, 0.0, 1.0}) == doctest::Approx(1.0));
  // norm axioms on random vectors
  std::normal_distribution<double> gauss;
  for (const OriginNorm& n : {l2, linf, op}) {
    std::vector<Complex> u(n.dim()), v(n.dim());
    for (auto& c : u) c = Complex(gauss(rng), gauss(rng));
    for (auto& c : v) c = Complex(gauss(rng), gauss(rng));
    std::vector<Complex> sum(n.dim());
    for (int i = 0; i < n.dim(); ++i) sum[i] = u[i] + v[i];
    CHECK(n.eval(sum) <= n.eval(u) + n.eval(v) + 1e-12);
    std::vector<Complex> su(u);
    for (auto& c : su) c *= 2.5;
    CHECK(n.eval(su) == doctest::Approx(2.5 * n.eval(u)).epsilon(1e-12));
  }
}

TEST_CASE("a_norm exact targets") {
  CHECK(a_norm(ComplexMatrix::identity(3), OriginNorm::l2(3)).value ==
        doctest::Approx(1.0));

  ComplexMatrix a = rand_matrix(3, 3);
  ANormResult r = a_norm(a, OriginNorm::l2(3));
  CHECK_FALSE(r.approximate);
  CHECK(r.value == doctest::Approx(norms(a).operator_norm).epsilon(1e-12));

  // linf target: max row l2 norm
  ANormResult ri = a_norm(a, OriginNorm::linf(3));
  double want = 0.0;
  for (int i = 0; i < 3; ++i) {
    double row = 0.0;
    for (int j = 0; j < 3; ++j) row += std::norm(a(i, j));
    want = std::max(want, std::sqrt(row));
  }
  CHECK(ri.value == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("a_norm matrix-op target") {
  double lambda = 0.7;
  int r = 2, s = 2, p = r + s;
  double c = 1.0 / std::sqrt(lambda * p);
  ANormResult exact =
      a_norm(ComplexMatrix::identity(4).scaled(c), OriginNorm::matrix_op(r, s));
  CHECK_FALSE(exact.approximate);
  CHECK(exact.value == doctest::Approx(c).epsilon(1e-14));

  // the ascent path on a scaled unitary: value is |c| as well, since a
  // unitary maps the unit sphere onto itself
  ComplexMatrix cu = random_unitary(4).scaled(c);
  ANormResult approx = a_norm(cu, OriginNorm::matrix_op(r, s));
  CHECK(approx.approximate);
  CHECK(approx.restarts == 64);
  CHECK(approx.value == doctest::Approx(c).epsilon(1e-7));
}

TEST_CASE("a_norm gauge invariance") {
  ComplexMatrix a = rand_matrix(3, 3);
  ComplexMatrix u = random_unitary(3);
  for (auto target : {OriginNorm::l2(3), OriginNorm::linf(3)}) {
    double lhs = a_norm(a * u, target).value;
    double rhs = a_norm(a, target).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("ball curvature inequality") {
  DomainPoint o2(2, Complex(0, 0));
  CHECK(ball_curvature_inequality(KernelSpec::make("ball:2", 1.0), o2));
  CHECK(ball_curvature_inequality(KernelSpec::make("ball:2", 1.0 / 3.0), o2));
  CHECK_FALSE(
      ball_curvature_inequality(KernelSpec::make("ball:2", 1.0 / 3.0 - 1e-3), o2));
  CHECK_FALSE(ball_curvature_inequality(KernelSpec::make("disc", 0.4), {0.0}));
  // away from the origin the scaled comparison is the same
  DomainPoint w = {Complex(0.3, 0.1), Complex(-0.2, 0.25)};
  CHECK(ball_curvature_inequality(KernelSpec::make("ball:2", 0.5), w));
  CHECK_FALSE(ball_curvature_inequality(KernelSpec::make("ball:2", 0.2), w));
}

TEST_CASE("identity-multiple trace-to-operator norm") {
  CHECK(pmat_norm(1.0, 1, 1) == doctest::Approx(0.5));
  CHECK(pmat_norm(0.25, 2, 2) == doctest::Approx(1.0));
  CHECK(pmat_norm(1.0, 2, 3) == doctest::Approx(0.2));
  for (double lambda : {0.3, 1.0, 2.0})
    for (auto [r, s] : {std::pair{1, 2}, {2, 2}, {3, 2}})
      CHECK(pmat_norm_direct(lambda, r, s) ==
            doctest::Approx(pmat_norm(lambda, r, s)).epsilon(1e-12));
}

TEST_CASE("nu necessary conditions") {
  NuTests a = nu_tests(0.5, 2, 3);
  CHECK(a.nu == doctest::Approx(2.5));
  CHECK(a.contractive_necessary);
  CHECK_FALSE(a.completely_contractive_necessary);

  NuTests b = nu_tests(0.5, 1, 1);
  CHECK(b.contractive_necessary);
  CHECK(b.completely_contractive_necessary);

  NuTests c = nu_tests(0.2, 2, 2);
  CHECK_FALSE(c.contractive_necessary);
  CHECK_FALSE(c.completely_contractive_necessary);

  // cc implies contractive on a lambda grid
  for (double l = 0.05; l < 3.0; l += 0.05) {
    NuTests t = nu_tests(l, 2, 3);
    if (t.completely_contractive_necessary) CHECK(t.contractive_necessary);
  }
}

TEST_CASE("tensor-assembled polynomial norm") {
  {
    // all entries 1/sqrt(nu): formula gives s/nu
    double lambda = 1.0;
    int r = 2, s = 2;
    double nu = lambda * (r + s);
    std::vector<Complex> v(r * s, Complex(1.0 / std::sqrt(nu), 0.0));
    PaNorm p = pa_norm(v, lambda, r, s);
    CHECK(p.formula == doctest::Approx(s / nu));
    CHECK(p.direct == doctest::Approx(s / nu).epsilon(1e-12));
  }
  {
    std::vector<Complex> v(4, Complex(0, 0));
    v[0] = 1.0;
    PaNorm p = pa_norm(v, 1.0, 2, 2);
    CHECK(p.formula == doctest::Approx(1.0));
    CHECK(p.direct == doctest::Approx(1.0));
  }
  for (auto [r, s] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    for (int t = 0; t < 100; ++t) {
      std::normal_distribution<double> gauss;
      std::vector<Complex> v(r * s);
      for (auto& c : v) c = Complex(gauss(rng), gauss(rng));
      PaNorm p = pa_norm(v, 0.8, r, s);
      CHECK(std::abs(p.formula - p.direct) < 1e-10 * (1.0 + p.formula));
    }
  }
}

TEST_CASE("bisection thresholds") {
  auto [o2c, o2cc] = omega2_tests(1.0);
  CHECK(o2c.verdict);
  CHECK(o2cc.verdict);
  CHECK(o2cc.computed_threshold == doctest::Approx(11.0 / 20.0).epsilon(1e-8));
  CHECK_FALSE(o2cc.discrepancy);
  CHECK(o2c.discrepancy);  // computed value does not match the claimed 5/16
  CHECK(o2c.computed_threshold == doctest::Approx(5.0 / 14.0).epsilon(1e-8));
  CHECK_FALSE(o2c.notes.empty());

  auto [o3c, o3cc] = omega3_tests(1.0);
  CHECK(o3c.computed_threshold == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(o3cc.computed_threshold == doctest::Approx(5.0 / 9.0).epsilon(1e-8));
  CHECK_FALSE(o3c.discrepancy);
  CHECK_FALSE(o3cc.discrepancy);

  CHECK(omega3_tests(0.25).first.verdict);
  CHECK_FALSE(omega3_tests(0.25 - 1e-6).first.verdict);
  CHECK(omega3_tests(5.0 / 9.0).second.verdict);
  // the gap window: contractive passes, completely contractive fails
  CHECK(omega3_tests(0.3).first.verdict);
  CHECK_FALSE(omega3_tests(0.3).second.verdict);
}

TEST_CASE("verdicts are monotone in lambda") {
  for (const char* name : {"omega2-contract", "omega2-cc", "omega3-contract",
                           "omega3-cc", "ball:2", "nu:2x3", "nu-cc:2x3"}) {
    bool seen_true = false;
    for (double l = 0.05; l <= 3.0; l += 0.04) {
      bool v = contract_test(name, l).verdict;
      if (seen_true) CHECK(v);
      seen_true = seen_true || v;
    }
    CHECK(seen_true);
  }
  CHECK_THROWS_AS(contract_test("omega4-contract", 1.0), Error);
}

TEST_CASE("contract_test thresholds for named families") {
  CHECK(contract_test("ball:2", 1.0).computed_threshold ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(contract_test("nu:2x3", 1.0).computed_threshold ==
        doctest::Approx(0.2).epsilon(1e-8));
  CHECK(contract_test("nu-cc:2x3", 1.0).computed_threshold ==
        doctest::Approx(0.6).epsilon(1e-8));
}

TEST_CASE("homogeneity reduction of the contractivity norm") {
  // transporting A(W)^t to the origin through the tangent map leaves the
  // criterion value at 1/sqrt(lambda p)
  double lambda = 0.45;
  int p = 4;
  double want = 1.0 / std::sqrt(lambda * p);
  KernelSpec k = KernelSpec::make("matrix-ball:2x2", lambda);
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix w = rand_matrix(2, 2, 0.15);
    if (norms(w).operator_norm >= 0.5) continue;
    DomainPoint pw = {w(0, 0), w(0, 1), w(1, 0), w(1, 1)};
    LocalTuple tup = local_tuple(k, pw);
    MatrixBallTangentMap map = mb_tangent_jacobian(w);
    ComplexMatrix transported = map.jac * tup.A.transpose();
    ANormResult r = a_norm(transported, OriginNorm::matrix_op(2, 2));
    CHECK(r.value == doctest::Approx(want).epsilon(1e-6));
  }
}
