#include "cdkernel/jetcurv.hpp"

#include <cmath>

namespace cdk {

namespace {

HermitianMatrix hermitianize(const ComplexMatrix& m) {
  // series arithmetic leaves rounding-level asymmetry; average it away
  ComplexMatrix h = m.adjoint();
  return HermitianMatrix(m.operator+(h).scaled(0.5));
}

HermitianMatrix curvature_from_table(const KernelSpec& k, const DomainPoint& w,
                                     double scale) {
  const int m = k.domain.dim();
  ComplexMatrix table = jet_coeff_table(k, w, 1);
  auto indices = jet_index_list(m, 1);
  // locate the zero index and the unit indices in the colex list
  std::vector<int> pos(m + 1, -1);
  for (size_t i = 0; i < indices.size(); ++i) {
    int ord = index_order(indices[i]);
    if (ord == 0) pos[0] = static_cast<int>(i);
    if (ord == 1)
      for (int v = 0; v < m; ++v)
        if (indices[i][v] == 1) pos[1 + v] = static_cast<int>(i);
  }
  Complex kv = table(pos[0], pos[0]);
  ComplexMatrix h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // table holds d^alpha dbar^beta K; H_ij = (K K_{ij} - K_i K_j) / K^2
      Complex kij = table(pos[1 + i], pos[1 + j]);
      Complex ki = table(pos[1 + i], pos[0]);
      Complex kj = table(pos[0], pos[1 + j]);
      h(i, j) = scale * (kv * kij - ki * kj) / (kv * kv);
    }
  return hermitianize(h);
}

}  // namespace

JetMatrix jet_gram(const KernelSpec& k, const DomainPoint& w, int order) {
  if (order < 1 || order > 4)
    throw Error(ErrorCode::UnsupportedOrder, "jet_gram order must be in 1..4");
  ComplexMatrix table = jet_coeff_table(k, w, order);
  return JetMatrix{w, k.lambda, order, jet_index_list(k.domain.dim(), order),
                   hermitianize(table)};
}

CurvatureMatrix curvature(const KernelSpec& k, const DomainPoint& w) {
  KernelSpec base = k;
  base.lambda = 1.0;
  return CurvatureMatrix{w, k.lambda, curvature_from_table(base, w, k.lambda)};
}

HermitianMatrix curvature_direct(const KernelSpec& k, const DomainPoint& w) {
  return curvature_from_table(k, w, 1.0);
}

HermitianMatrix curvature_fd(const KernelSpec& k, const DomainPoint& w,
                             double h) {
  const int m = k.domain.dim();
  if (h <= 0.0) h = fd_default_step(2);
  MultiIndex zero(m, 0);
  Complex kv = eval_polarized(k, w, w);
  std::vector<Complex> ki(m), kj(m);
  ComplexMatrix hm(m, m);
  for (int i = 0; i < m; ++i) {
    MultiIndex ei(zero);
    ei[i] = 1;
    ki[i] = jet_fd(k, w, ei, zero, h);
    kj[i] = jet_fd(k, w, zero, ei, h);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      MultiIndex ei(zero), ej(zero);
      ei[i] = 1;
      ej[j] = 1;
      Complex kij = jet_fd(k, w, ei, ej, h);
      hm(i, j) = (kv * kij - ki[i] * kj[j]) / (kv * kv);
    }
  return hermitianize(hm);
}

LocalTuple local_tuple(const KernelSpec& k, const DomainPoint& w) {
  const int m = k.domain.dim();
  CurvatureMatrix cv = curvature(k, w);
  if (pd_classify(cv.H).cls != PDClass::PositiveDefinite)
    throw Error(ErrorCode::Domain, "local_tuple: curvature not positive definite");
  HermitianMatrix ht(cv.H.matrix().transpose());
  // Hermitian-root gauge: A^t = ((H^t)^{-1})^{1/2}
  HermitianMatrix at = sqrt_psd(inverse(ht));
  LocalTuple out{w, at.matrix().transpose(), {}};
  out.N.reserve(m);
  for (int kcol = 0; kcol < m; ++kcol) {
    ComplexMatrix nk(m + 1, m + 1);
    for (int j = 0; j < m; ++j) nk(0, 1 + j) = out.A(j, kcol);
    out.N.push_back(nk);
  }
  return out;
}

WallachResult wallach_index(const KernelSpec& k, const DomainPoint& w,
                            int max_order) {
  if (max_order < 1 || max_order > 4)
    throw Error(ErrorCode::UnsupportedOrder, "wallach max_order must be in 1..4");
  WallachResult res{max_order, 0, true, {}};
  for (int n = 1; n <= max_order; ++n) {
    PDVerdict v = pd_classify(jet_gram(k, w, n).gram);
    res.verdicts.push_back(v);
    if (v.cls == PDClass::PositiveDefinite && res.saturated) {
      res.index = n;
    } else {
      res.saturated = false;
    }
  }
  return res;
}

Polynomial::Polynomial(int variables, std::map<MultiIndex, Complex> terms)
    : variables_(variables), terms_(std::move(terms)) {
  for (const auto& [idx, c] : terms_) {
    (void)c;
    if (static_cast<int>(idx.size()) != variables_)
      throw Error(ErrorCode::Argument, "polynomial term arity mismatch");
    for (int e : idx)
      if (e < 0) throw Error(ErrorCode::Argument, "negative exponent");
  }
}

Polynomial Polynomial::constant(int variables, Complex c) {
  return Polynomial(variables, {{MultiIndex(variables, 0), c}});
}

Polynomial Polynomial::coordinate(int variables, int k) {
  MultiIndex idx(variables, 0);
  idx[k] = 1;
  return Polynomial(variables, {{idx, Complex(1, 0)}});
}

Complex Polynomial::eval(const DomainPoint& z) const {
  Complex sum = 0.0;
  for (const auto& [idx, c] : terms_) {
    Complex t = c;
    for (int v = 0; v < variables_; ++v)
      for (int e = 0; e < idx[v]; ++e) t *= z[v];
    sum += t;
  }
  return sum;
}

std::vector<Complex> Polynomial::gradient(const DomainPoint& z) const {
  std::vector<Complex> g(variables_, Complex(0, 0));
  for (const auto& [idx, c] : terms_) {
    for (int v = 0; v < variables_; ++v) {
      if (idx[v] == 0) continue;
      Complex t = c * double(idx[v]);
      for (int u = 0; u < variables_; ++u) {
        int e = idx[u] - (u == v ? 1 : 0);
        for (int i = 0; i < e; ++i) t *= z[u];
      }
      g[v] += t;
    }
  }
  return g;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (variables_ != rhs.variables_)
    throw Error(ErrorCode::Argument, "polynomial arity mismatch");
  std::map<MultiIndex, Complex> out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : rhs.terms_) {
      MultiIndex s(a);
      for (int v = 0; v < variables_; ++v) s[v] += b[v];
      out[s] += ca * cb;
    }
  return Polynomial(variables_, std::move(out));
}

ComplexMatrix rho_matrix(const LocalTuple& tuple, const Polynomial& f) {
  const int m = static_cast<int>(tuple.A.rows());
  if (f.variables() != m)
    throw Error(ErrorCode::Argument, "rho_matrix: polynomial arity mismatch");
  Complex fw = f.eval(tuple.point);
  std::vector<Complex> grad = f.gradient(tuple.point);
  ComplexMatrix at = tuple.A.transpose();
  ComplexMatrix rho(m + 1, m + 1);
  rho(0, 0) = fw;
  for (int j = 0; j < m; ++j) {
    rho(1 + j, 1 + j) = fw;
    Complex row = 0.0;
    for (int i = 0; i < m; ++i) row += grad[i] * at(i, j);
    rho(0, 1 + j) = row;
  }
  return rho;
}

ComplexMatrix rho_matrix(const KernelSpec& k, const DomainPoint& w,
                         const Polynomial& f) {
  return rho_matrix(local_tuple(k, w), f);
}

}  // namespace cdk
