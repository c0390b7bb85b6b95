#include "cdkernel/kernelzoo.hpp"

#include "jetseries.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace cdk {

using detail::Exps;
using detail::Series;
using detail::SeriesLayout;
using detail::SparsePoly;

int index_order(const MultiIndex& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

bool colex_less(const MultiIndex& a, const MultiIndex& b) {
  for (size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

int DomainSpec::dim() const {
  switch (tag) {
    case Tag::Disc:
      return 1;
    case Tag::Polydisc:
    case Tag::Ball:
      return n;
    case Tag::MatrixBall:
      return r * s;
    case Tag::Omega2:
      return 2;
    case Tag::Omega3:
      return 3;
  }
  return 0;
}

std::string DomainSpec::name() const {
  switch (tag) {
    case Tag::Disc:
      return "disc";
    case Tag::Polydisc:
      return "polydisc:" + std::to_string(n);
    case Tag::Ball:
      return "ball:" + std::to_string(n);
    case Tag::MatrixBall:
      return "matrix-ball:" + std::to_string(r) + "x" + std::to_string(s);
    case Tag::Omega2:
      return "omega2";
    case Tag::Omega3:
      return "omega3";
  }
  return "?";
}

DomainSpec DomainSpec::parse(const std::string& text, bool* normalized) {
  if (normalized) *normalized = false;
  DomainSpec d;
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::Parse, "bad kernel string '" + text + "': " + why);
  };
  auto parse_count = [&](const std::string& s) {
    try {
      size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size() || v < 1) bad("expected positive count");
      return v;
    } catch (const std::exception&) {
      bad("expected positive count");
      return 0;
    }
  };
  if (text == "disc") {
    d.tag = Tag::Disc;
  } else if (text.rfind("polydisc:", 0) == 0) {
    d.tag = Tag::Polydisc;
    d.n = parse_count(text.substr(9));
  } else if (text.rfind("ball:", 0) == 0) {
    d.tag = Tag::Ball;
    d.n = parse_count(text.substr(5));
  } else if (text.rfind("matrix-ball:", 0) == 0) {
    d.tag = Tag::MatrixBall;
    std::string rest = text.substr(12);
    auto x = rest.find('x');
    if (x == std::string::npos) bad("expected matrix-ball:RxS");
    d.r = parse_count(rest.substr(0, x));
    d.s = parse_count(rest.substr(x + 1));
  } else if (text == "omega2" || text == "omega2:normalized") {
    d.tag = Tag::Omega2;
    if (normalized && text == "omega2:normalized") *normalized = true;
  } else if (text == "omega3") {
    d.tag = Tag::Omega3;
  } else {
    bad("unknown domain tag");
  }
  return d;
}

KernelSpec KernelSpec::make(const std::string& domain_text, double lambda,
                            int truncation) {
  KernelSpec k;
  k.domain = DomainSpec::parse(domain_text, &k.normalized);
  if (lambda <= 0.0)
    throw Error(ErrorCode::Argument, "lambda must be positive");
  if (truncation < 1)
    throw Error(ErrorCode::Argument, "truncation must be >= 1");
  k.lambda = lambda;
  k.truncation = truncation;
  return k;
}

// --- domain geometry ----------------------------------------------------

double boundary_distance(const DomainSpec& d, const DomainPoint& z) {
  if (static_cast<int>(z.size()) != d.dim())
    throw Error(ErrorCode::Argument, "point dimension mismatch");
  switch (d.tag) {
    case DomainSpec::Tag::Disc:
      return 1.0 - std::abs(z[0]);
    case DomainSpec::Tag::Polydisc: {
      double m = 1.0;
      for (const auto& c : z) m = std::min(m, 1.0 - std::abs(c));
      return m;
    }
    case DomainSpec::Tag::Ball: {
      double n2 = 0.0;
      for (const auto& c : z) n2 += std::norm(c);
      return 1.0 - std::sqrt(n2);
    }
    case DomainSpec::Tag::MatrixBall: {
      ComplexMatrix m(d.r, d.s);
      for (int i = 0; i < d.r; ++i)
        for (int j = 0; j < d.s; ++j) m(i, j) = z[i * d.s + j];
      return 1.0 - norms(m).operator_norm;
    }
    case DomainSpec::Tag::Omega2: {
      double a = std::abs(z[0]);
      return std::min(1.0 - a, (1.0 - a * a) - std::abs(z[1]));
    }
    case DomainSpec::Tag::Omega3: {
      double a = std::abs(z[0]), c = std::abs(z[2]);
      double slack = (1.0 - a * a) * (1.0 - c * c) - std::norm(z[1]);
      return std::min({1.0 - a, 1.0 - c, slack});
    }
  }
  return -1.0;
}

bool is_interior(const DomainSpec& d, const DomainPoint& z) {
  return boundary_distance(d, z) > 0.0;
}

void validate_point(const DomainSpec& d, const DomainPoint& z) {
  for (const auto& c : z)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::Argument, "point coordinate is not finite");
  if (boundary_distance(d, z) < 1e-6) {
    std::string why;
    switch (d.tag) {
      case DomainSpec::Tag::Disc:
        why = "|z| < 1";
        break;
      case DomainSpec::Tag::Polydisc:
        why = "|z_i| < 1 for every coordinate";
        break;
      case DomainSpec::Tag::Ball:
        why = "euclidean norm < 1";
        break;
      case DomainSpec::Tag::MatrixBall:
        why = "operator norm of the reshaped matrix < 1";
        break;
      case DomainSpec::Tag::Omega2:
        why = "|z2| < 1 - |z1|^2";
        break;
      case DomainSpec::Tag::Omega3:
        why = "|z2|^2 < (1-|z1|^2)(1-|z3|^2) with |z1|, |z3| < 1";
        break;
    }
    throw Error(ErrorCode::Domain,
                "point not interior to " + d.name() + " (requires " + why +
                    ", margin 1e-6)");
  }
}

// --- kernel factorization ----------------------------------------------

namespace {

// K^lambda = prod_k P_k(z, v)^{lambda c_k}  (v = conj(w)); omega3 carries the
// truncated series as a separate non-polynomial factor.
struct Factorization {
  std::vector<std::pair<SparsePoly, double>> polys;
  bool has_series = false;
  int dim = 0;
};

Exps unit2(int nvars, int a, int b) {
  Exps e(nvars, 0);
  e[a] += 1;
  e[b] += 1;
  return e;
}

void expand_det(const DomainSpec& d, SparsePoly& out) {
  // det(I_r - X), X_ij = sum_k z_{ik} v_{jk}; variable (i,k) -> i*s + k for
  // the z block, r*s + j*s + k for the v block.
  const int r = d.r, s = d.s, nvars = 2 * r * s;
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  std::vector<std::pair<Exps, Complex>> acc;
  do {
    int sgn = 1;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    // product over rows of (delta_{i,perm[i]} - X_{i,perm[i]})
    std::vector<std::pair<Exps, Complex>> prod{{Exps(nvars, 0), Complex(sgn, 0)}};
    for (int i = 0; i < r; ++i) {
      int j = perm[i];
      std::vector<std::pair<Exps, Complex>> factor;
      if (i == j) factor.push_back({Exps(nvars, 0), Complex(1, 0)});
      for (int k = 0; k < s; ++k) {
        Exps e(nvars, 0);
        e[i * s + k] += 1;
        e[r * s + j * s + k] += 1;
        factor.push_back({e, Complex(-1, 0)});
      }
      std::vector<std::pair<Exps, Complex>> next;
      for (const auto& [ea, ca] : prod)
        for (const auto& [eb, cb] : factor) {
          Exps e = ea;
          for (int v = 0; v < nvars; ++v) e[v] += eb[v];
          next.push_back({e, ca * cb});
        }
      prod = std::move(next);
    }
    acc.insert(acc.end(), prod.begin(), prod.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  // combine like terms
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < acc.size();) {
    Complex c = 0.0;
    size_t j = i;
    while (j < acc.size() && acc[j].first == acc[i].first) c += acc[j++].second;
    if (std::abs(c) > 0.0) out.add_term(acc[i].first, c);
    i = j;
  }
}

Factorization factorize(const KernelSpec& k) {
  Factorization f;
  const DomainSpec& d = k.domain;
  const int m = d.dim();
  const int nv = 2 * m;
  f.dim = m;
  switch (d.tag) {
    case DomainSpec::Tag::Disc: {
      SparsePoly p;
      p.add_term(Exps(nv, 0), 1.0);
      p.add_term(unit2(nv, 0, 1), -1.0);
      f.polys.push_back({p, -2.0});
      break;
    }
    case DomainSpec::Tag::Polydisc: {
      for (int i = 0; i < m; ++i) {
        SparsePoly p;
        p.add_term(Exps(nv, 0), 1.0);
        p.add_term(unit2(nv, i, m + i), -1.0);
        f.polys.push_back({p, -2.0});
      }
      break;
    }
    case DomainSpec::Tag::Ball: {
      SparsePoly p;
      p.add_term(Exps(nv, 0), 1.0);
      for (int i = 0; i < m; ++i) p.add_term(unit2(nv, i, m + i), -1.0);
      f.polys.push_back({p, -double(m + 1)});
      break;
    }
    case DomainSpec::Tag::MatrixBall: {
      SparsePoly p;
      expand_det(d, p);
      f.polys.push_back({p, -double(d.r + d.s)});
      break;
    }
    case DomainSpec::Tag::Omega2: {
      // numerator 3(1 - z1 v1)^2 + z2 v2, denominator ((1 - z1 v1)^2 - z2 v2)^3
      SparsePoly num, den;
      Exps zz = unit2(nv, 0, 2);
      Exps zz2 = zz;
      zz2[0] = 2;
      zz2[2] = 2;
      num.add_term(Exps(nv, 0), 3.0);
      num.add_term(zz, -6.0);
      num.add_term(zz2, 3.0);
      num.add_term(unit2(nv, 1, 3), 1.0);
      den.add_term(Exps(nv, 0), 1.0);
      den.add_term(zz, -2.0);
      den.add_term(zz2, 1.0);
      den.add_term(unit2(nv, 1, 3), -1.0);
      f.polys.push_back({num, 1.0});
      f.polys.push_back({den, -3.0});
      if (k.normalized) {
        SparsePoly c3;
        c3.add_term(Exps(nv, 0), 3.0);
        f.polys.push_back({c3, -1.0});
      }
      break;
    }
    case DomainSpec::Tag::Omega3:
      f.has_series = true;
      break;
  }
  return f;
}

Complex pow_principal(Complex base, double e) {
  bool integral = std::abs(e - std::round(e)) < 1e-13;
  if (std::abs(base) == 0.0)
    throw Error(ErrorCode::Branch, "kernel power of a vanishing base value");
  if (!integral && base.real() <= 0.0)
    throw Error(ErrorCode::Branch,
                "branch-cut violation: base value left of the imaginary axis");
  return std::exp(Complex(e, 0.0) * std::log(base));
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

Complex cpow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

/// S(a, b, c) = sum c_{nmp} a^n b^m c^p with the omega3 coefficients,
/// separable over the middle index.
Complex omega3_series_value(Complex a, Complex b, Complex c, int trunc) {
  Complex total = 0.0;
  for (int m = 0; m <= trunc; ++m) {
    Complex am = 0.0, cm = 0.0, ap = 1.0, cp = 1.0;
    for (int n = 0; n <= trunc; ++n) {
      double w = std::exp(-log_beta(n + 1, m + 2));
      am += w * ap;
      cm += w * cp;
      ap *= a;
      cp *= c;
    }
    total += (m + 1) / 4.0 * cpow(b, m) * am * cm;
  }
  return total;
}

/// Taylor coefficient of the omega3 series at (z0, v0) for z-offsets aexp and
/// v-offsets bexp (coefficient of the monomial in the offsets).
Complex omega3_series_coeff(const DomainPoint& z0, const DomainPoint& v0,
                            const Exps& aexp, const Exps& bexp, int trunc) {
  using detail::binom;
  Complex total = 0.0;
  const int a2 = aexp[1], b2 = bexp[1];
  for (int m = std::max(a2, b2); m <= trunc; ++m) {
    Complex mid = binom(m, a2) * binom(m, b2) * cpow(z0[1], m - a2) *
                  cpow(v0[1], m - b2) * ((m + 1) / 4.0);
    if (mid == Complex(0, 0)) continue;
    Complex s1 = 0.0, s3 = 0.0;
    for (int n = std::max(aexp[0], bexp[0]); n <= trunc; ++n)
      s1 += std::exp(-log_beta(n + 1, m + 2)) * binom(n, aexp[0]) *
            binom(n, bexp[0]) * cpow(z0[0], n - aexp[0]) *
            cpow(v0[0], n - bexp[0]);
    for (int p = std::max(aexp[2], bexp[2]); p <= trunc; ++p)
      s3 += std::exp(-log_beta(p + 1, m + 2)) * binom(p, aexp[2]) *
            binom(p, bexp[2]) * cpow(z0[2], p - aexp[2]) *
            cpow(v0[2], p - bexp[2]);
    total += mid * s1 * s3;
  }
  return total;
}

Series omega3_taylor(const SeriesLayout* layout, const DomainPoint& z0,
                     const DomainPoint& v0, int trunc) {
  Series out(layout);
  for (int pos = 0; pos < layout->size(); ++pos) {
    const Exps& e = layout->index(pos);
    Exps a(e.begin(), e.begin() + 3), b(e.begin() + 3, e.end());
    out.at(pos) = omega3_series_coeff(z0, v0, a, b, trunc);
  }
  return out;
}

std::vector<Complex> slot_vars(const DomainPoint& z, const DomainPoint& w) {
  std::vector<Complex> x;
  x.reserve(z.size() + w.size());
  for (const auto& c : z) x.push_back(c);
  for (const auto& c : w) x.push_back(std::conj(c));
  return x;
}

}  // namespace

double omega3_coeff(int n, int m, int p) {
  if (n < 0 || m < 0 || p < 0)
    throw Error(ErrorCode::Argument, "omega3_coeff: negative index");
  return (m + 1) / 4.0 *
         std::exp(-log_beta(n + 1, m + 2) - log_beta(p + 1, m + 2));
}

Complex eval_polarized(const KernelSpec& k, const DomainPoint& z,
                       const DomainPoint& w) {
  validate_point(k.domain, z);
  validate_point(k.domain, w);
  Factorization f = factorize(k);
  std::vector<Complex> x = slot_vars(z, w);
  Complex value = 1.0;
  for (const auto& [poly, c] : f.polys)
    value *= pow_principal(poly.eval(x), k.lambda * c);
  if (f.has_series) {
    Complex s = omega3_series_value(x[0] * x[3], x[1] * x[4], x[2] * x[5],
                                    k.truncation);
    value *= pow_principal(s, k.lambda);
  }
  return value;
}

std::vector<MultiIndex> jet_index_list(int dim, int order) {
  std::function<void(MultiIndex&, int, int, std::vector<MultiIndex>&)> gen =
      [&](MultiIndex& cur, int var, int remaining, std::vector<MultiIndex>& out) {
        if (var == dim) {
          out.push_back(cur);
          return;
        }
        for (int e = 0; e <= remaining; ++e) {
          cur[var] = e;
          gen(cur, var + 1, remaining - e, out);
        }
        cur[var] = 0;
      };
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  gen(cur, 0, order, out);
  std::sort(out.begin(), out.end(), colex_less);
  return out;
}

ComplexMatrix jet_coeff_table(const KernelSpec& k, const DomainPoint& w,
                              int order) {
  validate_point(k.domain, w);
  if (order < 0 || order > 4)
    throw Error(ErrorCode::UnsupportedOrder, "jet order capped at 4");
  const int m = k.domain.dim();
  SeriesLayout layout(2 * m, 2 * order);
  if (layout.size() > 20000)
    throw Error(ErrorCode::Argument, "jet table too large for this dimension");
  DomainPoint v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[i] = std::conj(w[i]);
  std::vector<Complex> x0 = slot_vars(w, w);
  Factorization f = factorize(k);
  Series prod = Series::constant(&layout, 1.0);
  for (const auto& [poly, c] : f.polys)
    prod = prod * poly.taylor_at(&layout, x0).pow(k.lambda * c);
  if (f.has_series)
    prod = prod * omega3_taylor(&layout, w, v, k.truncation).pow(k.lambda);

  auto indices = jet_index_list(m, order);
  const int n = static_cast<int>(indices.size());
  ComplexMatrix table(n, n);
  Exps full(2 * m, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int v2 = 0; v2 < m; ++v2) {
        full[v2] = indices[i][v2];
        full[m + v2] = indices[j][v2];
      }
      table(i, j) = prod.coeff(full);
    }
  }
  return table;
}

Complex jet_analytic(const KernelSpec& k, const DomainPoint& w,
                     const MultiIndex& alpha, const MultiIndex& beta) {
  const int m = k.domain.dim();
  if (static_cast<int>(alpha.size()) != m || static_cast<int>(beta.size()) != m)
    throw Error(ErrorCode::Argument, "jet multi-index dimension mismatch");
  if (index_order(alpha) > 2 || index_order(beta) > 2)
    throw Error(ErrorCode::UnsupportedOrder,
                "jet_analytic supports orders <= 2 per slot; use jet_fd");
  validate_point(k.domain, w);
  SeriesLayout layout(2 * m, index_order(alpha) + index_order(beta));
  DomainPoint v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[i] = std::conj(w[i]);
  std::vector<Complex> x0 = slot_vars(w, w);
  Factorization f = factorize(k);
  Series prod = Series::constant(&layout, 1.0);
  for (const auto& [poly, c] : f.polys)
    prod = prod * poly.taylor_at(&layout, x0).pow(k.lambda * c);
  if (f.has_series)
    prod = prod * omega3_taylor(&layout, w, v, k.truncation).pow(k.lambda);
  Exps full(2 * m, 0);
  double fact = 1.0;
  for (int i = 0; i < m; ++i) {
    full[i] = alpha[i];
    full[m + i] = beta[i];
    for (int t = 2; t <= alpha[i]; ++t) fact *= t;
    for (int t = 2; t <= beta[i]; ++t) fact *= t;
  }
  return prod.coeff(full) * fact;
}

double fd_default_step(int total_order) {
  return std::pow(2.2e-16, 1.0 / (total_order + 2));
}

namespace {

Complex fd_recurse(const KernelSpec& k, const DomainPoint& w,
                   const std::vector<int>& orders, double h,
                   std::vector<double>& shift, size_t var) {
  const int m = k.domain.dim();
  if (var == orders.size()) {
    DomainPoint z(w), ww(w);
    for (int i = 0; i < m; ++i) {
      z[i] += shift[i];
      ww[i] += shift[m + i];
    }
    return eval_polarized(k, z, ww);
  }
  int n = orders[var];
  if (n == 0) return fd_recurse(k, w, orders, h, shift, var + 1);
  Complex acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    shift[var] = (n / 2.0 - j) * h;
    double c = detail::binom(n, j) * ((j % 2) ? -1.0 : 1.0);
    acc += c * fd_recurse(k, w, orders, h, shift, var + 1);
  }
  shift[var] = 0.0;
  return acc / std::pow(h, n);
}

}  // namespace

Complex jet_fd(const KernelSpec& k, const DomainPoint& w,
               const MultiIndex& alpha, const MultiIndex& beta, double h) {
  const int m = k.domain.dim();
  if (static_cast<int>(alpha.size()) != m || static_cast<int>(beta.size()) != m)
    throw Error(ErrorCode::Argument, "jet multi-index dimension mismatch");
  if (h <= 0.0) throw Error(ErrorCode::Argument, "step must be positive");
  const int order = index_order(alpha) + index_order(beta);
  if (order == 0) return eval_polarized(k, w, w);
  if (boundary_distance(k.domain, w) <= 10.0 * h * order)
    throw Error(ErrorCode::Step,
                "finite-difference step too large for the boundary distance");
  std::vector<int> orders(2 * m, 0);
  for (int i = 0; i < m; ++i) {
    orders[i] = alpha[i];
    orders[m + i] = beta[i];
  }
  std::vector<double> shift(2 * m, 0.0);
  Complex coarse = fd_recurse(k, w, orders, h, shift, 0);
  Complex fine = fd_recurse(k, w, orders, h / 2.0, shift, 0);
  return (4.0 * fine - coarse) / 3.0;  // one Richardson level, O(h^4)
}

}  // namespace cdk
