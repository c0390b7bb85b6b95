#include "jetseries.hpp"

#include <algorithm>
#include <cmath>

namespace cdk::detail {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

namespace {

void enumerate(int nvars, int max_degree, Exps& cur, int var, int remaining,
               std::vector<Exps>& out) {
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[var] = e;
    enumerate(nvars, max_degree, cur, var + 1, remaining - e, out);
  }
  cur[var] = 0;
}

}  // namespace

SeriesLayout::SeriesLayout(int nvars, int max_degree)
    : nvars_(nvars), max_degree_(max_degree) {
  if (max_degree > 15)
    throw Error(ErrorCode::Argument, "series degree cap exceeded");
  Exps cur(nvars, 0);
  enumerate(nvars, max_degree, cur, 0, max_degree, indices_);
  std::sort(indices_.begin(), indices_.end(),
            [](const Exps& a, const Exps& b) {
              int da = exps_order(a), db = exps_order(b);
              if (da != db) return da < db;
              return a < b;
            });
  degrees_.reserve(indices_.size());
  packed_.reserve(indices_.size());
  for (size_t i = 0; i < indices_.size(); ++i) {
    degrees_.push_back(exps_order(indices_[i]));
    packed_.push_back(pack_exps(indices_[i]));
    pos_[packed_.back()] = static_cast<int>(i);
  }
}

int SeriesLayout::position(const Exps& e) const {
  return position_packed(pack_exps(e));
}

int SeriesLayout::position_packed(uint64_t key) const {
  auto it = pos_.find(key);
  return it == pos_.end() ? -1 : it->second;
}

Series Series::operator*(const Series& rhs) const {
  Series out(layout_);
  const int n = layout_->size();
  const int cap = layout_->max_degree();
  for (int i = 0; i < n; ++i) {
    if (coeff_[i] == Complex(0, 0)) continue;
    int di = layout_->degree(i);
    for (int j = 0; j < n; ++j) {
      if (di + layout_->degree(j) > cap) break;  // degree-major order
      if (rhs.coeff_[j] == Complex(0, 0)) continue;
      int p = layout_->position_packed(layout_->packed(i) + layout_->packed(j));
      out.coeff_[p] += coeff_[i] * rhs.coeff_[j];
    }
  }
  return out;
}

Series Series::operator+(const Series& rhs) const {
  Series out(layout_);
  for (size_t i = 0; i < coeff_.size(); ++i)
    out.coeff_[i] = coeff_[i] + rhs.coeff_[i];
  return out;
}

void Series::add_scaled(const Series& rhs, Complex c) {
  for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += c * rhs.coeff_[i];
}

Series Series::scaled(Complex c) const {
  Series out(layout_);
  for (size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] = c * coeff_[i];
  return out;
}

Series Series::pow(double e) const {
  Complex f0 = coeff_[0];
  bool integral = std::abs(e - std::round(e)) < 1e-14;
  if (std::abs(f0) == 0.0)
    throw Error(ErrorCode::Branch, "series power: vanishing base value");
  if (!integral && f0.real() <= 0.0)
    throw Error(ErrorCode::Branch,
                "branch-cut violation: base value left of the imaginary axis");
  const int cap = layout_->max_degree();
  Series u = scaled(1.0 / f0);
  u.coeff_[0] = 0.0;  // u = f/f0 - 1
  // Horner over sum_k binom(e,k) u^k
  std::vector<double> bc(cap + 1);
  for (int k = 0; k <= cap; ++k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c *= (e - i) / double(i + 1);
    bc[k] = c;
  }
  Series acc = Series::constant(layout_, bc[cap]);
  for (int k = cap - 1; k >= 0; --k) {
    acc = acc * u;
    acc.coeff_[0] += bc[k];
  }
  return acc.scaled(std::pow(f0, Complex(e, 0.0)));
}

Complex SparsePoly::eval(const std::vector<Complex>& x) const {
  Complex sum = 0.0;
  for (const auto& t : terms) {
    Complex prod = t.coeff;
    for (size_t v = 0; v < t.exps.size(); ++v)
      for (int k = 0; k < t.exps[v]; ++k) prod *= x[v];
    sum += prod;
  }
  return sum;
}

namespace {

void shift_term(const SparsePoly::Term& t, const std::vector<Complex>& x0,
                const SeriesLayout* layout, size_t var, Exps& a, Complex acc,
                Series& out) {
  if (var == t.exps.size()) {
    int p = layout->position(a);
    if (p >= 0) out.at(p) += acc;
    return;
  }
  int k = t.exps[var];
  Complex xp = 1.0;  // x0^(k-j) built downward
  std::vector<Complex> pows(k + 1);
  pows[k] = 1.0;
  for (int j = k - 1; j >= 0; --j) pows[j] = pows[j + 1] * x0[var];
  for (int j = 0; j <= k; ++j) {
    a[var] = j;
    shift_term(t, x0, layout, var + 1, a, acc * binom(k, j) * pows[j], out);
  }
  a[var] = 0;
  (void)xp;
}

}  // namespace

Series SparsePoly::taylor_at(const SeriesLayout* layout,
                             const std::vector<Complex>& x0) const {
  Series out(layout);
  for (const auto& t : terms) {
    Exps a(t.exps.size(), 0);
    shift_term(t, x0, layout, 0, a, t.coeff, out);
  }
  return out;
}

}  // namespace cdk::detail
