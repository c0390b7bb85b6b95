#pragma once

// Truncated multivariate Taylor series over a fixed variable count, used to
// differentiate the polarized kernels exactly. The polarized kernel in 2m
// variables (z offsets first, then the conjugate-slot offsets) is a product
// of polynomial factors raised to real powers, so its jets reduce to series
// shifts, products and a binomial-series power.

#include "cdkernel/complexmat.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace cdk::detail {

using Exps = std::vector<int>;

inline int exps_order(const Exps& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

inline uint64_t pack_exps(const Exps& e) {
  uint64_t key = 0;
  for (size_t i = 0; i < e.size(); ++i) key |= (uint64_t(e[i]) & 0xF) << (4 * i);
  return key;
}

double binom(int n, int k);

/// Layout of all multi-indices over `nvars` variables with total degree <=
/// `max_degree`, degree-major. Shared by every series in one computation.
class SeriesLayout {
public:
  SeriesLayout(int nvars, int max_degree);

  int nvars() const { return nvars_; }
  int max_degree() const { return max_degree_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const Exps& index(int pos) const { return indices_[pos]; }
  int degree(int pos) const { return degrees_[pos]; }
  int position(const Exps& e) const;
  int position_packed(uint64_t key) const;
  uint64_t packed(int pos) const { return packed_[pos]; }

private:
  int nvars_, max_degree_;
  std::vector<Exps> indices_;
  std::vector<int> degrees_;
  std::vector<uint64_t> packed_;
  std::unordered_map<uint64_t, int> pos_;
};

class Series {
public:
  explicit Series(const SeriesLayout* layout)
      : layout_(layout), coeff_(layout->size(), Complex(0, 0)) {}

  static Series constant(const SeriesLayout* layout, Complex c) {
    Series s(layout);
    s.coeff_[0] = c;
    return s;
  }

  const SeriesLayout& layout() const { return *layout_; }
  Complex& at(int pos) { return coeff_[pos]; }
  Complex at(int pos) const { return coeff_[pos]; }
  Complex coeff(const Exps& e) const {
    int p = layout_->position(e);
    return p < 0 ? Complex(0, 0) : coeff_[p];
  }
  Complex value() const { return coeff_[0]; }

  Series operator*(const Series& rhs) const;
  Series operator+(const Series& rhs) const;
  void add_scaled(const Series& rhs, Complex c);
  Series scaled(Complex c) const;

  /// this^e via f0^e * sum_k binom(e,k) (f/f0 - 1)^k. Requires the constant
  /// term to lie in the open right half-plane unless e is an integer.
  Series pow(double e) const;

private:
  const SeriesLayout* layout_;
  std::vector<Complex> coeff_;
};

/// Sparse polynomial in the layout's variables; expanded around a base point
/// into a Series by binomial shift.
struct SparsePoly {
  struct Term {
    Exps exps;
    Complex coeff;
  };
  std::vector<Term> terms;

  void add_term(const Exps& e, Complex c) { terms.push_back({e, c}); }
  Complex eval(const std::vector<Complex>& x) const;
  Series taylor_at(const SeriesLayout* layout, const std::vector<Complex>& x0) const;
};

}  // namespace cdk::detail
