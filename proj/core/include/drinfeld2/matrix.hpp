#pragma once

#include <cstddef>
#include <vector>

#include "drinfeld2/common.hpp"

namespace d2 {

/// Minimal dense matrix over a value-semantic ring type.
template <class R>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(size_t rows, size_t cols, const R& fill) : r_(rows), c_(cols), e_(rows * cols, fill) {}

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  R& at(size_t i, size_t j) { return e_[i * c_ + j]; }
  const R& at(size_t i, size_t j) const { return e_[i * c_ + j]; }

  static Mat identity(size_t n, const R& zero, const R& one) {
    Mat m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  Mat mul(const Mat& o, const R& zero) const {
    if (c_ != o.r_) throw DomainError("Mat: shape mismatch");
    Mat out(r_, o.c_, zero);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        const R& a = at(i, k);
        if (a.is_zero()) continue;
        for (size_t j = 0; j < o.c_; ++j)
          out.at(i, j) = out.at(i, j) + a * o.at(k, j);
      }
    return out;
  }

  Mat transpose() const {
    if (r_ == 0 || c_ == 0) return *this;
    Mat out(c_, r_, e_[0]);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  std::vector<R> col(size_t j) const {
    std::vector<R> v;
    v.reserve(r_);
    for (size_t i = 0; i < r_; ++i) v.push_back(at(i, j));
    return v;
  }

  std::vector<R> apply(const std::vector<R>& x, const R& zero) const {
    if (x.size() != c_) throw DomainError("Mat: vector length mismatch");
    std::vector<R> y(r_, zero);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) y[i] = y[i] + at(i, j) * x[j];
    return y;
  }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }

 private:
  size_t r_, c_;
  std::vector<R> e_;
};

}  // namespace d2
