#include "drinfeld2/snf.hpp"

#include <algorithm>

namespace d2 {
namespace {

void check_input(const Mat<Zq>& M) {
  if (M.rows() == 0 || M.cols() == 0) throw DomainError("snf_solve: empty matrix");
  auto R = M.at(0, 0).ctx();
  if (R->s != 1) throw DomainError("snf_solve: entries must lie in Z/p^m (s = 1)");
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j)
      if (M.at(i, j).ctx() != R)
        throw DomainError("snf_solve: mixed-precision entries rejected");
}

}  // namespace

SnfResult snf_solve(const Mat<Zq>& M) {
  check_input(M);
  auto R = M.at(0, 0).ctx();
  const int m = R->n;
  const size_t rows = M.rows(), cols = M.cols();
  Zq zero = Zq::zero(R), one = Zq::one(R);

  Mat<Zq> D = M;
  Mat<Zq> U = Mat<Zq>::identity(rows, zero, one);
  Mat<Zq> V = Mat<Zq>::identity(cols, zero, one);

  size_t rank = std::min(rows, cols);
  for (size_t t = 0; t < rank; ++t) {
    // pivot: smallest valuation, then lowest row, then lowest column
    int best_v = m + 1;
    size_t bi = t, bj = t;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        int v = D.at(i, j).val();
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
        }
      }
    if (best_v >= m) break;  // all remaining entries are zero mod p^m

    // swap into place
    if (bi != t)
      for (size_t j = 0; j < cols; ++j) std::swap(D.at(t, j), D.at(bi, j));
    if (bi != t)
      for (size_t j = 0; j < rows; ++j) std::swap(U.at(t, j), U.at(bi, j));
    if (bj != t) {
      for (size_t i = 0; i < rows; ++i) std::swap(D.at(i, t), D.at(i, bj));
      for (size_t i = 0; i < cols; ++i) std::swap(V.at(i, t), V.at(i, bj));
    }

    // normalize the pivot to p^a: divide the row by the unit part
    int a = D.at(t, t).val();
    Zq unit = D.at(t, t).div_p(a);  // unit by choice of a
    Zq uinv = unit.inv();
    for (size_t j = 0; j < cols; ++j) D.at(t, j) = D.at(t, j) * uinv;
    for (size_t j = 0; j < rows; ++j) U.at(t, j) = U.at(t, j) * uinv;

    // clear the column below/above and the row right of the pivot
    Zq pa = Zq::from_int(R, ipow(R->p, a));
    for (size_t i = 0; i < rows; ++i) {
      if (i == t) continue;
      const Zq& x = D.at(i, t);
      if (x.is_zero()) continue;
      // factor = x / p^a (valuation of x >= a by pivot minimality)
      Zq f = x.div_p(a);
      for (size_t j = 0; j < cols; ++j) D.at(i, j) = D.at(i, j) - f * D.at(t, j);
      for (size_t j = 0; j < rows; ++j) U.at(i, j) = U.at(i, j) - f * U.at(t, j);
    }
    for (size_t j = 0; j < cols; ++j) {
      if (j == t) continue;
      const Zq& x = D.at(t, j);
      if (x.is_zero()) continue;
      Zq f = x.div_p(a);
      for (size_t i = 0; i < rows; ++i) D.at(i, j) = D.at(i, j) - D.at(i, t) * f;
      for (size_t i = 0; i < cols; ++i) V.at(i, j) = V.at(i, j) - V.at(i, t) * f;
    }
  }

  SnfResult out{D, U, V, {}, Mat<Zq>()};
  out.divisor_exponents.reserve(rank);
  for (size_t t = 0; t < rank; ++t) out.divisor_exponents.push_back(D.at(t, t).val());
  // divisibility order is automatic from pivot-by-minimal-valuation
  for (size_t t = 0; t + 1 < rank; ++t)
    if (out.divisor_exponents[t] > out.divisor_exponents[t + 1])
      throw DomainError("snf_solve: internal divisor ordering failure");

  // kernel: x = V*y with y_i in ann(p^{a_i}); generators V * (p^{m-a_i} e_i)
  std::vector<std::vector<Zq>> gens;
  for (size_t i = 0; i < cols; ++i) {
    int a = i < rank ? out.divisor_exponents[i] : 0;
    if (i >= rank) a = 0;  // columns beyond rank have zero image only if rows < cols
    bool beyond = i >= rank;
    int k = beyond ? 0 : m - a;
    if (!beyond && a == 0) continue;  // unit divisor: no kernel contribution
    Zq scale = beyond ? one : Zq::from_int(R, ipow(R->p, k));
    std::vector<Zq> g;
    g.reserve(cols);
    for (size_t r2 = 0; r2 < cols; ++r2) g.push_back(V.at(r2, i) * scale);
    gens.push_back(std::move(g));
  }
  if (gens.empty()) {
    out.kernel = Mat<Zq>(cols, 0, zero);
  } else {
    out.kernel = Mat<Zq>(cols, gens.size(), zero);
    for (size_t j = 0; j < gens.size(); ++j)
      for (size_t i = 0; i < cols; ++i) out.kernel.at(i, j) = gens[j][i];
  }
  return out;
}

std::vector<std::vector<Zq>> kernel_columns(const SnfResult& r) {
  std::vector<std::vector<Zq>> out;
  for (size_t j = 0; j < r.kernel.cols(); ++j) out.push_back(r.kernel.col(j));
  return out;
}

}  // namespace d2
