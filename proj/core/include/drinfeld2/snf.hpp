#pragma once

#include "drinfeld2/matrix.hpp"
#include "drinfeld2/zq.hpp"

namespace d2 {

/// Smith normal form over Z/p^m (Zq contexts with s = 1). U*M*V = D with
/// U, V invertible and D diagonal with entries p^{a_1} | p^{a_2} | ...
/// (exponent m encodes the zero divisor). Pivots are chosen by smallest
/// p-valuation, then lowest row, then lowest column, so the output is
/// deterministic.
struct SnfResult {
  Mat<Zq> D, U, V;
  std::vector<int> divisor_exponents;  // length min(rows, cols), ascending
  Mat<Zq> kernel;                      // columns span {x : Mx = 0}
};

SnfResult snf_solve(const Mat<Zq>& M);

/// Columns of `kernel` for quick checks.
std::vector<std::vector<Zq>> kernel_columns(const SnfResult& r);

}  // namespace d2
