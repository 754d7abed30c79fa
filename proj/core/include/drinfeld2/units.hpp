#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drinfeld2/common.hpp"

namespace d2 {

/// Sparse multivariate polynomial over Z/p^N, for the chart-ring unit u.
struct MPolyZ {
  int64_t p = 2;
  int N = 1;
  int nvars = 0;
  std::map<std::vector<int>, int64_t> terms;  // exponent vector -> coeff mod p^N

  int64_t modulus() const { return ipow(p, N); }
  static MPolyZ constant(int64_t p, int N, int nvars, int64_t c);
  static MPolyZ variable(int64_t p, int N, int nvars, int v);
  MPolyZ operator+(const MPolyZ& o) const;
  MPolyZ operator*(const MPolyZ& o) const;
  bool operator==(const MPolyZ& o) const { return terms == o.terms; }
  MPolyZ reduce_mod_p() const;  // same representation with N = 1
  std::string str() const;
};

/// One factor u_{i,lambda} = 1 + lambda_1 X_{i-1} + lambda_2 X_{i-1} X_{i-2}
/// + ... + lambda_{d-1} X_{i-1} ... X_{i-d+1}, indices mod d.
MPolyZ u_unit_factor(int d, int64_t p, int N, int i, const std::vector<int64_t>& lambda);

/// The chart-ring unit u = prod over i in Z/d, lambda in F_p^{d-1}.
MPolyZ u_unit(int d, int64_t p, int N);

/// prod_i (1 - X_i^{p-1}) over Z/p^N, for the mod-p comparison.
MPolyZ denominator_product(int d, int64_t p, int N);

}  // namespace d2
