#pragma once

#include <memory>
#include <string>
#include <vector>

#include "drinfeld2/fq.hpp"

namespace d2 {

/// Dense univariate polynomial over F_q, coefficients low->high, normalized
/// (no trailing zeros; the zero polynomial has empty coefficient list).
class FqPoly {
 public:
  FqPoly() = default;
  explicit FqPoly(std::shared_ptr<const FqCtx> k) : k_(std::move(k)) {}
  FqPoly(std::shared_ptr<const FqCtx> k, std::vector<Fq> coeffs);

  static FqPoly constant(const Fq& a);
  static FqPoly x(std::shared_ptr<const FqCtx> k);
  static FqPoly monomial(const Fq& a, int deg);
  /// From integer coefficients low->high.
  static FqPoly from_ints(std::shared_ptr<const FqCtx> k, const std::vector<int64_t>& c);

  const std::shared_ptr<const FqCtx>& ctx() const { return k_; }
  const std::vector<Fq>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int deg() const { return static_cast<int>(c_.size()) - 1; }  // deg(0) = -1
  Fq coeff(int i) const;
  Fq leading() const;
  Fq constant_term() const { return coeff(0); }

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly operator-() const;
  bool operator==(const FqPoly& o) const { return k_ == o.k_ && c_ == o.c_; }
  bool operator!=(const FqPoly& o) const { return !(*this == o); }

  FqPoly pow(int e) const;
  Fq eval(const Fq& a) const;
  FqPoly derivative() const;

  /// Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<FqPoly, FqPoly> divrem(const FqPoly& d) const;
  bool divides(const FqPoly& d) const;  // d | *this

  /// Coefficient-wise Frobenius power (x stays x): sum a_i X^i -> sum a_i^{p^e} X^i.
  FqPoly coeff_frob(int e) const;
  /// p-th root; defined when every exponent is a multiple of p, throws otherwise.
  FqPoly p_root() const;

  std::string str(char var = 'X') const;

 private:
  void normalize();
  std::shared_ptr<const FqCtx> k_;
  std::vector<Fq> c_;
};

FqPoly fqpoly_gcd(const FqPoly& a, const FqPoly& b);  // monic gcd

}  // namespace d2
