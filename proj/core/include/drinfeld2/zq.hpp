#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld2/common.hpp"
#include "drinfeld2/fq.hpp"

namespace d2 {

/// The Galois ring GR(p^n, s) = Z[t]/(p^n, modulus), with the modulus lifted
/// from the F_{p^s} table. As a ring this is W_n(F_{p^s}); it carries the
/// Frobenius lift sigma (reducing to x -> x^p) and the Teichmueller section.
/// For s = 1 this is plain Z/p^n.
struct ZqCtx {
  int64_t p;
  int n;  // precision: coefficients mod p^n
  int s;
  int64_t pn;                   // p^n
  std::vector<int64_t> mod;     // monic lift of the field modulus, degree s
  std::vector<int64_t> sigma_t; // sigma(t) as a coefficient vector, degree < s

  std::shared_ptr<const FqCtx> residue_field() const { return FqCtx::get(p, s); }

  static std::shared_ptr<const ZqCtx> get(int64_t p, int n, int s);
};

class Zq {
 public:
  Zq() = default;
  Zq(std::shared_ptr<const ZqCtx> R, std::vector<int64_t> coeffs);
  static Zq zero(std::shared_ptr<const ZqCtx> R);
  static Zq one(std::shared_ptr<const ZqCtx> R);
  static Zq from_int(std::shared_ptr<const ZqCtx> R, int64_t a);

  const std::shared_ptr<const ZqCtx>& ctx() const { return R_; }
  const std::vector<int64_t>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_unit() const { return val() == 0; }

  /// p-adic valuation, capped at the precision n (val(0) = n).
  int val() const;

  Zq operator+(const Zq& o) const;
  Zq operator-(const Zq& o) const;
  Zq operator*(const Zq& o) const;
  Zq operator-() const;
  bool operator==(const Zq& o) const;
  bool operator!=(const Zq& o) const { return !(*this == o); }

  Zq inv() const;  // units only
  Zq pow(int64_t e) const;
  /// Exact division by p^k; throws PrecisionError if not divisible. The
  /// result is only correct mod p^{n-k}; the top digits are set to zero.
  Zq div_p(int k) const;
  Zq times_p(int k) const;

  Zq sigma() const;           // Frobenius lift
  Zq sigma_pow(int e) const;  // e may be negative (sigma has order s)

  Fq residue() const;  // reduction mod p
  /// Reduce to a lower-precision copy of the same ring.
  Zq reduce_to(const std::shared_ptr<const ZqCtx>& R2) const;

  std::string str() const;

 private:
  std::shared_ptr<const ZqCtx> R_;
  std::vector<int64_t> c_;  // size s, values in [0, p^n)
};

/// Multiplicative (Teichmueller) lift of the residue field.
Zq teichmueller(const std::shared_ptr<const ZqCtx>& R, const Fq& a);

/// Witt coordinates (x_0,...,x_{m-1}) over F_{p^s}  <->  Galois ring value
/// sum_i p^i [x_i^{p^-i}].  `m` digits are read; the ring precision must be
/// at least m.
Zq witt_coords_to_zq(const std::shared_ptr<const ZqCtx>& R, const std::vector<Fq>& coords);
std::vector<Fq> zq_to_witt_coords(const Zq& x, int m);

/// Ring embedding GR(p^n, s) -> GR(p^n, u) over the field embedding, s | u.
class ZqEmbed {
 public:
  ZqEmbed(std::shared_ptr<const ZqCtx> from, std::shared_ptr<const ZqCtx> to);
  Zq operator()(const Zq& x) const;

 private:
  std::shared_ptr<const ZqCtx> from_, to_;
  Zq gen_image_;
};

Zq random_zq(const std::shared_ptr<const ZqCtx>& R, Rng& rng);

}  // namespace d2
