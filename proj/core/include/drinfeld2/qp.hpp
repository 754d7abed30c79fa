#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "drinfeld2/common.hpp"

namespace d2 {

/// Element of Q_p in one of three forms: exact zero, an exact rational
/// num * p^e with integer num (arbitrary size), or a finite-precision value
/// p^v * u with the unit u known mod p^prec. Exact values stay exact under
/// ring operations; precision enters only by inverting a non-p-power unit.
/// Operations that would need unknown digits throw PrecisionError.
struct QpCtx {
  int64_t p;
  int N;  // default relative precision for approximate values
  static std::shared_ptr<const QpCtx> get(int64_t p, int N);
};

class Qp {
 public:
  Qp() = default;
  static Qp zero(std::shared_ptr<const QpCtx> C);
  static Qp from_int(std::shared_ptr<const QpCtx> C, int64_t a);
  static Qp make(std::shared_ptr<const QpCtx> C, int64_t a, int e);  // a * p^e
  static Qp make_big(std::shared_ptr<const QpCtx> C, BigInt a, int e);

  const std::shared_ptr<const QpCtx>& ctx() const { return C_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_exact() const { return kind_ != Kind::Approx; }
  int val() const;  // throws on exact zero
  int prec() const;  // relative precision (large constant for exact values)
  /// the unit part mod p^prec (exact values are normalized first)
  int64_t unit_mod(int k) const;

  Qp operator+(const Qp& o) const;
  Qp operator-(const Qp& o) const;
  Qp operator*(const Qp& o) const;
  Qp operator-() const;
  Qp inv() const;
  Qp div(const Qp& o) const { return *this * o.inv(); }
  Qp times_p_pow(int k) const;

  bool operator==(const Qp& o) const;
  bool operator!=(const Qp& o) const { return !(*this == o); }

  /// residue of a val >= 0 element mod p^k
  int64_t residue_mod(int k) const;

  std::string str() const;

 private:
  enum class Kind { Zero, Exact, Approx };
  std::shared_ptr<const QpCtx> C_;
  Kind kind_ = Kind::Zero;
  // exact: value = num_ * p^{e_}, p does not divide num_
  BigInt num_ = 0;
  int e_ = 0;
  // approx: value = p^{v_} * u_, u_ a unit known mod p^{prec_}
  int v_ = 0;
  int64_t u_ = 0;
  int prec_ = 0;

  void normalize_exact();
  Qp to_approx(int prec) const;  // exact -> approx view
};

}  // namespace d2
