#pragma once

#include <memory>
#include <vector>

#include "drinfeld2/chartring.hpp"
#include "drinfeld2/common.hpp"
#include "drinfeld2/dual.hpp"
#include "drinfeld2/fq.hpp"
#include "drinfeld2/zq.hpp"

namespace d2 {

/// Torsion-free lift rings for ghost-component Witt arithmetic. Every
/// coefficient ring R gets a lift ring with exact arithmetic over Z where
/// division by p is decidable; the ghost recursion aborts if a division
/// that should be exact is not.

/// Z[t]/(f~) with f~ the monic integer lift of the field modulus. Since f~
/// is irreducible mod p, p is prime here and divisibility by p is
/// coefficientwise over Z.
struct ZLiftCtx {
  int64_t p;
  int s;
  std::vector<int64_t> mod;  // monic lift, degree s, including leading 1
  static std::shared_ptr<const ZLiftCtx> get(int64_t p, int s);
};

class ZPol {
 public:
  ZPol() = default;
  ZPol(std::shared_ptr<const ZLiftCtx> C, std::vector<BigInt> c);
  static ZPol zero(std::shared_ptr<const ZLiftCtx> C);
  static ZPol from_int(std::shared_ptr<const ZLiftCtx> C, int64_t a);

  const std::shared_ptr<const ZLiftCtx>& ctx() const { return C_; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const;

  ZPol add(const ZPol& o) const;
  ZPol sub(const ZPol& o) const;
  ZPol mul(const ZPol& o) const;
  ZPol neg() const;
  ZPol pow_u(int64_t e) const;
  ZPol times_p_pow(int k) const;
  ZPol div_p_pow_exact(int k) const;  // throws PrecisionError if inexact

 private:
  std::shared_ptr<const ZLiftCtx> C_;
  std::vector<BigInt> c_;  // size s
};

/// Lift of Loc: Z[t]/(f~)[X] localized at the lifted denominator.
struct LocLiftCtx {
  std::shared_ptr<const ZLiftCtx> base;
  std::vector<ZPol> denom;  // lifted denominator, coeffs low->high
  static std::shared_ptr<const LocLiftCtx> get(const std::shared_ptr<const LocCtx>& R);
};

class LocLift {
 public:
  LocLift() = default;
  LocLift(std::shared_ptr<const LocLiftCtx> C, std::vector<ZPol> num, int e);
  static LocLift zero(std::shared_ptr<const LocLiftCtx> C);
  static LocLift from_int(std::shared_ptr<const LocLiftCtx> C, int64_t a);

  const std::shared_ptr<const LocLiftCtx>& ctx() const { return C_; }
  const std::vector<ZPol>& num() const { return num_; }
  int denom_exp() const { return e_; }
  bool is_zero() const;

  LocLift add(const LocLift& o) const;
  LocLift sub(const LocLift& o) const;
  LocLift mul(const LocLift& o) const;
  LocLift neg() const;
  LocLift pow_u(int64_t e) const;
  LocLift times_p_pow(int k) const;
  LocLift div_p_pow_exact(int k) const;

 private:
  std::shared_ptr<const LocLiftCtx> C_;
  std::vector<ZPol> num_;
  int e_ = 0;
};

/// Lift of the dual numbers: Z[t]/(f~)[E]/(E^2).
class DualLift {
 public:
  DualLift() = default;
  DualLift(ZPol a, ZPol b) : a_(std::move(a)), b_(std::move(b)) {}
  const ZPol& a() const { return a_; }
  const ZPol& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  DualLift add(const DualLift& o) const { return {a_.add(o.a_), b_.add(o.b_)}; }
  DualLift sub(const DualLift& o) const { return {a_.sub(o.a_), b_.sub(o.b_)}; }
  DualLift mul(const DualLift& o) const {
    return {a_.mul(o.a_), a_.mul(o.b_).add(b_.mul(o.a_))};
  }
  DualLift neg() const { return {a_.neg(), b_.neg()}; }
  DualLift pow_u(int64_t e) const;
  DualLift times_p_pow(int k) const { return {a_.times_p_pow(k), b_.times_p_pow(k)}; }
  DualLift div_p_pow_exact(int k) const {
    return {a_.div_p_pow_exact(k), b_.div_p_pow_exact(k)};
  }

 private:
  ZPol a_, b_;
};

/// Lift of the fiber-product ring: componentwise (compatibility is restored
/// on reduction, Witt operations being functorial).
class FiberLift {
 public:
  FiberLift() = default;
  FiberLift(LocLift x, LocLift y) : x_(std::move(x)), y_(std::move(y)) {}
  const LocLift& x() const { return x_; }
  const LocLift& y() const { return y_; }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

  FiberLift add(const FiberLift& o) const { return {x_.add(o.x_), y_.add(o.y_)}; }
  FiberLift sub(const FiberLift& o) const { return {x_.sub(o.x_), y_.sub(o.y_)}; }
  FiberLift mul(const FiberLift& o) const { return {x_.mul(o.x_), y_.mul(o.y_)}; }
  FiberLift neg() const { return {x_.neg(), y_.neg()}; }
  FiberLift pow_u(int64_t e) const { return {x_.pow_u(e), y_.pow_u(e)}; }
  FiberLift times_p_pow(int k) const { return {x_.times_p_pow(k), y_.times_p_pow(k)}; }
  FiberLift div_p_pow_exact(int k) const {
    return {x_.div_p_pow_exact(k), y_.div_p_pow_exact(k)};
  }

 private:
  LocLift x_, y_;
};

}  // namespace d2
