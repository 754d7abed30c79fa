#pragma once

#include <memory>
#include <string>

#include "drinfeld2/fq.hpp"

namespace d2 {

/// Dual numbers k[eps], eps^2 = 0, over a finite field stage.
class Dual {
 public:
  Dual() = default;
  Dual(Fq a, Fq b) : a_(std::move(a)), b_(std::move(b)) {}
  static Dual from_base(const Fq& a) { return Dual(a, Fq::zero(a.ctx())); }
  static Dual eps(const std::shared_ptr<const FqCtx>& k) {
    return Dual(Fq::zero(k), Fq::one(k));
  }
  static Dual zero(const std::shared_ptr<const FqCtx>& k) {
    return Dual(Fq::zero(k), Fq::zero(k));
  }
  static Dual one(const std::shared_ptr<const FqCtx>& k) {
    return Dual(Fq::one(k), Fq::zero(k));
  }

  const Fq& base() const { return a_; }      // value mod eps
  const Fq& eps_part() const { return b_; }  // coefficient of eps
  const std::shared_ptr<const FqCtx>& ctx() const { return a_.ctx(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_unit() const { return !a_.is_zero(); }

  Dual operator+(const Dual& o) const { return {a_ + o.a_, b_ + o.b_}; }
  Dual operator-(const Dual& o) const { return {a_ - o.a_, b_ - o.b_}; }
  Dual operator-() const { return {-a_, -b_}; }
  Dual operator*(const Dual& o) const { return {a_ * o.a_, a_ * o.b_ + b_ * o.a_}; }
  bool operator==(const Dual& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Dual& o) const { return !(*this == o); }

  Dual inv() const {
    if (!is_unit()) throw DomainError("Dual: inverse of non-unit");
    Fq ai = a_.inv();
    return {ai, -(ai * ai * b_)};
  }
  Dual pow(int64_t e) const {
    Dual r = one(ctx());
    Dual b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  std::string str() const { return a_.str() + "+eps*" + b_.str(); }

 private:
  Fq a_, b_;
};

}  // namespace d2
