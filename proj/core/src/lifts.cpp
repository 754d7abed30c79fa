#include "drinfeld2/lifts.hpp"

#include <map>
#include <mutex>

#include "drinfeld2/conway.hpp"

namespace d2 {

std::shared_ptr<const ZLiftCtx> ZLiftCtx::get(int64_t p, int s) {
  static std::mutex mu;
  static std::map<std::pair<int64_t, int>, std::shared_ptr<const ZLiftCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<ZLiftCtx>();
  ctx->p = p;
  ctx->s = s;
  ctx->mod = conway_poly(p, s);
  cache[key] = ctx;
  return ctx;
}

ZPol::ZPol(std::shared_ptr<const ZLiftCtx> C, std::vector<BigInt> c) : C_(std::move(C)) {
  const int s = C_->s;
  // reduce mod the monic modulus
  for (int i = static_cast<int>(c.size()) - 1; i >= s; --i) {
    BigInt v = c[static_cast<size_t>(i)];
    if (v == 0) continue;
    c[static_cast<size_t>(i)] = 0;
    for (int j = 0; j < s; ++j)
      c[static_cast<size_t>(i - s + j)] -= v * C_->mod[static_cast<size_t>(j)];
  }
  c.resize(static_cast<size_t>(s), BigInt(0));
  c_ = std::move(c);
}

ZPol ZPol::zero(std::shared_ptr<const ZLiftCtx> C) { return ZPol(std::move(C), {}); }

ZPol ZPol::from_int(std::shared_ptr<const ZLiftCtx> C, int64_t a) {
  return ZPol(std::move(C), {BigInt(a)});
}

bool ZPol::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

ZPol ZPol::add(const ZPol& o) const {
  ZPol r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

ZPol ZPol::sub(const ZPol& o) const {
  ZPol r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

ZPol ZPol::neg() const {
  ZPol r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

ZPol ZPol::mul(const ZPol& o) const {
  const int s = C_->s;
  std::vector<BigInt> w(static_cast<size_t>(2 * s - 1), BigInt(0));
  for (int i = 0; i < s; ++i) {
    if (c_[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < s; ++j)
      w[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
  }
  return ZPol(C_, std::move(w));
}

ZPol ZPol::pow_u(int64_t e) const {
  ZPol r = from_int(C_, 1);
  ZPol b = *this;
  while (e > 0) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

ZPol ZPol::times_p_pow(int k) const {
  BigInt pk = boost::multiprecision::pow(BigInt(C_->p), static_cast<unsigned>(k));
  ZPol r = *this;
  for (auto& v : r.c_) v *= pk;
  return r;
}

ZPol ZPol::div_p_pow_exact(int k) const {
  BigInt pk = boost::multiprecision::pow(BigInt(C_->p), static_cast<unsigned>(k));
  ZPol r = *this;
  for (auto& v : r.c_) {
    if (v % pk != 0)
      throw PrecisionError("ZPol: inexact division by p^" + std::to_string(k) +
                           " in Witt law construction");
    v /= pk;
  }
  return r;
}

std::shared_ptr<const LocLiftCtx> LocLiftCtx::get(const std::shared_ptr<const LocCtx>& R) {
  // not interned; cheap to build and Loc contexts are few
  auto ctx = std::make_shared<LocLiftCtx>();
  ctx->base = ZLiftCtx::get(R->k->p, R->k->s);
  for (int i = 0; i <= R->denom.deg(); ++i) {
    std::vector<BigInt> c;
    Fq ci = R->denom.coeff(i);
    for (int64_t v : ci.coeffs()) c.emplace_back(v);
    ctx->denom.emplace_back(ctx->base, std::move(c));
  }
  return ctx;
}

LocLift::LocLift(std::shared_ptr<const LocLiftCtx> C, std::vector<ZPol> num, int e)
    : C_(std::move(C)), num_(std::move(num)), e_(e) {
  while (!num_.empty() && num_.back().is_zero()) num_.pop_back();
}

LocLift LocLift::zero(std::shared_ptr<const LocLiftCtx> C) { return LocLift(std::move(C), {}, 0); }

LocLift LocLift::from_int(std::shared_ptr<const LocLiftCtx> C, int64_t a) {
  auto base = C->base;
  return LocLift(std::move(C), {ZPol::from_int(base, a)}, 0);
}

bool LocLift::is_zero() const { return num_.empty(); }

namespace {
std::vector<ZPol> polmul(const std::vector<ZPol>& a, const std::vector<ZPol>& b,
                         const std::shared_ptr<const ZLiftCtx>& base) {
  if (a.empty() || b.empty()) return {};
  std::vector<ZPol> r(a.size() + b.size() - 1, ZPol::zero(base));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j].add(a[i].mul(b[j]));
  }
  return r;
}

std::vector<ZPol> polpow(std::vector<ZPol> b, int e, const std::shared_ptr<const ZLiftCtx>& base) {
  std::vector<ZPol> r = {ZPol::from_int(base, 1)};
  while (e > 0) {
    if (e & 1) r = polmul(r, b, base);
    b = polmul(b, b, base);
    e >>= 1;
  }
  return r;
}
}  // namespace

LocLift LocLift::add(const LocLift& o) const {
  int e = std::max(e_, o.e_);
  std::vector<ZPol> a = num_, b = o.num_;
  if (e > e_) a = polmul(a, polpow(C_->denom, e - e_, C_->base), C_->base);
  if (e > o.e_) b = polmul(b, polpow(C_->denom, e - o.e_, C_->base), C_->base);
  size_t n = std::max(a.size(), b.size());
  std::vector<ZPol> r(n, ZPol::zero(C_->base));
  for (size_t i = 0; i < n; ++i) {
    ZPol v = i < a.size() ? a[i] : ZPol::zero(C_->base);
    if (i < b.size()) v = v.add(b[i]);
    r[i] = v;
  }
  return LocLift(C_, std::move(r), e);
}

LocLift LocLift::sub(const LocLift& o) const { return add(o.neg()); }

LocLift LocLift::neg() const {
  std::vector<ZPol> r;
  r.reserve(num_.size());
  for (const auto& v : num_) r.push_back(v.neg());
  return LocLift(C_, std::move(r), e_);
}

LocLift LocLift::mul(const LocLift& o) const {
  return LocLift(C_, polmul(num_, o.num_, C_->base), e_ + o.e_);
}

LocLift LocLift::pow_u(int64_t e) const {
  LocLift r = from_int(C_, 1);
  LocLift b = *this;
  while (e > 0) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

LocLift LocLift::times_p_pow(int k) const {
  std::vector<ZPol> r;
  r.reserve(num_.size());
  for (const auto& v : num_) r.push_back(v.times_p_pow(k));
  return LocLift(C_, std::move(r), e_);
}

LocLift LocLift::div_p_pow_exact(int k) const {
  std::vector<ZPol> r;
  r.reserve(num_.size());
  for (const auto& v : num_) r.push_back(v.div_p_pow_exact(k));
  return LocLift(C_, std::move(r), e_);
}

DualLift DualLift::pow_u(int64_t e) const {
  DualLift r(ZPol::from_int(a_.ctx(), 1), ZPol::zero(a_.ctx()));
  DualLift b = *this;
  while (e > 0) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

}  // namespace d2
