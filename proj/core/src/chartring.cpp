#include "drinfeld2/chartring.hpp"

#include <mutex>
#include <tuple>

namespace d2 {

std::shared_ptr<const LocCtx> LocCtx::make(std::shared_ptr<const FqCtx> k, FqPoly denom,
                                           char var) {
  if (denom.is_zero()) throw DomainError("LocCtx: zero denominator");
  // interned so that ring equality can compare context identity
  static std::mutex mu;
  static std::vector<std::shared_ptr<const LocCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& c : cache)
    if (c->k == k && c->var == var && c->denom == denom) return c;
  auto ctx = std::make_shared<LocCtx>();
  ctx->k = std::move(k);
  ctx->denom = std::move(denom);
  ctx->var = var;
  cache.push_back(ctx);
  return ctx;
}

std::shared_ptr<const LocCtx> LocCtx::vertex_chart(const std::shared_ptr<const FqCtx>& k,
                                                   char var) {
  // 1 - V^{p-1}
  FqPoly g = FqPoly::constant(Fq::one(k)) - FqPoly::monomial(Fq::one(k), static_cast<int>(k->p) - 1);
  return make(k, g, var);
}

std::shared_ptr<const LocCtx> LocCtx::punctured_chart(const std::shared_ptr<const FqCtx>& k,
                                                      char var) {
  // V - V^p = V(1 - V^{p-1})
  FqPoly g = FqPoly::monomial(Fq::one(k), 1) - FqPoly::monomial(Fq::one(k), static_cast<int>(k->p));
  return make(k, g, var);
}

Loc::Loc(std::shared_ptr<const LocCtx> R, FqPoly num, int e)
    : R_(std::move(R)), num_(std::move(num)), e_(e) {
  if (e_ < 0) throw DomainError("Loc: negative denominator exponent");
  normalize();
}

void Loc::normalize() {
  if (num_.is_zero()) {
    e_ = 0;
    return;
  }
  while (e_ > 0) {
    auto [q, r] = num_.divrem(R_->denom);
    if (!r.is_zero()) break;
    num_ = q;
    --e_;
  }
}

Loc Loc::zero(std::shared_ptr<const LocCtx> R) {
  auto k = R->k;
  return Loc(std::move(R), FqPoly(k), 0);
}
Loc Loc::one(std::shared_ptr<const LocCtx> R) {
  auto k = R->k;
  return Loc(std::move(R), FqPoly::constant(Fq::one(k)), 0);
}
Loc Loc::from_fq(std::shared_ptr<const LocCtx> R, const Fq& a) {
  return Loc(std::move(R), FqPoly::constant(a), 0);
}
Loc Loc::x(std::shared_ptr<const LocCtx> R) {
  auto k = R->k;
  return Loc(std::move(R), FqPoly::x(k), 0);
}

bool Loc::is_unit() const {
  if (num_.is_zero()) return false;
  // strip all factors shared with the denominator; unit iff a nonzero constant remains
  FqPoly f = num_;
  while (true) {
    FqPoly g = fqpoly_gcd(f, R_->denom);
    if (g.deg() <= 0) break;
    f = f.divrem(g).first;
  }
  return f.deg() == 0;
}

Loc Loc::operator+(const Loc& o) const {
  if (R_ != o.R_) throw DomainError("Loc: mixed rings");
  int e = std::max(e_, o.e_);
  FqPoly a = num_ * R_->denom.pow(e - e_);
  FqPoly b = o.num_ * R_->denom.pow(e - o.e_);
  return Loc(R_, a + b, e);
}

Loc Loc::operator-(const Loc& o) const { return *this + (-o); }

Loc Loc::operator-() const { return Loc(R_, -num_, e_); }

Loc Loc::operator*(const Loc& o) const {
  if (R_ != o.R_) throw DomainError("Loc: mixed rings");
  return Loc(R_, num_ * o.num_, e_ + o.e_);
}

bool Loc::operator==(const Loc& o) const {
  if (R_ != o.R_) return false;
  // normal form is unique (domain, fixed denominator)
  return e_ == o.e_ && num_ == o.num_;
}

Loc Loc::inv() const {
  if (!is_unit()) throw DomainError("Loc: inverse of non-unit");
  // num = c * (divisors of denom); find k with num | denom^k, then
  // 1/(num/denom^e) = denom^e * (denom^k / num) / denom^k.
  int deg = num_.deg();
  int k = 0;
  FqPoly dk = FqPoly::constant(Fq::one(R_->k));
  while (dk.deg() < deg || !dk.divrem(num_).second.is_zero()) {
    dk = dk * R_->denom;
    ++k;
    if (k > deg + 1) throw DomainError("Loc: inverse failed");  // not reachable for units
  }
  FqPoly cof = dk.divrem(num_).first;
  return Loc(R_, cof * R_->denom.pow(e_), k);
}

Loc Loc::pow(int e) const {
  Loc r = one(R_);
  Loc b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Fq Loc::eval(const Fq& lambda) const {
  Fq d = R_->denom.eval(lambda);
  if (d.is_zero())
    throw DomainError("Loc: specialization on the excluded locus (denominator vanishes)");
  return num_.eval(lambda) * d.inv().pow(e_);
}

Dual Loc::eval(const Dual& a) const {
  auto k = R_->k;
  auto evalp = [&](const FqPoly& f) {
    // f(a + eps b) = f(a) + eps b f'(a)
    return Dual(f.eval(a.base()), a.eps_part() * f.derivative().eval(a.base()));
  };
  Dual d = evalp(R_->denom);
  if (!d.is_unit())
    throw DomainError("Loc: specialization on the excluded locus (denominator vanishes)");
  return evalp(num_) * d.inv().pow(e_);
}

Fq Loc::constant_term() const { return eval(Fq::zero(R_->k)); }

Loc Loc::frob_coeffs() const { return Loc(R_, num_.coeff_frob(1), e_); }

Loc Loc::p_root() const {
  // (num / denom^e)^{1/p} = (num * denom^{(p-1)e})^{1/p} / denom^e
  FqPoly scaled = num_ * R_->denom.pow(static_cast<int>(R_->k->p - 1) * e_);
  return Loc(R_, scaled.p_root(), e_);
}

std::string Loc::str() const {
  std::string s = num_.str(R_->var);
  if (e_) s = "(" + s + ")/g^" + std::to_string(e_);
  return s;
}

std::shared_ptr<const FiberCtx> FiberCtx::make(std::shared_ptr<const LocCtx> xr,
                                               std::shared_ptr<const LocCtx> yr) {
  if (xr->k != yr->k) throw DomainError("FiberCtx: mismatched base fields");
  if (xr->denom.eval(Fq::zero(xr->k)).is_zero() || yr->denom.eval(Fq::zero(yr->k)).is_zero())
    throw DomainError("FiberCtx: legs must be defined at the origin");
  static std::mutex mu;
  static std::vector<std::shared_ptr<const FiberCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& c : cache)
    if (c->xr == xr && c->yr == yr) return c;
  auto ctx = std::make_shared<FiberCtx>();
  ctx->xr = std::move(xr);
  ctx->yr = std::move(yr);
  cache.push_back(ctx);
  return ctx;
}

Fiber::Fiber(std::shared_ptr<const FiberCtx> R, Loc fx, Loc fy)
    : R_(std::move(R)), fx_(std::move(fx)), fy_(std::move(fy)) {
  if (fx_.ctx() != R_->xr || fy_.ctx() != R_->yr) throw DomainError("Fiber: wrong legs");
  if (fx_.constant_term() != fy_.constant_term())
    throw DomainError("Fiber: legs disagree at the origin");
}

Fiber Fiber::zero(std::shared_ptr<const FiberCtx> R) {
  auto xr = R->xr, yr = R->yr;
  return Fiber(std::move(R), Loc::zero(xr), Loc::zero(yr));
}
Fiber Fiber::one(std::shared_ptr<const FiberCtx> R) {
  auto xr = R->xr, yr = R->yr;
  return Fiber(std::move(R), Loc::one(xr), Loc::one(yr));
}
Fiber Fiber::from_fq(std::shared_ptr<const FiberCtx> R, const Fq& a) {
  auto xr = R->xr, yr = R->yr;
  return Fiber(std::move(R), Loc::from_fq(xr, a), Loc::from_fq(yr, a));
}
Fiber Fiber::x(std::shared_ptr<const FiberCtx> R) {
  auto xr = R->xr, yr = R->yr;
  return Fiber(std::move(R), Loc::x(xr), Loc::zero(yr));
}
Fiber Fiber::y(std::shared_ptr<const FiberCtx> R) {
  auto xr = R->xr, yr = R->yr;
  return Fiber(std::move(R), Loc::zero(xr), Loc::x(yr));
}

Fiber Fiber::operator+(const Fiber& o) const { return Fiber(R_, fx_ + o.fx_, fy_ + o.fy_); }
Fiber Fiber::operator-(const Fiber& o) const { return Fiber(R_, fx_ - o.fx_, fy_ - o.fy_); }
Fiber Fiber::operator*(const Fiber& o) const { return Fiber(R_, fx_ * o.fx_, fy_ * o.fy_); }
Fiber Fiber::operator-() const { return Fiber(R_, -fx_, -fy_); }

Fiber Fiber::inv() const { return Fiber(R_, fx_.inv(), fy_.inv()); }

Fiber Fiber::pow(int e) const { return Fiber(R_, fx_.pow(e), fy_.pow(e)); }

Dual Fiber::eval_node(const Dual& ax, const Dual& ay) const {
  if (!(ax * ay).is_zero())
    throw DomainError("Fiber: node tangent vector needs X*Y |-> 0");
  Dual vx = fx_.eval(ax);
  Dual vy = fy_.eval(ay);
  Dual c = Dual::from_base(constant_term());
  return vx + vy - c;
}

Fq Fiber::eval_point(const Fq& lx, const Fq& ly) const {
  if (!lx.is_zero() && !ly.is_zero())
    throw DomainError("Fiber: points satisfy XY = 0");
  return fx_.eval(lx) + fy_.eval(ly) - constant_term();
}

Fiber Fiber::frob_coeffs() const { return Fiber(R_, fx_.frob_coeffs(), fy_.frob_coeffs()); }

Fiber Fiber::p_root() const { return Fiber(R_, fx_.p_root(), fy_.p_root()); }

std::string Fiber::str() const { return "(" + fx_.str() + " | " + fy_.str() + ")"; }

std::pair<FqPoly, FqPoly> mixed_to_pair(const MixedPoly& m) {
  FqPoly f1 = m.xs + FqPoly::constant(m.a0);
  FqPoly f2 = m.ys + FqPoly::constant(m.a0);
  return {f1, f2};
}

MixedPoly pair_to_mixed(const FqPoly& f1, const FqPoly& f2) {
  if (f1.constant_term() != f2.constant_term())
    throw DomainError("pair_to_mixed: constant coefficients disagree");
  MixedPoly m;
  m.a0 = f1.constant_term();
  m.xs = f1 - FqPoly::constant(m.a0);
  m.ys = f2 - FqPoly::constant(m.a0);
  return m;
}

Fiber mixed_to_fiber(const std::shared_ptr<const FiberCtx>& R, const MixedPoly& m) {
  auto [f1, f2] = mixed_to_pair(m);
  return Fiber(R, Loc(R->xr, f1), Loc(R->yr, f2));
}

Fq ring_hom_apply(const SpecializeVar& f, const Loc& x) { return x.eval(f.lambda); }
Loc ring_hom_apply(const FiberLegX&, const Fiber& x) { return x.xleg(); }
Loc ring_hom_apply(const FiberLegY&, const Fiber& x) { return x.yleg(); }

}  // namespace d2
