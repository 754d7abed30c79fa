#include "drinfeld2/qp.hpp"

#include <map>
#include <mutex>

namespace d2 {

namespace {
constexpr int kExactPrec = 1 << 20;

int64_t mulmod(int64_t a, int64_t b, int64_t n) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % n);
}

int64_t inv_mod(int64_t a, int64_t n) {
  int64_t t = 0, newt = 1, r = n, newr = mod_pos(a, n);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw DomainError("Qp: unit inverse failed");
  return mod_pos(t, n);
}

int64_t big_mod(const BigInt& a, int64_t n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return static_cast<int64_t>(r);
}
}  // namespace

std::shared_ptr<const QpCtx> QpCtx::get(int64_t p, int N) {
  static std::mutex mu;
  static std::map<std::pair<int64_t, int>, std::shared_ptr<const QpCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, N);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<QpCtx>();
  ctx->p = p;
  ctx->N = N;
  cache[key] = ctx;
  return ctx;
}

void Qp::normalize_exact() {
  if (kind_ != Kind::Exact) return;
  if (num_ == 0) {
    kind_ = Kind::Zero;
    num_ = 0;
    e_ = 0;
    return;
  }
  while (num_ % C_->p == 0) {
    num_ /= C_->p;
    ++e_;
  }
}

Qp Qp::zero(std::shared_ptr<const QpCtx> C) {
  Qp r;
  r.C_ = std::move(C);
  return r;
}

Qp Qp::make_big(std::shared_ptr<const QpCtx> C, BigInt a, int e) {
  Qp r;
  r.C_ = std::move(C);
  r.kind_ = Kind::Exact;
  r.num_ = std::move(a);
  r.e_ = e;
  r.normalize_exact();
  return r;
}

Qp Qp::make(std::shared_ptr<const QpCtx> C, int64_t a, int e) {
  return make_big(std::move(C), BigInt(a), e);
}

Qp Qp::from_int(std::shared_ptr<const QpCtx> C, int64_t a) { return make(std::move(C), a, 0); }

int Qp::val() const {
  switch (kind_) {
    case Kind::Zero:
      throw PrecisionError("Qp: valuation of exact zero");
    case Kind::Exact:
      return e_;
    default:
      return v_;
  }
}

int Qp::prec() const { return kind_ == Kind::Approx ? prec_ : kExactPrec; }

int64_t Qp::unit_mod(int k) const {
  int64_t pk = ipow(C_->p, k);
  switch (kind_) {
    case Kind::Zero:
      throw PrecisionError("Qp: unit of exact zero");
    case Kind::Exact:
      return big_mod(num_, pk);
    default:
      if (k > prec_) throw PrecisionError("Qp: not enough unit digits");
      return mod_pos(u_, pk);
  }
}

Qp Qp::to_approx(int prec) const {
  if (kind_ == Kind::Approx) return *this;
  if (kind_ == Kind::Zero) throw PrecisionError("Qp: cannot view exact zero at finite precision");
  Qp r;
  r.C_ = C_;
  r.kind_ = Kind::Approx;
  r.v_ = e_;
  r.prec_ = std::min(prec, C_->N + 6);
  r.u_ = big_mod(num_, ipow(C_->p, r.prec_));
  return r;
}

Qp Qp::operator*(const Qp& o) const {
  if (C_ != o.C_) throw DomainError("Qp: mixed contexts");
  if (kind_ == Kind::Zero || o.kind_ == Kind::Zero) return zero(C_);
  if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
    return make_big(C_, num_ * o.num_, e_ + o.e_);
  Qp a = to_approx(o.prec()), b = o.to_approx(prec());
  Qp r;
  r.C_ = C_;
  r.kind_ = Kind::Approx;
  r.v_ = a.v_ + b.v_;
  r.prec_ = std::min(a.prec_, b.prec_);
  int64_t pk = ipow(C_->p, r.prec_);
  r.u_ = mod_pos(mulmod(a.u_ % pk, b.u_ % pk, pk), pk);
  return r;
}

Qp Qp::operator-() const {
  Qp r = *this;
  if (r.kind_ == Kind::Exact) r.num_ = -r.num_;
  if (r.kind_ == Kind::Approx) r.u_ = mod_pos(-r.u_, ipow(C_->p, r.prec_));
  return r;
}

Qp Qp::operator+(const Qp& o) const {
  if (C_ != o.C_) throw DomainError("Qp: mixed contexts");
  if (kind_ == Kind::Zero) return o;
  if (o.kind_ == Kind::Zero) return *this;
  if (kind_ == Kind::Exact && o.kind_ == Kind::Exact) {
    int e = std::min(e_, o.e_);
    BigInt a = num_ * boost::multiprecision::pow(BigInt(C_->p), static_cast<unsigned>(e_ - e));
    BigInt b = o.num_ * boost::multiprecision::pow(BigInt(C_->p), static_cast<unsigned>(o.e_ - e));
    return make_big(C_, a + b, e);
  }
  // at least one approximate summand: interval arithmetic with loud failure
  Qp a = kind_ == Kind::Exact ? to_approx(o.prec() + std::max(0, e_ - o.val()) + 1) : *this;
  Qp b = o.kind_ == Kind::Exact ? o.to_approx(prec() + std::max(0, o.e_ - val()) + 1) : o;
  int v = std::min(a.v_, b.v_);
  int abs1 = (a.v_ - v) + a.prec_;
  int abs2 = (b.v_ - v) + b.prec_;
  int known = std::min(abs1, abs2);
  if (known <= 0) throw PrecisionError("Qp: addition exhausts precision");
  int max_digits = 0;
  for (int64_t q = 1; q <= (int64_t(1) << 62) / C_->p; q *= C_->p) ++max_digits;
  known = std::min(known, std::min(C_->N + 6 + (v < 0 ? -v : 0), max_digits));
  int64_t pk = ipow(C_->p, known);
  auto shifted = [&](const Qp& x) -> int64_t {
    if (x.v_ - v >= known) return 0;
    return mod_pos(mulmod(x.u_ % pk, ipow(C_->p, x.v_ - v) % pk, pk), pk);
  };
  int64_t s = mod_pos(shifted(a) + shifted(b), pk);
  if (s == 0) throw PrecisionError("Qp: cancellation below known precision");
  Qp r;
  r.C_ = C_;
  r.kind_ = Kind::Approx;
  int w = 0;
  while (s % C_->p == 0) {
    s /= C_->p;
    ++w;
  }
  r.v_ = v + w;
  r.prec_ = std::min(known - w, C_->N + 6);
  r.u_ = mod_pos(s, ipow(C_->p, r.prec_));
  return r;
}

Qp Qp::operator-(const Qp& o) const { return *this + (-o); }

Qp Qp::inv() const {
  if (kind_ == Kind::Zero) throw DomainError("Qp: inverse of zero");
  if (kind_ == Kind::Exact && (num_ == 1 || num_ == -1)) {
    Qp r = *this;
    r.e_ = -e_;
    return r;  // exact inverse of +-p^e
  }
  Qp a = to_approx(C_->N);
  Qp r;
  r.C_ = C_;
  r.kind_ = Kind::Approx;
  r.v_ = -a.v_;
  r.prec_ = a.prec_;
  r.u_ = inv_mod(a.u_, ipow(C_->p, a.prec_));
  return r;
}

Qp Qp::times_p_pow(int k) const {
  Qp r = *this;
  if (r.kind_ == Kind::Exact) r.e_ += k;
  if (r.kind_ == Kind::Approx) r.v_ += k;
  return r;
}

bool Qp::operator==(const Qp& o) const {
  if (C_ != o.C_) return false;
  if (kind_ == Kind::Zero || o.kind_ == Kind::Zero) {
    if (kind_ == o.kind_) return true;
    const Qp& other = kind_ == Kind::Zero ? o : *this;
    // approximate values carry a definite valuation, hence are nonzero
    (void)other;
    return false;
  }
  if (kind_ == Kind::Exact && o.kind_ == Kind::Exact)
    return e_ == o.e_ && num_ == o.num_;
  if (val() != o.val()) return false;
  int k = std::min({prec(), o.prec(), C_->N + 4});
  return unit_mod(k) == o.unit_mod(k);
}

int64_t Qp::residue_mod(int k) const {
  if (kind_ == Kind::Zero) return 0;
  if (val() < 0) throw DomainError("Qp: residue of a non-integral element");
  if (val() >= k) return 0;
  int64_t pk = ipow(C_->p, k);
  int64_t u = unit_mod(k);
  return mod_pos(mulmod(u % pk, ipow(C_->p, val()) % pk, pk), pk);
}

std::string Qp::str() const {
  if (kind_ == Kind::Zero) return "0";
  if (kind_ == Kind::Exact) return num_.str() + "*p^" + std::to_string(e_);
  return "p^" + std::to_string(v_) + "*" + std::to_string(u_);
}

}  // namespace d2
