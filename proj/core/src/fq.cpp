#include "drinfeld2/fq.hpp"

#include <map>
#include <mutex>

#include "drinfeld2/conway.hpp"

namespace d2 {

std::shared_ptr<const FqCtx> FqCtx::get(int64_t p, int s) {
  static std::mutex mu;
  static std::map<std::pair<int64_t, int>, std::shared_ptr<const FqCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<FqCtx>();
  ctx->p = p;
  ctx->s = s;
  ctx->mod = conway_poly(p, s);
  cache[key] = ctx;
  return ctx;
}

Fq::Fq(std::shared_ptr<const FqCtx> k, std::vector<int64_t> coeffs) : k_(std::move(k)) {
  c_.assign(static_cast<size_t>(k_->s), 0);
  // reduce an arbitrary-degree coefficient vector mod the modulus
  std::vector<int64_t> w(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) w[i] = mod_pos(coeffs[i], k_->p);
  const int s = k_->s;
  for (int i = static_cast<int>(w.size()) - 1; i >= s; --i) {
    int64_t c = w[static_cast<size_t>(i)];
    if (c == 0) continue;
    w[static_cast<size_t>(i)] = 0;
    for (int j = 0; j < s; ++j)
      w[static_cast<size_t>(i - s + j)] =
          mod_pos(w[static_cast<size_t>(i - s + j)] - c * k_->mod[static_cast<size_t>(j)], k_->p);
  }
  for (int i = 0; i < s && i < static_cast<int>(w.size()); ++i) c_[static_cast<size_t>(i)] = w[static_cast<size_t>(i)];
}

Fq Fq::zero(std::shared_ptr<const FqCtx> k) { return Fq(std::move(k), {}); }
Fq Fq::one(std::shared_ptr<const FqCtx> k) { return Fq(std::move(k), {1}); }
Fq Fq::from_int(std::shared_ptr<const FqCtx> k, int64_t a) { return Fq(std::move(k), {a}); }
Fq Fq::gen(std::shared_ptr<const FqCtx> k) { return Fq(std::move(k), {0, 1}); }

bool Fq::is_zero() const {
  for (int64_t c : c_)
    if (c) return false;
  return true;
}

bool Fq::in_prime_field() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

Fq Fq::operator+(const Fq& o) const {
  if (k_ != o.k_) throw DomainError("Fq: mixed fields");
  Fq r = *this;
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = mod_pos(r.c_[i] + o.c_[i], k_->p);
  return r;
}

Fq Fq::operator-(const Fq& o) const { return *this + (-o); }

Fq Fq::operator-() const {
  Fq r = *this;
  for (auto& c : r.c_) c = mod_pos(-c, k_->p);
  return r;
}

Fq Fq::operator*(const Fq& o) const {
  if (k_ != o.k_) throw DomainError("Fq: mixed fields");
  const int s = k_->s;
  std::vector<int64_t> w(static_cast<size_t>(2 * s - 1), 0);
  for (int i = 0; i < s; ++i) {
    if (!c_[static_cast<size_t>(i)]) continue;
    for (int j = 0; j < s; ++j)
      w[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
  }
  return Fq(k_, std::move(w));
}

bool Fq::operator==(const Fq& o) const { return k_ == o.k_ && c_ == o.c_; }

bool Fq::operator<(const Fq& o) const {
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

Fq Fq::pow(int64_t e) const {
  Fq r = one(k_);
  Fq b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Fq Fq::inv() const {
  if (is_zero()) throw DomainError("Fq: inverse of zero");
  return pow(k_->q() - 2);
}

Fq Fq::frob() const { return pow(k_->p); }

Fq Fq::frob_inv() const { return frob_pow(k_->s - 1); }

Fq Fq::frob_pow(int e) const {
  int s = k_->s;
  e = static_cast<int>(mod_pos(e, s));
  Fq r = *this;
  for (int i = 0; i < e; ++i) r = r.frob();
  return r;
}

std::string Fq::str() const {
  std::string out = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + "]";
}

FqEmbed::FqEmbed(std::shared_ptr<const FqCtx> from, std::shared_ptr<const FqCtx> to)
    : from_(std::move(from)), to_(std::move(to)), gen_image_(Fq::zero(to_)) {
  if (from_->p != to_->p || to_->s % from_->s != 0)
    throw DomainError("FqEmbed: not a subfield");
  int64_t n = (to_->q() - 1) / (from_->q() - 1);
  gen_image_ = Fq::gen(to_).pow(n);
}

Fq FqEmbed::operator()(const Fq& x) const {
  if (x.ctx() != from_) throw DomainError("FqEmbed: wrong source field");
  Fq acc = Fq::zero(to_);
  Fq pw = Fq::one(to_);
  for (int i = 0; i < from_->s; ++i) {
    acc = acc + pw * Fq::from_int(to_, x.coeffs()[static_cast<size_t>(i)]);
    pw = pw * gen_image_;
  }
  return acc;
}

std::vector<Fq> fq_elements(const std::shared_ptr<const FqCtx>& k) {
  std::vector<Fq> out;
  int64_t q = k->q();
  out.reserve(static_cast<size_t>(q));
  for (int64_t idx = 0; idx < q; ++idx) {
    std::vector<int64_t> c(static_cast<size_t>(k->s));
    int64_t t = idx;
    for (int i = 0; i < k->s; ++i) {
      c[static_cast<size_t>(i)] = t % k->p;
      t /= k->p;
    }
    out.emplace_back(k, std::move(c));
  }
  return out;
}

Fq random_fq(const std::shared_ptr<const FqCtx>& k, Rng& rng) {
  std::vector<int64_t> c(static_cast<size_t>(k->s));
  for (auto& x : c) x = static_cast<int64_t>(rng.uniform(static_cast<uint64_t>(k->p)));
  return Fq(k, std::move(c));
}

}  // namespace d2
