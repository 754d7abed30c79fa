#include "drinfeld2/zq.hpp"

#include <map>
#include <mutex>

#include "drinfeld2/conway.hpp"

namespace d2 {
namespace {

// polynomial helpers mod (p^n, mod); coefficient vectors low->high, size s
std::vector<int64_t> polreduce(const std::vector<int64_t>& w, const std::vector<int64_t>& mod,
                               int s, int64_t pn) {
  std::vector<int64_t> r(w);
  for (auto& c : r) c = mod_pos(c, pn);
  for (int i = static_cast<int>(r.size()) - 1; i >= s; --i) {
    int64_t c = r[static_cast<size_t>(i)];
    if (!c) continue;
    r[static_cast<size_t>(i)] = 0;
    for (int j = 0; j < s; ++j) {
      auto& x = r[static_cast<size_t>(i - s + j)];
      x = mod_pos(x - ((c * mod[static_cast<size_t>(j)]) % pn), pn);
    }
  }
  r.resize(static_cast<size_t>(s), 0);
  return r;
}

std::vector<int64_t> polmul(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                            const std::vector<int64_t>& mod, int s, int64_t pn) {
  std::vector<int64_t> w(static_cast<size_t>(2 * s - 1), 0);
  for (int i = 0; i < s; ++i) {
    if (!a[static_cast<size_t>(i)]) continue;
    for (int j = 0; j < s; ++j) {
      auto& x = w[static_cast<size_t>(i + j)];
      x = mod_pos(x + (a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]) % pn, pn);
    }
  }
  return polreduce(w, mod, s, pn);
}

}  // namespace

std::shared_ptr<const ZqCtx> ZqCtx::get(int64_t p, int n, int s) {
  static std::mutex mu;
  static std::map<std::tuple<int64_t, int, int>, std::shared_ptr<const ZqCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, n, s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto ctx = std::make_shared<ZqCtx>();
  ctx->p = p;
  ctx->n = n;
  ctx->s = s;
  ctx->pn = ipow(p, n);
  ctx->mod = conway_poly(p, s);
  ctx->mod.pop_back();  // drop the leading 1; reduction assumes monic

  // sigma(t): the root of the modulus congruent to t^p mod p (Hensel/Newton).
  {
    std::vector<int64_t> t(static_cast<size_t>(s), 0);
    if (s == 1) {
      t[0] = mod_pos(-ctx->mod[0], ctx->pn);  // t = -c0
    } else {
      t[1] = 1;
    }
    Zq r = Zq(ctx, t).pow(p);
    // Newton: r <- r - f(r)/f'(r), where f = modulus (monic degree s)
    const auto& full = conway_poly(p, s);
    for (int iter = 0; iter <= n + 1; ++iter) {
      Zq fr = Zq::zero(ctx), dfr = Zq::zero(ctx), pw = Zq::one(ctx);
      for (int i = 0; i <= s; ++i) {
        Zq ci = Zq::from_int(ctx, full[static_cast<size_t>(i)]);
        fr = fr + ci * pw;
        if (i < s) {
          Zq ci1 = Zq::from_int(ctx, (i + 1) * full[static_cast<size_t>(i + 1)] % ctx->pn);
          dfr = dfr + ci1 * pw;
        }
        pw = pw * r;
      }
      if (fr.is_zero()) break;
      r = r - fr * dfr.inv();
    }
    ctx->sigma_t = r.coeffs();
  }

  cache[key] = ctx;
  return ctx;
}

Zq::Zq(std::shared_ptr<const ZqCtx> R, std::vector<int64_t> coeffs) : R_(std::move(R)) {
  c_ = polreduce(coeffs, R_->mod, R_->s, R_->pn);
}

Zq Zq::zero(std::shared_ptr<const ZqCtx> R) { return Zq(std::move(R), {}); }
Zq Zq::one(std::shared_ptr<const ZqCtx> R) { return Zq(std::move(R), {1}); }
Zq Zq::from_int(std::shared_ptr<const ZqCtx> R, int64_t a) { return Zq(std::move(R), {a}); }

bool Zq::is_zero() const {
  for (int64_t c : c_)
    if (c) return false;
  return true;
}

int Zq::val() const {
  int v = R_->n;
  for (int64_t c : c_) v = std::min(v, val_p(c, R_->p, R_->n));
  return v;
}

Zq Zq::operator+(const Zq& o) const {
  if (R_ != o.R_) throw DomainError("Zq: mixed rings");
  Zq r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_pos(r.c_[i] + o.c_[i], R_->pn);
  return r;
}

Zq Zq::operator-(const Zq& o) const { return *this + (-o); }

Zq Zq::operator-() const {
  Zq r = *this;
  for (auto& c : r.c_) c = mod_pos(-c, R_->pn);
  return r;
}

Zq Zq::operator*(const Zq& o) const {
  if (R_ != o.R_) throw DomainError("Zq: mixed rings");
  Zq r;
  r.R_ = R_;
  r.c_ = polmul(c_, o.c_, R_->mod, R_->s, R_->pn);
  return r;
}

bool Zq::operator==(const Zq& o) const { return R_ == o.R_ && c_ == o.c_; }

Zq Zq::pow(int64_t e) const {
  Zq r = one(R_);
  Zq b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Zq Zq::inv() const {
  if (!is_unit()) throw DomainError("Zq: inverse of a non-unit");
  // lift the residue-field inverse, then Newton z <- z(2 - xz)
  Fq r0 = residue().inv();
  std::vector<int64_t> init(c_.size(), 0);
  for (size_t i = 0; i < r0.coeffs().size(); ++i) init[i] = r0.coeffs()[i];
  Zq z(R_, init);
  Zq two = from_int(R_, 2);
  for (int i = 0; i < R_->n + 1; ++i) {
    Zq e = two - (*this) * z;
    z = z * e;
  }
  return z;
}

Zq Zq::div_p(int k) const {
  Zq r = *this;
  int64_t pk = ipow(R_->p, k);
  for (auto& c : r.c_) {
    if (c % pk != 0) throw PrecisionError("Zq: inexact division by p^" + std::to_string(k));
    c /= pk;
  }
  return r;
}

Zq Zq::times_p(int k) const {
  Zq r = *this;
  int64_t pk = ipow(R_->p, k);
  for (auto& c : r.c_) c = mod_pos((c % R_->pn) * (pk % R_->pn) % R_->pn, R_->pn);
  return r;
}

Zq Zq::sigma() const {
  // evaluate the coefficient vector at sigma(t)
  Zq img(R_, R_->sigma_t);
  Zq acc = zero(R_), pw = one(R_);
  for (int i = 0; i < R_->s; ++i) {
    acc = acc + pw * from_int(R_, c_[static_cast<size_t>(i)]);
    pw = pw * img;
  }
  return acc;
}

Zq Zq::sigma_pow(int e) const {
  e = static_cast<int>(mod_pos(e, R_->s));
  Zq r = *this;
  for (int i = 0; i < e; ++i) r = r.sigma();
  return r;
}

Fq Zq::residue() const {
  std::vector<int64_t> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] % R_->p;
  return Fq(R_->residue_field(), std::move(c));
}

Zq Zq::reduce_to(const std::shared_ptr<const ZqCtx>& R2) const {
  if (R2->p != R_->p || R2->s != R_->s || R2->n > R_->n)
    throw DomainError("Zq: invalid precision reduction");
  std::vector<int64_t> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] % R2->pn;
  return Zq(R2, std::move(c));
}

std::string Zq::str() const {
  std::string out = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + "]";
}

Zq teichmueller(const std::shared_ptr<const ZqCtx>& R, const Fq& a) {
  if (a.ctx() != R->residue_field()) throw DomainError("teichmueller: wrong field");
  std::vector<int64_t> c(static_cast<size_t>(R->s), 0);
  for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] = a.coeffs()[i];
  Zq x(R, std::move(c));
  int64_t q = ipow(R->p, R->s);
  for (int i = 0; i < R->n; ++i) x = x.pow(q);
  return x;
}

Zq witt_coords_to_zq(const std::shared_ptr<const ZqCtx>& R, const std::vector<Fq>& coords) {
  Zq acc = Zq::zero(R);
  for (size_t i = 0; i < coords.size(); ++i) {
    Fq a = coords[i].frob_pow(-static_cast<int>(i));
    acc = acc + teichmueller(R, a).times_p(static_cast<int>(i));
  }
  return acc;
}

std::vector<Fq> zq_to_witt_coords(const Zq& x, int m) {
  if (m > x.ctx()->n) throw PrecisionError("zq_to_witt_coords: not enough digits");
  std::vector<Fq> out;
  Zq y = x;
  for (int i = 0; i < m; ++i) {
    Fq r = y.residue();
    out.push_back(r.frob_pow(i));
    y = (y - teichmueller(x.ctx(), r)).div_p(1);
  }
  return out;
}

ZqEmbed::ZqEmbed(std::shared_ptr<const ZqCtx> from, std::shared_ptr<const ZqCtx> to)
    : from_(std::move(from)), to_(std::move(to)), gen_image_(Zq::zero(to_)) {
  if (from_->p != to_->p || from_->n != to_->n || to_->s % from_->s != 0)
    throw DomainError("ZqEmbed: incompatible rings");
  // Hensel-lift the field embedding image of the source generator to a root
  // of the source modulus inside the target ring.
  FqEmbed femb(from_->residue_field(), to_->residue_field());
  Fq g0 = femb(Fq::gen(from_->residue_field()));
  std::vector<int64_t> init(static_cast<size_t>(to_->s), 0);
  for (size_t i = 0; i < g0.coeffs().size(); ++i) init[i] = g0.coeffs()[i];
  Zq r(to_, std::move(init));
  const auto& f = conway_poly(from_->p, from_->s);
  for (int iter = 0; iter <= to_->n + 1; ++iter) {
    Zq fr = Zq::zero(to_), dfr = Zq::zero(to_), pw = Zq::one(to_);
    for (int i = 0; i <= from_->s; ++i) {
      fr = fr + Zq::from_int(to_, f[static_cast<size_t>(i)]) * pw;
      if (i < from_->s)
        dfr = dfr + Zq::from_int(to_, (i + 1) * f[static_cast<size_t>(i + 1)] % to_->pn) * pw;
      pw = pw * r;
    }
    if (fr.is_zero()) break;
    r = r - fr * dfr.inv();
  }
  gen_image_ = r;
}

Zq ZqEmbed::operator()(const Zq& x) const {
  if (x.ctx() != from_) throw DomainError("ZqEmbed: wrong source ring");
  Zq acc = Zq::zero(to_), pw = Zq::one(to_);
  for (int i = 0; i < from_->s; ++i) {
    acc = acc + pw * Zq::from_int(to_, x.coeffs()[static_cast<size_t>(i)]);
    pw = pw * gen_image_;
  }
  return acc;
}

Zq random_zq(const std::shared_ptr<const ZqCtx>& R, Rng& rng) {
  std::vector<int64_t> c(static_cast<size_t>(R->s));
  for (auto& x : c) x = static_cast<int64_t>(rng.uniform(static_cast<uint64_t>(R->pn)));
  return Zq(R, std::move(c));
}

}  // namespace d2
