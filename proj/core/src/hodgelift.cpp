#include "drinfeld2/hodgelift.hpp"

namespace d2 {

AXY AXY::constant(std::shared_ptr<const ZqCtx> R, const Zq& c) {
  AXY r(R);
  r.c_ = c;
  return r;
}

AXY AXY::x(std::shared_ptr<const ZqCtx> R) {
  AXY r(R);
  r.xs_ = {Zq::one(r.R_)};
  return r;
}

AXY AXY::y(std::shared_ptr<const ZqCtx> R) {
  AXY r(R);
  r.ys_ = {Zq::one(r.R_)};
  return r;
}

void AXY::trim() {
  while (!xs_.empty() && xs_.back().is_zero()) xs_.pop_back();
  while (!ys_.empty() && ys_.back().is_zero()) ys_.pop_back();
}

AXY AXY::operator+(const AXY& o) const {
  AXY r(R_);
  r.c_ = c_ + o.c_;
  r.xs_.assign(std::max(xs_.size(), o.xs_.size()), Zq::zero(R_));
  r.ys_.assign(std::max(ys_.size(), o.ys_.size()), Zq::zero(R_));
  for (size_t i = 0; i < r.xs_.size(); ++i) {
    if (i < xs_.size()) r.xs_[i] = r.xs_[i] + xs_[i];
    if (i < o.xs_.size()) r.xs_[i] = r.xs_[i] + o.xs_[i];
  }
  for (size_t i = 0; i < r.ys_.size(); ++i) {
    if (i < ys_.size()) r.ys_[i] = r.ys_[i] + ys_[i];
    if (i < o.ys_.size()) r.ys_[i] = r.ys_[i] + o.ys_[i];
  }
  r.trim();
  return r;
}

AXY AXY::operator-() const {
  AXY r = *this;
  r.c_ = -r.c_;
  for (auto& v : r.xs_) v = -v;
  for (auto& v : r.ys_) v = -v;
  return r;
}

AXY AXY::operator*(const AXY& o) const {
  // X^i * Y^j = p^{min(i,j)} X^{i-j} (or Y^{j-i})
  AXY r(R_);
  auto add_mono = [&](int i, int j, const Zq& coeff) {
    if (coeff.is_zero()) return;
    int mn = std::min(i, j);
    Zq c = coeff.times_p(mn);
    int xi = i - mn, yj = j - mn;
    if (xi > 0) {
      if (r.xs_.size() < static_cast<size_t>(xi)) r.xs_.resize(static_cast<size_t>(xi), Zq::zero(R_));
      r.xs_[static_cast<size_t>(xi - 1)] = r.xs_[static_cast<size_t>(xi - 1)] + c;
    } else if (yj > 0) {
      if (r.ys_.size() < static_cast<size_t>(yj)) r.ys_.resize(static_cast<size_t>(yj), Zq::zero(R_));
      r.ys_[static_cast<size_t>(yj - 1)] = r.ys_[static_cast<size_t>(yj - 1)] + c;
    } else {
      r.c_ = r.c_ + c;
    }
  };
  auto each = [&](const AXY& a, auto fn) {
    fn(0, 0, a.c_);
    for (size_t i = 0; i < a.xs_.size(); ++i) fn(static_cast<int>(i) + 1, 0, a.xs_[i]);
    for (size_t j = 0; j < a.ys_.size(); ++j) fn(0, static_cast<int>(j) + 1, a.ys_[j]);
  };
  each(*this, [&](int i1, int j1, const Zq& c1) {
    each(o, [&](int i2, int j2, const Zq& c2) { add_mono(i1 + i2, j1 + j2, c1 * c2); });
  });
  r.trim();
  return r;
}

bool AXY::operator==(const AXY& o) const {
  AXY d = *this + (-o);
  return d.is_zero();
}

bool AXY::is_zero() const {
  if (!c_.is_zero()) return false;
  for (const auto& v : xs_)
    if (!v.is_zero()) return false;
  for (const auto& v : ys_)
    if (!v.is_zero()) return false;
  return true;
}

Fiber AXY::reduce_mod_p(const std::shared_ptr<const FiberCtx>& F) const {
  auto k = F->xr->k;
  if (k != R_->residue_field()) throw DomainError("AXY: residue field mismatch");
  std::vector<Fq> xp = {c_.residue()}, yp = {c_.residue()};
  for (const auto& v : xs_) xp.push_back(v.residue());
  for (const auto& v : ys_) yp.push_back(v.residue());
  return Fiber(F, Loc(F->xr, FqPoly(k, xp), 0), Loc(F->yr, FqPoly(k, yp), 0));
}

std::string AXY::str() const {
  std::string s = c_.str();
  for (size_t i = 0; i < xs_.size(); ++i)
    if (!xs_[i].is_zero()) s += " + " + xs_[i].str() + "*X^" + std::to_string(i + 1);
  for (size_t j = 0; j < ys_.size(); ++j)
    if (!ys_[j].is_zero()) s += " + " + ys_[j].str() + "*Y^" + std::to_string(j + 1);
  return s;
}

bool HodgeLiftData::composite_is_p(const AXY& sample) const {
  AXY lhs = (sample * X) * Y;
  AXY rhs = sample * P;
  return lhs == rhs;
}

HodgeLiftData hodge_lift_data(int64_t p, int s, int n) {
  if (n < 1) throw DomainError("hodge_lift_data: n >= 1");
  HodgeLiftData out;
  out.n = n;
  out.R = ZqCtx::get(p, n, s);
  out.X = AXY::x(out.R);
  out.Y = AXY::y(out.R);
  out.P = AXY::constant(out.R, Zq::from_int(out.R, p));
  return out;
}

}  // namespace d2
