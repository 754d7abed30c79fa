#include "drinfeld2/fqpoly.hpp"

namespace d2 {

FqPoly::FqPoly(std::shared_ptr<const FqCtx> k, std::vector<Fq> coeffs)
    : k_(std::move(k)), c_(std::move(coeffs)) {
  normalize();
}

void FqPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqPoly FqPoly::constant(const Fq& a) {
  FqPoly r(a.ctx());
  if (!a.is_zero()) r.c_ = {a};
  return r;
}

FqPoly FqPoly::x(std::shared_ptr<const FqCtx> k) {
  FqPoly r(k);
  r.c_ = {Fq::zero(k), Fq::one(k)};
  return r;
}

FqPoly FqPoly::monomial(const Fq& a, int deg) {
  FqPoly r(a.ctx());
  if (a.is_zero()) return r;
  r.c_.assign(static_cast<size_t>(deg) + 1, Fq::zero(a.ctx()));
  r.c_.back() = a;
  return r;
}

FqPoly FqPoly::from_ints(std::shared_ptr<const FqCtx> k, const std::vector<int64_t>& c) {
  std::vector<Fq> v;
  v.reserve(c.size());
  for (int64_t a : c) v.push_back(Fq::from_int(k, a));
  return FqPoly(std::move(k), std::move(v));
}

Fq FqPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Fq::zero(k_);
  return c_[static_cast<size_t>(i)];
}

Fq FqPoly::leading() const {
  if (c_.empty()) return Fq::zero(k_);
  return c_.back();
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  if (k_ != o.k_) throw DomainError("FqPoly: mixed fields");
  FqPoly r(k_);
  size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (size_t i = 0; i < n; ++i) r.c_.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
  r.normalize();
  return r;
}

FqPoly FqPoly::operator-() const {
  FqPoly r(k_);
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(-a);
  return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (k_ != o.k_) throw DomainError("FqPoly: mixed fields");
  if (is_zero() || o.is_zero()) return FqPoly(k_);
  FqPoly r(k_);
  r.c_.assign(c_.size() + o.c_.size() - 1, Fq::zero(k_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  }
  r.normalize();
  return r;
}

FqPoly FqPoly::pow(int e) const {
  FqPoly r = constant(Fq::one(k_));
  FqPoly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Fq FqPoly::eval(const Fq& a) const {
  Fq acc = Fq::zero(k_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
  return acc;
}

FqPoly FqPoly::derivative() const {
  FqPoly r(k_);
  for (size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(Fq::from_int(k_, static_cast<int64_t>(i)) * c_[i]);
  r.normalize();
  return r;
}

std::pair<FqPoly, FqPoly> FqPoly::divrem(const FqPoly& d) const {
  if (d.is_zero()) throw DomainError("FqPoly: division by zero");
  FqPoly q(k_), r = *this;
  Fq linv = d.leading().inv();
  while (!r.is_zero() && r.deg() >= d.deg()) {
    int k = r.deg() - d.deg();
    Fq c = r.leading() * linv;
    FqPoly t = monomial(c, k);
    q = q + t;
    r = r - t * d;
  }
  return {q, r};
}

bool FqPoly::divides(const FqPoly& d) const { return divrem(d).second.is_zero(); }

FqPoly FqPoly::coeff_frob(int e) const {
  FqPoly r(k_);
  r.c_.reserve(c_.size());
  for (const auto& a : c_) r.c_.push_back(a.frob_pow(e));
  return r;
}

FqPoly FqPoly::p_root() const {
  int64_t p = k_->p;
  FqPoly r(k_);
  if (is_zero()) return r;
  r.c_.assign(c_.size() / static_cast<size_t>(p) + 1, Fq::zero(k_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (i % static_cast<size_t>(p) != 0)
      throw DomainError("FqPoly: not a p-th power");
    r.c_[i / static_cast<size_t>(p)] = c_[i].frob_inv();
  }
  r.normalize();
  return r;
}

std::string FqPoly::str(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += c_[i].str();
    if (i) out += std::string("*") + var + "^" + std::to_string(i);
  }
  return out;
}

FqPoly fqpoly_gcd(const FqPoly& a, const FqPoly& b) {
  FqPoly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = x.divrem(y);
    x = y;
    y = r;
  }
  if (!x.is_zero()) {
    Fq linv = x.leading().inv();
    x = x * FqPoly::constant(linv);
  }
  return x;
}

}  // namespace d2
