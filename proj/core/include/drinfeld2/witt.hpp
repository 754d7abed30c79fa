#pragma once

#include <memory>
#include <type_traits>
#include <vector>

#include "drinfeld2/lifts.hpp"

namespace d2 {

/// Ghost components over a torsion-free lift ring: g_n = sum_j p^j x_j^{p^{n-j}}.
template <class L>
std::vector<L> ghost_of_lift(const std::vector<L>& x, int64_t p) {
  std::vector<L> g;
  g.reserve(x.size());
  for (size_t n = 0; n < x.size(); ++n) {
    L acc = x[0].pow_u(ipow(p, static_cast<int>(n)));
    for (size_t j = 1; j <= n; ++j)
      acc = acc.add(x[j].pow_u(ipow(p, static_cast<int>(n - j))).times_p_pow(static_cast<int>(j)));
    g.push_back(acc);
  }
  return g;
}

/// Inverse of the ghost map. Every division must be exact; a failed division
/// means the ghost vector is not in the image and construction aborts.
template <class L>
std::vector<L> unghost(const std::vector<L>& w, int64_t p) {
  std::vector<L> z;
  z.reserve(w.size());
  for (size_t n = 0; n < w.size(); ++n) {
    L acc = w[n];
    for (size_t j = 0; j < n; ++j)
      acc = acc.sub(z[j].pow_u(ipow(p, static_cast<int>(n - j))).times_p_pow(static_cast<int>(j)));
    z.push_back(acc.div_p_pow_exact(static_cast<int>(n)));
  }
  return z;
}

/// Lift/reduce bridge between a coefficient ring and its lift ring.
template <class R>
struct WittRing;  // specializations below

template <>
struct WittRing<Fq> {
  using Lift = ZPol;
  static constexpr bool is_char_p = true;
  static int64_t p(const Fq& x) { return x.ctx()->p; }
  static Lift lift(const Fq& x) {
    auto C = ZLiftCtx::get(x.ctx()->p, x.ctx()->s);
    std::vector<BigInt> c;
    for (int64_t v : x.coeffs()) c.emplace_back(v);
    return ZPol(C, std::move(c));
  }
  static Fq reduce(const Lift& l, const Fq& proto) {
    std::vector<int64_t> c;
    c.reserve(l.coeffs().size());
    for (const auto& v : l.coeffs()) {
      BigInt r = v % proto.ctx()->p;
      if (r < 0) r += proto.ctx()->p;
      c.push_back(static_cast<int64_t>(r));
    }
    return Fq(proto.ctx(), std::move(c));
  }
  static Fq zero(const Fq& proto) { return Fq::zero(proto.ctx()); }
  static Fq one(const Fq& proto) { return Fq::one(proto.ctx()); }
  static Fq from_int(const Fq& proto, int64_t a) { return Fq::from_int(proto.ctx(), a); }
  static Fq ring_pow_p(const Fq& x) { return x.frob(); }
  static bool is_unit(const Fq& x) { return !x.is_zero(); }
};

template <>
struct WittRing<Zq> {
  using Lift = ZPol;
  static constexpr bool is_char_p = false;
  static int64_t p(const Zq& x) { return x.ctx()->p; }
  static Lift lift(const Zq& x) {
    auto C = ZLiftCtx::get(x.ctx()->p, x.ctx()->s);
    std::vector<BigInt> c;
    for (int64_t v : x.coeffs()) c.emplace_back(v);
    return ZPol(C, std::move(c));
  }
  static Zq reduce(const Lift& l, const Zq& proto) {
    std::vector<int64_t> c;
    c.reserve(l.coeffs().size());
    BigInt pn(proto.ctx()->pn);
    for (const auto& v : l.coeffs()) {
      BigInt r = v % pn;
      if (r < 0) r += pn;
      c.push_back(static_cast<int64_t>(r));
    }
    return Zq(proto.ctx(), std::move(c));
  }
  static Zq zero(const Zq& proto) { return Zq::zero(proto.ctx()); }
  static Zq one(const Zq& proto) { return Zq::one(proto.ctx()); }
  static Zq from_int(const Zq& proto, int64_t a) { return Zq::from_int(proto.ctx(), a); }
  static Zq ring_pow_p(const Zq& x) { return x.pow(x.ctx()->p); }
  static bool is_unit(const Zq& x) { return x.is_unit(); }
};

template <>
struct WittRing<Loc> {
  using Lift = LocLift;
  static constexpr bool is_char_p = true;
  static int64_t p(const Loc& x) { return x.ctx()->k->p; }
  static Lift lift(const Loc& x) {
    auto C = LocLiftCtx::get(x.ctx());
    std::vector<ZPol> num;
    for (int i = 0; i <= x.num().deg(); ++i) {
      std::vector<BigInt> c;
      Fq ci = x.num().coeff(i);
      for (int64_t v : ci.coeffs()) c.emplace_back(v);
      num.emplace_back(C->base, std::move(c));
    }
    return LocLift(C, std::move(num), x.denom_exp());
  }
  static Loc reduce(const Lift& l, const Loc& proto) {
    auto k = proto.ctx()->k;
    std::vector<Fq> num;
    num.reserve(l.num().size());
    for (const auto& zp : l.num()) {
      std::vector<int64_t> c;
      for (const auto& v : zp.coeffs()) {
        BigInt r = v % k->p;
        if (r < 0) r += k->p;
        c.push_back(static_cast<int64_t>(r));
      }
      num.emplace_back(k, std::move(c));
    }
    return Loc(proto.ctx(), FqPoly(k, std::move(num)), l.denom_exp());
  }
  static Loc zero(const Loc& proto) { return Loc::zero(proto.ctx()); }
  static Loc one(const Loc& proto) { return Loc::one(proto.ctx()); }
  static Loc from_int(const Loc& proto, int64_t a) {
    return Loc::from_fq(proto.ctx(), Fq::from_int(proto.ctx()->k, a));
  }
  static Loc ring_pow_p(const Loc& x) { return x.pow(static_cast<int>(x.ctx()->k->p)); }
  static bool is_unit(const Loc& x) { return x.is_unit(); }
};

template <>
struct WittRing<Dual> {
  using Lift = DualLift;
  static constexpr bool is_char_p = true;
  static int64_t p(const Dual& x) { return x.ctx()->p; }
  static Lift lift(const Dual& x) {
    return DualLift(WittRing<Fq>::lift(x.base()), WittRing<Fq>::lift(x.eps_part()));
  }
  static Dual reduce(const Lift& l, const Dual& proto) {
    Fq fproto = Fq::zero(proto.ctx());
    return Dual(WittRing<Fq>::reduce(l.a(), fproto), WittRing<Fq>::reduce(l.b(), fproto));
  }
  static Dual zero(const Dual& proto) { return Dual::zero(proto.ctx()); }
  static Dual one(const Dual& proto) { return Dual::one(proto.ctx()); }
  static Dual from_int(const Dual& proto, int64_t a) {
    return Dual::from_base(Fq::from_int(proto.ctx(), a));
  }
  static Dual ring_pow_p(const Dual& x) { return x.pow(x.ctx()->p); }
  static bool is_unit(const Dual& x) { return x.is_unit(); }
};

template <>
struct WittRing<Fiber> {
  using Lift = FiberLift;
  static constexpr bool is_char_p = true;
  static int64_t p(const Fiber& x) { return x.ctx()->xr->k->p; }
  static Lift lift(const Fiber& x) {
    return FiberLift(WittRing<Loc>::lift(x.xleg()), WittRing<Loc>::lift(x.yleg()));
  }
  static Fiber reduce(const Lift& l, const Fiber& proto) {
    Loc px = Loc::zero(proto.ctx()->xr), py = Loc::zero(proto.ctx()->yr);
    return Fiber(proto.ctx(), WittRing<Loc>::reduce(l.x(), px), WittRing<Loc>::reduce(l.y(), py));
  }
  static Fiber zero(const Fiber& proto) { return Fiber::zero(proto.ctx()); }
  static Fiber one(const Fiber& proto) { return Fiber::one(proto.ctx()); }
  static Fiber from_int(const Fiber& proto, int64_t a) {
    return Fiber::from_fq(proto.ctx(), Fq::from_int(proto.ctx()->xr->k, a));
  }
  static Fiber ring_pow_p(const Fiber& x) { return x.pow(static_cast<int>(p(x))); }
  static bool is_unit(const Fiber& x) { return x.is_unit(); }
};

/// Truncated p-typical Witt vector over R, fixed length m >= 1. All binary
/// operations demand matching length and coefficient ring.
template <class R>
class WittVec {
 public:
  using TR = WittRing<R>;

  WittVec() = default;
  explicit WittVec(std::vector<R> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw DomainError("WittVec: length zero");
  }
  static WittVec zero(const R& proto, int m) { return filled(proto, m, TR::zero(proto)); }
  static WittVec one(const R& proto, int m) {
    WittVec w = zero(proto, m);
    w.c_[0] = TR::one(proto);
    return w;
  }
  static WittVec teich(const R& a, int m) {
    WittVec w = zero(a, m);
    w.c_[0] = a;
    return w;
  }
  /// The image of an integer under Z -> W_m(R).
  static WittVec from_int(const R& proto, int m, int64_t a) {
    int64_t p = TR::p(proto);
    using L = typename TR::Lift;
    std::vector<L> g(static_cast<size_t>(m), lift_int(proto, a));
    std::vector<L> z = unghost(g, p);
    return reduce_vec(z, proto);
  }

  int length() const { return static_cast<int>(c_.size()); }
  const std::vector<R>& coords() const { return c_; }
  const R& coord(int i) const { return c_[static_cast<size_t>(i)]; }
  const R& w0() const { return c_[0]; }
  const R& proto() const { return c_[0]; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!v.is_zero()) return false;
    return true;
  }
  bool operator==(const WittVec& o) const { return c_ == o.c_; }
  bool operator!=(const WittVec& o) const { return !(*this == o); }

  WittVec operator+(const WittVec& o) const { return binop(o, /*mul=*/false, /*sub=*/false); }
  WittVec operator-(const WittVec& o) const { return binop(o, false, true); }
  WittVec operator*(const WittVec& o) const { return binop(o, true, false); }
  WittVec operator-() const {
    WittVec z = zero(proto(), length());
    return z - *this;
  }
  WittVec scale_int(int64_t a) const { return *this * from_int(proto(), length(), a); }

  /// Verschiebung W_{m-1} -> W_m: shift coordinates up.
  WittVec verschiebung() const {
    std::vector<R> c;
    c.reserve(c_.size() + 1);
    c.push_back(TR::zero(proto()));
    for (const auto& v : c_) c.push_back(v);
    return WittVec(std::move(c));
  }

  /// Length-preserving Verschiebung: shift up and drop the top coordinate.
  WittVec verschiebung_trunc() const { return verschiebung().truncate(length()); }

  /// Frobenius W_m -> W_{m-1} via the universal (ghost) route.
  WittVec frobenius() const {
    if (length() < 2) throw DomainError("WittVec: Frobenius needs length >= 2");
    int64_t p = TR::p(proto());
    auto lifts = lift_vec();
    auto g = ghost_of_lift(lifts, p);
    g.erase(g.begin());
    return reduce_vec(unghost(g, p), proto());
  }

  /// Coordinatewise p-th power; agrees with the length-m Frobenius lift over
  /// perfect fields only.
  WittVec frobenius_perfect() const {
    static_assert(std::is_same_v<R, Fq>, "coordinatewise Frobenius is for perfect fields");
    std::vector<R> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(v.frob());
    return WittVec(std::move(c));
  }

  /// Exact length-m Witt Frobenius for char-p coefficient rings:
  /// F(w) = [c_0^p] + V(F(c_1, ..., c_{m-1}, 0)), using p.V^{m-1} = 0.
  WittVec sigma() const {
    static_assert(TR::is_char_p, "sigma: char-p coefficient rings only");
    if (length() == 1) return WittVec({TR::ring_pow_p(c_[0])});
    std::vector<R> tail(c_.begin() + 1, c_.end());
    tail.push_back(TR::zero(proto()));
    WittVec t(std::move(tail));
    WittVec pt = t.frobenius().verschiebung();  // p*t
    return teich(TR::ring_pow_p(c_[0]), length()) + pt;
  }

  /// Multiplication by p (exact at length m for char-p rings).
  WittVec times_p() const {
    if constexpr (TR::is_char_p) {
      if (length() == 1) return zero(proto(), 1);
      return frobenius().verschiebung();
    } else {
      return scale_int(TR::p(proto()));
    }
  }

  bool is_unit() const { return TR::is_unit(c_[0]); }

  WittVec inv() const {
    if (!is_unit()) throw DomainError("WittVec: inverse of non-unit");
    // Newton on the V-adic filtration
    WittVec z = teich(inv_r(c_[0]), length());
    WittVec two = from_int(proto(), length(), 2);
    for (int i = 0; i < length() + 1; ++i) {
      z = z * (two - *this * z);
    }
    return z;
  }

  WittVec truncate(int m2) const {
    if (m2 < 1 || m2 > length()) throw DomainError("WittVec: bad truncation");
    return WittVec(std::vector<R>(c_.begin(), c_.begin() + m2));
  }

  /// Ghost components of the coordinatewise lift (oracle use).
  std::vector<typename TR::Lift> ghost_lift() const {
    return ghost_of_lift(lift_vec(), TR::p(proto()));
  }

 private:
  static WittVec filled(const R&, int m, const R& v) {
    if (m < 1) throw DomainError("WittVec: length zero");
    return WittVec(std::vector<R>(static_cast<size_t>(m), v));
  }
  static typename TR::Lift lift_int([[maybe_unused]] const R& proto, int64_t a) {
    auto one = TR::lift(TR::one(proto));
    auto z = one.sub(one);
    // build a as a lift-integer
    bool negv = a < 0;
    uint64_t mag = negv ? static_cast<uint64_t>(-a) : static_cast<uint64_t>(a);
    auto acc = z;
    auto pw = one;
    while (mag) {
      if (mag & 1) acc = acc.add(pw);
      pw = pw.add(pw);
      mag >>= 1;
    }
    return negv ? acc.neg() : acc;
  }
  static R inv_r(const R& x) {
    if constexpr (std::is_same_v<R, Fq>)
      return x.inv();
    else if constexpr (std::is_same_v<R, Zq>)
      return x.inv();
    else
      return x.inv();
  }
  std::vector<typename TR::Lift> lift_vec() const {
    std::vector<typename TR::Lift> l;
    l.reserve(c_.size());
    for (const auto& v : c_) l.push_back(TR::lift(v));
    return l;
  }
  static WittVec reduce_vec(const std::vector<typename TR::Lift>& l, const R& proto) {
    std::vector<R> c;
    c.reserve(l.size());
    for (const auto& v : l) c.push_back(TR::reduce(v, proto));
    return WittVec(std::move(c));
  }
  WittVec binop(const WittVec& o, bool mul, bool sub) const {
    if (length() != o.length())
      throw DomainError("WittVec: mixed truncation lengths");
    int64_t p = TR::p(proto());
    auto ga = ghost_of_lift(lift_vec(), p);
    auto gb = ghost_of_lift(o.lift_vec(), p);
    std::vector<typename TR::Lift> g;
    g.reserve(ga.size());
    for (size_t i = 0; i < ga.size(); ++i) {
      if (mul)
        g.push_back(ga[i].mul(gb[i]));
      else if (sub)
        g.push_back(ga[i].sub(gb[i]));
      else
        g.push_back(ga[i].add(gb[i]));
    }
    return reduce_vec(unghost(g, p), proto());
  }

  std::vector<R> c_;
};

/// The structure laws of W_m over Z: evaluation engine with cached p-powers.
/// The universal polynomials are represented procedurally (ghost recursion
/// with mandatory exact division); the integrality invariant is checked by
/// evaluating on Witt vectors over Z and comparing ghosts.
class WittLaw {
 public:
  static std::shared_ptr<const WittLaw> get(int64_t p, int m);

  int64_t p() const { return p_; }
  int m() const { return m_; }

  std::vector<BigInt> add(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const;
  std::vector<BigInt> mul(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const;
  std::vector<BigInt> neg(const std::vector<BigInt>& x) const;
  std::vector<BigInt> ghost(const std::vector<BigInt>& x) const;

 private:
  WittLaw(int64_t p, int m) : p_(p), m_(m) {}
  int64_t p_;
  int m_;
};

/// Square-zero relative splitting Fil W(S) = a (+) I(S) for S = k[eps] -> k:
/// w with w_0 in (eps) splits as the log part [w_0] plus v in I(S), and the
/// frame operator is F-dot = 0 on the ideal part, V^{-1} on I(S).
struct RelSplit {
  Dual a0;             // the ideal component, in logarithmic coordinate 0
  WittVec<Dual> a_log;  // [a0] as a Witt vector (log coords (a0, 0, ..., 0))
  WittVec<Dual> v;      // the I(S) component
};

RelSplit rel_split(const WittVec<Dual>& w);
/// F-dot of a Fil element: V^{-1} of the I(S)-part (one length shorter).
WittVec<Dual> rel_fdot(const WittVec<Dual>& w);

}  // namespace d2
