#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld2/dual.hpp"
#include "drinfeld2/fqpoly.hpp"

namespace d2 {

/// k[X] localized at a single fixed denominator polynomial g. Only one
/// denominator per ring; the charts need g = 1 - X^{p-1}, g = X - X^p and
/// nothing else.
struct LocCtx {
  std::shared_ptr<const FqCtx> k;
  FqPoly denom;
  char var = 'X';

  static std::shared_ptr<const LocCtx> make(std::shared_ptr<const FqCtx> k, FqPoly denom,
                                            char var);
  /// k[V][1/(1 - V^{p-1})], the vertex-chart special fiber ring.
  static std::shared_ptr<const LocCtx> vertex_chart(const std::shared_ptr<const FqCtx>& k,
                                                    char var);
  /// k[V][1/(V - V^p)], the chart with the variable inverted as well (D(V)).
  static std::shared_ptr<const LocCtx> punctured_chart(const std::shared_ptr<const FqCtx>& k,
                                                       char var);
};

/// Element num / denom^e in normal form: e == 0, or denom does not divide num.
class Loc {
 public:
  Loc() = default;
  Loc(std::shared_ptr<const LocCtx> R, FqPoly num, int e = 0);
  static Loc zero(std::shared_ptr<const LocCtx> R);
  static Loc one(std::shared_ptr<const LocCtx> R);
  static Loc from_fq(std::shared_ptr<const LocCtx> R, const Fq& a);
  static Loc x(std::shared_ptr<const LocCtx> R);

  const std::shared_ptr<const LocCtx>& ctx() const { return R_; }
  const FqPoly& num() const { return num_; }
  int denom_exp() const { return e_; }
  bool is_zero() const { return num_.is_zero(); }
  /// Unit iff the numerator divides a power of the fixed denominator.
  bool is_unit() const;

  Loc operator+(const Loc& o) const;
  Loc operator-(const Loc& o) const;
  Loc operator*(const Loc& o) const;
  Loc operator-() const;
  bool operator==(const Loc& o) const;
  bool operator!=(const Loc& o) const { return !(*this == o); }

  Loc inv() const;  // units only
  Loc pow(int e) const;

  /// Specialization at lambda; rejected when the denominator vanishes there.
  Fq eval(const Fq& lambda) const;
  /// Specialization at a dual number (square-zero tangent direction).
  Dual eval(const Dual& a) const;
  Fq constant_term() const;  // evaluation at 0 (denominator must not vanish at 0)

  /// Coefficient-wise p-power Frobenius (variable fixed): used by the exact
  /// length-m Witt Frobenius.
  Loc frob_coeffs() const;
  Loc p_root() const;

  std::string str() const;

 private:
  void normalize();
  std::shared_ptr<const LocCtx> R_;
  FqPoly num_;
  int e_ = 0;
};

/// The fiber product  k[X]_loc x_k k[Y]_loc  (pairs agreeing at the origin).
/// This is the implementation of the glued special fiber
/// k[X,Y, 1/(1-X^{p-1}), 1/(1-Y^{p-1})]/(XY).
struct FiberCtx {
  std::shared_ptr<const LocCtx> xr, yr;
  static std::shared_ptr<const FiberCtx> make(std::shared_ptr<const LocCtx> xr,
                                              std::shared_ptr<const LocCtx> yr);
};

class Fiber {
 public:
  Fiber() = default;
  Fiber(std::shared_ptr<const FiberCtx> R, Loc fx, Loc fy);
  static Fiber zero(std::shared_ptr<const FiberCtx> R);
  static Fiber one(std::shared_ptr<const FiberCtx> R);
  static Fiber from_fq(std::shared_ptr<const FiberCtx> R, const Fq& a);
  static Fiber x(std::shared_ptr<const FiberCtx> R);  // (X, 0)
  static Fiber y(std::shared_ptr<const FiberCtx> R);  // (0, Y)

  const std::shared_ptr<const FiberCtx>& ctx() const { return R_; }
  const Loc& xleg() const { return fx_; }
  const Loc& yleg() const { return fy_; }
  bool is_zero() const { return fx_.is_zero() && fy_.is_zero(); }
  bool is_unit() const { return fx_.is_unit() && fy_.is_unit(); }

  Fiber operator+(const Fiber& o) const;
  Fiber operator-(const Fiber& o) const;
  Fiber operator*(const Fiber& o) const;
  Fiber operator-() const;
  bool operator==(const Fiber& o) const { return fx_ == o.fx_ && fy_ == o.fy_; }
  bool operator!=(const Fiber& o) const { return !(*this == o); }

  Fiber inv() const;
  Fiber pow(int e) const;
  Fq constant_term() const { return fx_.constant_term(); }

  /// Evaluate at a tangent vector of the node: X -> ax, Y -> ay where at
  /// least one of ax, ay reduces to 0 mod eps (otherwise no ring map exists).
  Dual eval_node(const Dual& ax, const Dual& ay) const;
  Fq eval_point(const Fq& lx, const Fq& ly) const;

  Fiber frob_coeffs() const;
  Fiber p_root() const;

  std::string str() const;

 private:
  std::shared_ptr<const FiberCtx> R_;
  Loc fx_, fy_;
};

/// Mixed-term-free presentation of k[X,Y]/(XY): a0 + f1(X) + f2(Y) with f1,
/// f2 constant-free. Carrier of the footnote bijection with compatible pairs.
struct MixedPoly {
  Fq a0;
  FqPoly xs;  // constant-free
  FqPoly ys;  // constant-free
};

/// Footnote bijection: mixed-free element -> compatible pair and back.
std::pair<FqPoly, FqPoly> mixed_to_pair(const MixedPoly& m);
MixedPoly pair_to_mixed(const FqPoly& f1, const FqPoly& f2);  // equal constants required
Fiber mixed_to_fiber(const std::shared_ptr<const FiberCtx>& R, const MixedPoly& m);

/// Ring-morphism descriptors for the chart rings (specialization, legs).
struct SpecializeVar {  // X -> lambda on a localized ring
  Fq lambda;
};
struct FiberLegX {};  // fiber product -> X-side (Y -> 0)
struct FiberLegY {};  // fiber product -> Y-side (X -> 0)

Fq ring_hom_apply(const SpecializeVar& f, const Loc& x);
Loc ring_hom_apply(const FiberLegX&, const Fiber& x);
Loc ring_hom_apply(const FiberLegY&, const Fiber& x);

}  // namespace d2
