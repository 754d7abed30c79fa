#pragma once

#include <memory>
#include <string>
#include <vector>

#include "drinfeld2/chartring.hpp"
#include "drinfeld2/zq.hpp"

namespace d2 {

/// The lift ring GR(p^n, s)[X, Y]/(XY - p): normal form c + sum a_i X^i +
/// sum b_j Y^j with X^i Y^j collapsing to p^{min(i,j)} X^{i-j} resp Y^{j-i}.
class AXY {
 public:
  AXY() = default;
  explicit AXY(std::shared_ptr<const ZqCtx> R) : R_(std::move(R)), c_(Zq::zero(R_)) {}
  static AXY constant(std::shared_ptr<const ZqCtx> R, const Zq& c);
  static AXY x(std::shared_ptr<const ZqCtx> R);
  static AXY y(std::shared_ptr<const ZqCtx> R);

  const std::shared_ptr<const ZqCtx>& ctx() const { return R_; }
  const Zq& cterm() const { return c_; }
  const std::vector<Zq>& xcoeffs() const { return xs_; }  // coeff of X^{i+1}
  const std::vector<Zq>& ycoeffs() const { return ys_; }

  AXY operator+(const AXY& o) const;
  AXY operator*(const AXY& o) const;
  AXY operator-() const;
  bool operator==(const AXY& o) const;
  bool is_zero() const;

  /// reduction mod p into the glued special fiber (pairs of polynomials)
  Fiber reduce_mod_p(const std::shared_ptr<const FiberCtx>& F) const;

  std::string str() const;

 private:
  void trim();
  std::shared_ptr<const ZqCtx> R_;
  Zq c_;
  std::vector<Zq> xs_, ys_;
};

/// The Hodge-filtration lift data over A_{std, n}: the line modules L_i are
/// the ring itself, Pi acts as multiplication by X (L_0 -> L_1) and by Y
/// (L_1 -> L_0); their composite is multiplication by p = XY.
struct HodgeLiftData {
  int n = 1;
  std::shared_ptr<const ZqCtx> R;  // GR(p^n, s)
  AXY X, Y, P;                     // generators and the composite multiplier

  /// (mult by X) then (mult by Y) on a sample element, against mult by p.
  bool composite_is_p(const AXY& sample) const;
};

HodgeLiftData hodge_lift_data(int64_t p, int s, int n);

}  // namespace d2
