#pragma once

#include "drinfeld2/families.hpp"
#include "drinfeld2/phi.hpp"

namespace d2 {

/// Tangent vector of the moduli functor at a k-point: the pair of scalars
/// u = (u0, u1), u_i : Q_i/pP_i -> eps (x) P_i/Q_i in the fixed generators.
struct TangentD {
  Fq u0, u1;
  bool operator==(const TangentD& o) const { return u0 == o.u0 && u1 == o.u1; }
};

struct TangentDSpace {
  int dim = 0;
  std::vector<TangentD> basis;
  // the multipliers entering the linear conditions u_{i+1} beta_i = alpha_i u_i
  Fq alpha01, alpha10;  // Pi on the Lie quotients
  Fq beta01, beta10;    // Pi on the Q/pP quotients
};

/// Solves the conditions deg(u) = 0, u Pi = Pi u over k. Dimension is 1 when
/// exactly one index is critical, 2 when both are.
TangentDSpace tangent_space_D(const SpecialDieudonne& x);

/// The k-point module presented as a display over k[eps] (trivial lift).
Display<Dual> point_display(const SpecialDieudonne& x, int m);

/// The lift with Hodge filtration shifted by u.
Display<Dual> deform_display(const SpecialDieudonne& x, int m, const TangentD& u);

/// Recover u from a lift: u_i = -(eps-part of hodge'(q-hat_base)/hodge'(t-hat)).
TangentD extract_tangent(const Display<Dual>& lift);

/// Criticality of index i for a k[eps]-display: the deformed Lie multiplier
/// out of piece i vanishes identically.
std::array<bool, 2> critical_for_deformation(const Display<Dual>& lift);

/// Tangent direction of the chart at a point: a = (x1 + eps r1, x2 + eps r2)
/// subject to x1 r2 + x2 r1 = 0 (so that the product stays zero).
struct TangentOmega {
  Fq r1, r2;
};

std::vector<TangentOmega> tangent_omega_basis(const ChartPoint& pt);

/// The deformation of the glued family fiber along a chart tangent vector,
/// with its tangent class.
TangentD d_upsilon(const GluedDisplay& G, const ChartPoint& pt, const TangentOmega& dir);

/// The structural-matrix deformation at a one-critical point zeta (not
/// F_p-rational): deformed coordinate zeta - eps*rho, transport to the fixed
/// (P, Q), the maps g and h, and alpha with alpha(b3) = eps rho b1.
struct StructuralDeformation {
  Fq zeta, rho;
  Mat<WittVec<Dual>> structural;         // 4x4, basis (b1, b2, b3, b4)
  std::array<WittVec<Dual>, 4> alpha;    // alpha(b_j) as multiples of b1
  bool alpha_matches = false;            // alpha(b3) = eps rho b1, zero elsewhere
  TangentD u;
};

StructuralDeformation alpha_computation(const Fq& zeta, const Fq& rho, int m);

}  // namespace d2
