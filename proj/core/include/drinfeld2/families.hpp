#pragma once

#include "drinfeld2/display.hpp"
#include "drinfeld2/isocrystal.hpp"

namespace d2 {

enum class FamilyKind { P0, P1 };

/// The two explicit display families over the vertex-chart special fibers
/// k[X, 1/(1-X^{p-1})] resp. k[Y, 1/(1-Y^{p-1})], inside the framing
/// isocrystal. P0 has critical index 1 and Lie multipliers
/// (Lie_0 -> Lie_1, Lie_1 -> Lie_0) = (X - X^p, 0); P1 the transpose.
Display<Loc> build_family(FamilyKind which, const std::shared_ptr<const FqCtx>& k, int m);

/// The Ferrand gluing over the fiber product of the two vertex charts:
/// componentwise compatible pairs, with the identity compatibility over W(k).
struct GluedDisplay {
  Display<Fiber> glued;
  Display<Loc> px, py;
};
GluedDisplay ferrand_glue(const std::shared_ptr<const FqCtx>& k, int m);

/// Base change of a vertex-chart family into the punctured chart
/// k[V, 1/(V - V^p)] (the variable inverted as well).
Display<Loc> base_change_punctured(const Display<Loc>& D);

/// Restriction of the glued family to D(X) resp. D(Y).
Display<Loc> restrict_to_x_chart(const GluedDisplay& G);
Display<Loc> restrict_to_y_chart(const GluedDisplay& G);

/// Fold p-divisible scales down (exact Witt division), then compare all data.
Display<Loc> normalize_display_scales(const Display<Loc>& D);
bool display_equal(const Display<Loc>& A, const Display<Loc>& B);

/// Specialization of a family at a field point (Witt-functorial), landing in
/// the framing isocrystal over the working Galois ring.
struct SpecializedFiber {
  SpecialDieudonne module;
  std::array<std::array<Fq, 2>, 2> hodge;  // evaluated Hodge rows
};
SpecializedFiber specialize_fiber(const Display<Loc>& D, const Fq& lambda,
                                  const std::shared_ptr<const ZqCtx>& R);
SpecializedFiber specialize_glued(const Display<Fiber>& D, const Fq& ax, const Fq& ay,
                                  const std::shared_ptr<const ZqCtx>& R);

/// Square-zero specializations for the deformation calculus.
Display<Dual> specialize_dual(const Display<Loc>& D, const Dual& a);
Display<Dual> specialize_glued_dual(const Display<Fiber>& D, const Dual& ax, const Dual& ay);

/// Generic coefficient-ring change applied to every Witt coordinate.
template <class A, class B, class Fn>
Display<B> display_map(const Display<A>& D, Fn f, const B& proto) {
  auto mapw = [&](const WittVec<A>& w) {
    std::vector<B> c;
    c.reserve(static_cast<size_t>(w.length()));
    for (const auto& v : w.coords()) c.push_back(f(v));
    return WittVec<B>(std::move(c));
  };
  Display<B> out;
  out.m = D.m;
  out.scale = D.scale;
  WittVec<B> zb = WittVec<B>::zero(proto, D.m);
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    out.basis[ii] = Mat<WittVec<B>>(2, 2, zb);
    out.phi[ii] = Mat<WittVec<B>>(2, 2, zb);
    out.pi_mat[ii] = Mat<WittVec<B>>(2, 2, zb);
    for (size_t r = 0; r < 2; ++r)
      for (size_t cc = 0; cc < 2; ++cc) {
        out.basis[ii].at(r, cc) = mapw(D.basis[ii].at(r, cc));
        out.phi[ii].at(r, cc) = mapw(D.phi[ii].at(r, cc));
        out.pi_mat[ii].at(r, cc) = mapw(D.pi_mat[ii].at(r, cc));
      }
    for (size_t r = 0; r < 2; ++r) {
      out.hodge[ii][r] = f(D.hodge[ii][r]);
      out.q_gen[ii][r] = mapw(D.q_gen[ii][r]);
      out.t_gen[ii][r] = mapw(D.t_gen[ii][r]);
    }
  }
  return out;
}

}  // namespace d2
