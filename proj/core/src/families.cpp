#include "drinfeld2/families.hpp"

namespace d2 {
namespace {

// builders over a fixed Loc context
struct LB {
  std::shared_ptr<const LocCtx> R;
  int m;
  Loc lz() const { return Loc::zero(R); }
  Loc lo() const { return Loc::one(R); }
  Loc lx(int k) const {  // the monomial V^k
    return Loc(R, FqPoly::monomial(Fq::one(R->k), k), 0);
  }
  WittVec<Loc> wz() const { return WittVec<Loc>::zero(lz(), m); }
  WittVec<Loc> wo() const { return WittVec<Loc>::one(lz(), m); }
  WittVec<Loc> wp() const { return WittVec<Loc>::from_int(lz(), m, R->k->p); }
  WittVec<Loc> tx(int k) const { return WittVec<Loc>::teich(lx(k), m); }  // [V^k]
  Mat<WittVec<Loc>> mat(const WittVec<Loc>& a, const WittVec<Loc>& b, const WittVec<Loc>& c,
                        const WittVec<Loc>& d) const {
    Mat<WittVec<Loc>> M(2, 2, wz());
    M.at(0, 0) = a;
    M.at(0, 1) = b;
    M.at(1, 0) = c;
    M.at(1, 1) = d;
    return M;
  }
};

}  // namespace

Display<Loc> build_family(FamilyKind which, const std::shared_ptr<const FqCtx>& k, int m) {
  const int p = static_cast<int>(k->p);
  if (which == FamilyKind::P0) {
    LB b{LocCtx::vertex_chart(k, 'X'), m};
    Display<Loc> D;
    D.m = m;
    D.scale = {0, 0};
    // P_0 = <p e1, e2 - [X^p] e1>,  P_1 = <e1, e2>
    D.basis[0] = b.mat(b.wp(), -b.tx(p), b.wz(), b.wo());
    D.basis[1] = b.mat(b.wo(), b.wz(), b.wz(), b.wo());
    D.hodge[0] = {b.lz(), b.lo()};
    D.hodge[1] = {b.lo(), b.lx(1)};
    D.q_gen[0] = {b.wo(), b.wz()};
    D.t_gen[0] = {b.wz(), b.wo()};
    D.q_gen[1] = {-b.tx(1), b.wo()};
    D.t_gen[1] = {b.wo(), b.wz()};
    // Fdot(q0) = e1, F(t0) = e2 - [X^{p^2}] e1 ; Fdot(q1) = b2, F(t1) = b1
    D.phi[0] = b.mat(b.wo(), -b.tx(p * p), b.wz(), b.wo());
    D.phi[1] = b.mat(b.wz(), b.wo(), b.wo(), b.wz());
    D.pi_mat[0] = b.mat(b.wp(), -b.tx(p), b.wz(), b.wo());
    D.pi_mat[1] = b.mat(b.wo(), b.tx(p), b.wz(), b.wp());
    return D;
  }
  LB b{LocCtx::vertex_chart(k, 'Y'), m};
  Display<Loc> D;
  D.m = m;
  D.scale = {0, 1};
  // P_0 = <p e1, e2>,  P_1 = p^{-1} <(p, -[Y^p]), (0, p)>
  D.basis[0] = b.mat(b.wp(), b.wz(), b.wz(), b.wo());
  D.basis[1] = b.mat(b.wp(), b.wz(), -b.tx(p), b.wp());
  D.hodge[0] = {b.lx(1), b.lo()};
  D.hodge[1] = {b.lo(), b.lz()};
  D.q_gen[0] = {b.wo(), -b.tx(1)};
  D.t_gen[0] = {b.wz(), b.wo()};
  D.q_gen[1] = {b.wz(), b.wo()};
  D.t_gen[1] = {b.wo(), b.wz()};
  D.phi[0] = b.mat(b.wo(), b.wz(), b.wz(), b.wo());
  D.phi[1] = b.mat(b.wz(), b.wo(), b.wo(), -b.tx(p * p));
  D.pi_mat[0] = b.mat(b.wp(), b.wz(), b.tx(p), b.wo());
  D.pi_mat[1] = b.mat(b.wo(), b.wz(), -b.tx(p), b.wp());
  return D;
}

namespace {

WittVec<Fiber> pair_witt(const std::shared_ptr<const FiberCtx>& FC, const WittVec<Loc>& x,
                         const WittVec<Loc>& y) {
  if (x.length() != y.length()) throw DomainError("pair_witt: length mismatch");
  std::vector<Fiber> c;
  c.reserve(static_cast<size_t>(x.length()));
  for (int i = 0; i < x.length(); ++i) c.emplace_back(FC, x.coord(i), y.coord(i));
  return WittVec<Fiber>(std::move(c));
}

}  // namespace

GluedDisplay ferrand_glue(const std::shared_ptr<const FqCtx>& k, int m) {
  GluedDisplay G;
  G.px = build_family(FamilyKind::P0, k, m);
  G.py = build_family(FamilyKind::P1, k, m);
  auto FC = FiberCtx::make(G.px.proto().ctx(), G.py.proto().ctx());

  // align the x-side to the y-side scales (pair entries must share one scale)
  Display<Loc> px = G.px;
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    int diff = G.py.scale[ii] - px.scale[ii];
    if (diff < 0) throw DomainError("ferrand_glue: unexpected scale pattern");
    if (diff > 0) {
      for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 2; ++c)
          px.basis[ii].at(r, c) = witt_times_p(px.basis[ii].at(r, c), diff);
      px.scale[ii] = G.py.scale[ii];
    }
  }

  Display<Fiber>& D = G.glued;
  D.m = m;
  D.scale = px.scale;
  Fiber fz = Fiber::zero(FC);
  WittVec<Fiber> wz = WittVec<Fiber>::zero(fz, m);
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    D.basis[ii] = Mat<WittVec<Fiber>>(2, 2, wz);
    D.phi[ii] = Mat<WittVec<Fiber>>(2, 2, wz);
    D.pi_mat[ii] = Mat<WittVec<Fiber>>(2, 2, wz);
    for (size_t r = 0; r < 2; ++r)
      for (size_t c = 0; c < 2; ++c) {
        D.basis[ii].at(r, c) = pair_witt(FC, px.basis[ii].at(r, c), G.py.basis[ii].at(r, c));
        D.phi[ii].at(r, c) = pair_witt(FC, px.phi[ii].at(r, c), G.py.phi[ii].at(r, c));
        D.pi_mat[ii].at(r, c) = pair_witt(FC, px.pi_mat[ii].at(r, c), G.py.pi_mat[ii].at(r, c));
      }
    for (size_t r = 0; r < 2; ++r) {
      D.hodge[ii][r] = Fiber(FC, px.hodge[ii][r], G.py.hodge[ii][r]);
      D.q_gen[ii][r] = pair_witt(FC, px.q_gen[ii][r], G.py.q_gen[ii][r]);
      D.t_gen[ii][r] = pair_witt(FC, px.t_gen[ii][r], G.py.t_gen[ii][r]);
    }
  }
  return G;
}

namespace {

/// k[V]_{g1} -> k[V]_{g2} when g1 | g2: num/g1^e = num (g2/g1)^e / g2^e.
Loc change_denominator(const Loc& x, const std::shared_ptr<const LocCtx>& target) {
  auto [q, r] = target->denom.divrem(x.ctx()->denom);
  if (!r.is_zero()) throw DomainError("change_denominator: denominators incompatible");
  return Loc(target, x.num() * q.pow(x.denom_exp()), x.denom_exp());
}

}  // namespace

Display<Loc> base_change_punctured(const Display<Loc>& D) {
  auto k = D.proto().ctx()->k;
  char var = D.proto().ctx()->var;
  auto target = LocCtx::punctured_chart(k, var);
  Loc proto = Loc::zero(target);
  return display_map(D, [&](const Loc& x) { return change_denominator(x, target); }, proto);
}

Display<Loc> restrict_to_x_chart(const GluedDisplay& G) {
  auto k = G.glued.proto().ctx()->xr->k;
  auto target = LocCtx::punctured_chart(k, 'X');
  Loc proto = Loc::zero(target);
  return display_map(
      G.glued, [&](const Fiber& f) { return change_denominator(f.xleg(), target); }, proto);
}

Display<Loc> restrict_to_y_chart(const GluedDisplay& G) {
  auto k = G.glued.proto().ctx()->yr->k;
  auto target = LocCtx::punctured_chart(k, 'Y');
  Loc proto = Loc::zero(target);
  return display_map(
      G.glued, [&](const Fiber& f) { return change_denominator(f.yleg(), target); }, proto);
}

WittVec<Loc> witt_div_p(const WittVec<Loc>& w) {
  if (!w.coords()[0].is_zero()) throw DomainError("witt_div_p: w0 != 0");
  std::vector<Loc> out;
  for (int i = 1; i < w.length(); ++i) out.push_back(w.coord(i).p_root());
  out.push_back(Loc::zero(w.w0().ctx()));
  return WittVec<Loc>(std::move(out));
}

WittVec<Fiber> witt_div_p(const WittVec<Fiber>& w) {
  if (!w.coords()[0].is_zero()) throw DomainError("witt_div_p: w0 != 0");
  std::vector<Fiber> out;
  for (int i = 1; i < w.length(); ++i) out.push_back(w.coord(i).p_root());
  out.push_back(Fiber::zero(w.w0().ctx()));
  return WittVec<Fiber>(std::move(out));
}

Display<Loc> normalize_display_scales(const Display<Loc>& D) {
  Display<Loc> out = D;
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    while (out.scale[ii] > 0) {
      bool divisible = true;
      for (size_t r = 0; r < 2 && divisible; ++r)
        for (size_t c = 0; c < 2 && divisible; ++c) {
          const auto& w = out.basis[ii].at(r, c);
          if (w.coords()[0].is_zero()) {
            try {
              witt_div_p(w);
            } catch (const DomainError&) {
              divisible = false;
            }
          } else {
            divisible = false;
          }
        }
      if (!divisible) break;
      for (size_t r = 0; r < 2; ++r)
        for (size_t c = 0; c < 2; ++c) out.basis[ii].at(r, c) = witt_div_p(out.basis[ii].at(r, c));
      --out.scale[ii];
    }
  }
  return out;
}

bool display_equal(const Display<Loc>& A0, const Display<Loc>& B0) {
  Display<Loc> A = normalize_display_scales(A0);
  Display<Loc> B = normalize_display_scales(B0);
  if (A.m != B.m || A.scale != B.scale) return false;
  for (size_t i = 0; i < 2; ++i) {
    for (size_t r = 0; r < 2; ++r) {
      if (!(A.hodge[i][r] == B.hodge[i][r])) return false;
      if (!(A.q_gen[i][r] == B.q_gen[i][r])) return false;
      if (!(A.t_gen[i][r] == B.t_gen[i][r])) return false;
      for (size_t c = 0; c < 2; ++c) {
        if (!(A.basis[i].at(r, c) == B.basis[i].at(r, c))) return false;
        if (!(A.phi[i].at(r, c) == B.phi[i].at(r, c))) return false;
        if (!(A.pi_mat[i].at(r, c) == B.pi_mat[i].at(r, c))) return false;
      }
    }
  }
  return true;
}

namespace {

GrLattice witt_cols_to_lattice(const std::shared_ptr<const ZqCtx>& R,
                               const Mat<WittVec<Fq>>& B, int scale) {
  Mat<Zq> out(2, 2, Zq::zero(R));
  for (size_t r = 0; r < 2; ++r)
    for (size_t c = 0; c < 2; ++c) out.at(r, c) = witt_coords_to_zq(R, B.at(r, c).coords());
  return GrLattice(R, std::move(out), scale);
}

SpecializedFiber finish_specialize(const Display<Fq>& E, const std::shared_ptr<const ZqCtx>& R) {
  SpecializedFiber out{SpecialDieudonne{FramingN{R},
                                        {GrLattice::standard(R), GrLattice::standard(R)}},
                       {}};
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    out.module.M[ii] = witt_cols_to_lattice(R, E.basis[ii], E.scale[ii]);
    out.hodge[ii] = E.hodge[ii];
  }
  SpecialCheck chk = check_special(out.module);
  if (!chk.ok()) {
    std::string msg = "specialize_fiber: fiber is not special:";
    for (const auto& f : chk.failures) msg += " " + f;
    throw DomainError(msg);
  }
  return out;
}

}  // namespace

SpecializedFiber specialize_fiber(const Display<Loc>& D, const Fq& lambda,
                                  const std::shared_ptr<const ZqCtx>& R) {
  Fq proto = Fq::zero(lambda.ctx());
  Display<Fq> E = display_map(D, [&](const Loc& x) { return x.eval(lambda); }, proto);
  return finish_specialize(E, R);
}

SpecializedFiber specialize_glued(const Display<Fiber>& D, const Fq& ax, const Fq& ay,
                                  const std::shared_ptr<const ZqCtx>& R) {
  Fq proto = Fq::zero(ax.ctx());
  Display<Fq> E =
      display_map(D, [&](const Fiber& f) { return f.eval_point(ax, ay); }, proto);
  return finish_specialize(E, R);
}

Display<Dual> specialize_dual(const Display<Loc>& D, const Dual& a) {
  Dual proto = Dual::zero(a.ctx());
  return display_map(D, [&](const Loc& x) { return x.eval(a); }, proto);
}

Display<Dual> specialize_glued_dual(const Display<Fiber>& D, const Dual& ax, const Dual& ay) {
  Dual proto = Dual::zero(ax.ctx());
  return display_map(D, [&](const Fiber& f) { return f.eval_node(ax, ay); }, proto);
}

}  // namespace d2
