#include "drinfeld2/tangent.hpp"

namespace d2 {
namespace {

/// Presentation of one graded piece of a k-point module: canonical lattice
/// basis, the shape of Q inside it, and the chosen generators.
struct PiecePres {
  GrLattice L;           // canonical
  int A = 0;             // Q-shape [[p^A, b],[0, p^{1-A}]] in the L-basis
  Zq b;                  // the off-diagonal entry
  std::array<Fq, 2> hodge;      // functional with hodge(t) = 1
  std::array<Fq, 2> extractor;  // q-coordinate functional (psi), psi(q) = 1
  // q/t generator coordinates in the L-basis, as Galois-ring scalars
  std::array<Zq, 2> q_coords, t_coords;
};

PiecePres piece_presentation(const SpecialDieudonne& x, int i) {
  auto R = x.N.R;
  PiecePres out{x.piece(i).canonical(), 0, Zq::zero(R), {}, {}, {}, {}};
  GrLattice Qi = x.N.apply_v(x.piece(1 - i), 1 - i);
  int shift = out.L.scale() - Qi.scale();
  Mat<Zq> T(2, 2, Zq::zero(R));
  for (size_t j = 0; j < 2; ++j) {
    std::vector<Zq> col = Qi.basis().col(j);
    if (shift > 0)
      for (auto& v : col) v = v.times_p(shift);
    if (shift < 0)
      for (auto& v : col) v = v.div_p(-shift);
    auto c = out.L.coords_of(col);
    if (!c) throw DomainError("piece_presentation: Q not inside M");
    T.at(0, j) = (*c)[0];
    T.at(1, j) = (*c)[1];
  }
  GrLattice Tcan = GrLattice(R, T, 0).canonical();
  out.A = Tcan.basis().at(0, 0).val();
  int C = Tcan.basis().at(1, 1).val();
  if (out.A + C != 1) throw DomainError("piece_presentation: Hodge quotient is not a line");
  out.b = Tcan.basis().at(0, 1);
  auto k = R->residue_field();
  if (out.A == 1) {
    Fq bbar = out.b.residue();
    out.hodge = {Fq::one(k), -bbar};
    out.extractor = {Fq::zero(k), Fq::one(k)};
    out.q_coords = {out.b, Zq::one(R)};
    out.t_coords = {Zq::one(R), Zq::zero(R)};
  } else {
    out.hodge = {Fq::zero(k), Fq::one(k)};
    out.extractor = {Fq::one(k), Fq::zero(k)};
    out.q_coords = {Zq::one(R), Zq::zero(R)};
    out.t_coords = {Zq::zero(R), Zq::one(R)};
  }
  return out;
}

std::vector<Zq> ambient_of(const PiecePres& P, const std::array<Zq, 2>& coords) {
  return {P.L.basis().at(0, 0) * coords[0] + P.L.basis().at(0, 1) * coords[1],
          P.L.basis().at(1, 0) * coords[0] + P.L.basis().at(1, 1) * coords[1]};
}

/// coordinates of p^{shift} * v in the target piece basis, shift may be < 0
std::array<Zq, 2> target_coords(const PiecePres& T, std::vector<Zq> v, int shift) {
  if (shift > 0)
    for (auto& x : v) x = x.times_p(shift);
  if (shift < 0)
    for (auto& x : v) {
      if (x.val() < -shift) throw DomainError("target_coords: inexact p-division");
      x = x.div_p(-shift);
    }
  auto c = T.L.coords_of(v);
  if (!c) throw DomainError("target_coords: vector escapes the lattice");
  return {(*c)[0], (*c)[1]};
}

Fq hodge_apply(const std::array<Fq, 2>& row, const std::array<Zq, 2>& coords) {
  return row[0] * coords[0].residue() + row[1] * coords[1].residue();
}

}  // namespace

TangentDSpace tangent_space_D(const SpecialDieudonne& x) {
  SpecialCheck chk = check_special(x);
  if (!chk.ok()) throw DomainError("tangent_space_D: input is not special");
  auto R = x.N.R;
  auto k = R->residue_field();
  PiecePres P[2] = {piece_presentation(x, 0), piece_presentation(x, 1)};

  TangentDSpace out;
  Fq alpha[2], beta[2];
  for (int i = 0; i < 2; ++i) {
    const PiecePres& src = P[i];
    const PiecePres& dst = P[1 - i];
    int ppow = (i == 1) ? 1 : 0;  // Pi out of piece 1 multiplies by p
    int shift = dst.L.scale() - src.L.scale() + ppow;
    // alpha_i: Lie multiplier
    auto t_amb = ambient_of(src, src.t_coords);
    auto tc = target_coords(dst, t_amb, shift);
    alpha[i] = hodge_apply(dst.hodge, tc);
    // beta_i: Q/pP multiplier = extractor of Pi(q-hat)
    auto q_amb = ambient_of(src, src.q_coords);
    auto qc = target_coords(dst, q_amb, shift);
    beta[i] = dst.extractor[0] * qc[0].residue() + dst.extractor[1] * qc[1].residue();
  }
  out.alpha01 = alpha[0];
  out.alpha10 = alpha[1];
  out.beta01 = beta[0];
  out.beta10 = beta[1];

  // u_{i+1} beta_i = alpha_i u_i: kernel of [[-a0, b0], [b1, -a1]]
  Fq a0 = alpha[0], a1 = alpha[1], b0 = beta[0], b1 = beta[1];
  Fq z = Fq::zero(k), one = Fq::one(k);
  Fq det = a0 * a1 - b0 * b1;
  std::vector<TangentD> basis;
  if (!det.is_zero()) {
    // only u = 0
  } else if (a0.is_zero() && b0.is_zero() && a1.is_zero() && b1.is_zero()) {
    basis.push_back(TangentD{one, z});
    basis.push_back(TangentD{z, one});
  } else {
    // rank-1 system: pick the kernel direction
    if (!a0.is_zero() || !b0.is_zero())
      basis.push_back(TangentD{b0, a0});
    else
      basis.push_back(TangentD{a1, b1});
  }
  out.dim = static_cast<int>(basis.size());
  out.basis = std::move(basis);
  return out;
}

namespace {

WittVec<Dual> zq_to_dual_witt(const Zq& x, int m, const std::shared_ptr<const FqCtx>&) {
  std::vector<Fq> coords = zq_to_witt_coords(x, m);
  std::vector<Dual> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(Dual::from_base(c));
  return WittVec<Dual>(std::move(out));
}

}  // namespace

Display<Dual> point_display(const SpecialDieudonne& x, int m) {
  auto R = x.N.R;
  auto k = R->residue_field();
  if (m > R->n) throw DomainError("point_display: Witt length exceeds working precision");
  PiecePres P[2] = {piece_presentation(x, 0), piece_presentation(x, 1)};

  Display<Dual> D;
  D.m = m;
  Dual dz = Dual::zero(k);
  WittVec<Dual> wz = WittVec<Dual>::zero(dz, m);
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    D.scale[ii] = P[i].L.scale();
    D.basis[ii] = Mat<WittVec<Dual>>(2, 2, wz);
    D.phi[ii] = Mat<WittVec<Dual>>(2, 2, wz);
    D.pi_mat[ii] = Mat<WittVec<Dual>>(2, 2, wz);
    for (size_t r = 0; r < 2; ++r)
      for (size_t c = 0; c < 2; ++c)
        D.basis[ii].at(r, c) = zq_to_dual_witt(P[i].L.basis().at(r, c), m, k);
    for (size_t r = 0; r < 2; ++r) {
      D.hodge[ii][r] = Dual::from_base(P[i].hodge[r]);
      D.q_gen[ii][r] = zq_to_dual_witt(P[i].q_coords[r], m, k);
      D.t_gen[ii][r] = zq_to_dual_witt(P[i].t_coords[r], m, k);
    }
  }
  // structural and Pi matrices via the framing formulas
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    const PiecePres& src = P[i];
    const PiecePres& dst = P[1 - i];
    int si = src.L.scale(), sn = dst.L.scale();
    auto sig = [&](std::vector<Zq> v) {
      for (auto& x : v) x = x.sigma();
      return v;
    };
    // Fdot(q): sigma/p on piece 0, sigma on piece 1
    auto qa = sig(ambient_of(src, src.q_coords));
    auto c1 = target_coords(dst, qa, sn - si - (i == 0 ? 1 : 0));
    // F(t): sigma on piece 0, p sigma on piece 1
    auto ta = sig(ambient_of(src, src.t_coords));
    auto c2 = target_coords(dst, ta, sn - si + (i == 1 ? 1 : 0));
    for (size_t r = 0; r < 2; ++r) {
      D.phi[ii].at(r, 0) = zq_to_dual_witt(c1[r], m, k);
      D.phi[ii].at(r, 1) = zq_to_dual_witt(c2[r], m, k);
    }
    for (size_t col = 0; col < 2; ++col) {
      std::vector<Zq> bc = src.L.basis().col(col);
      auto pc = target_coords(dst, bc, sn - si + (i == 1 ? 1 : 0));
      for (size_t r = 0; r < 2; ++r) D.pi_mat[ii].at(r, static_cast<size_t>(col)) = zq_to_dual_witt(pc[r], m, k);
    }
  }
  return D;
}

Display<Dual> deform_display(const SpecialDieudonne& x, int m, const TangentD& u) {
  Display<Dual> D = point_display(x, m);
  auto k = x.N.R->residue_field();
  PiecePres P[2] = {piece_presentation(x, 0), piece_presentation(x, 1)};
  Fq us[2] = {u.u0, u.u1};
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    Dual ec(Fq::zero(k), us[i]);  // eps * u_i
    // hodge' = hodge - eps u_i * extractor
    for (size_t r = 0; r < 2; ++r)
      D.hodge[ii][r] = D.hodge[ii][r] - ec * Dual::from_base(P[i].extractor[r]);
    // q' = q + [eps u_i] t
    WittVec<Dual> tw = WittVec<Dual>::teich(ec, m);
    for (size_t r = 0; r < 2; ++r)
      D.q_gen[ii][r] = D.q_gen[ii][r] + tw * D.t_gen[ii][r];
  }
  return D;
}

TangentD extract_tangent(const Display<Dual>& lift) {
  auto k = lift.proto().ctx();
  Fq out[2];
  for (int i = 0; i < 2; ++i) {
    auto ii = static_cast<size_t>(i);
    // base q-hat: drop eps-parts of the coordinates
    std::array<WittVec<Dual>, 2> qbase;
    for (size_t r = 0; r < 2; ++r) {
      std::vector<Dual> c;
      for (const auto& v : lift.q_gen[ii][r].coords()) c.push_back(Dual::from_base(v.base()));
      qbase[r] = WittVec<Dual>(std::move(c));
    }
    Dual num = lift.hodge_eval(i, qbase);
    Dual den = lift.hodge_eval(i, lift.t_gen[ii]);
    Dual val = num * den.inv();
    if (!val.base().is_zero())
      throw DomainError("extract_tangent: not a lift of the base point");
    out[i] = -val.eps_part();
  }
  return TangentD{out[0], out[1]};
}

std::array<bool, 2> critical_for_deformation(const Display<Dual>& lift) {
  auto [m01, m10] = lift.lie_multipliers();
  return {m01.is_zero(), m10.is_zero()};
}

std::vector<TangentOmega> tangent_omega_basis(const ChartPoint& pt) {
  auto k = pt.k;
  Fq z = Fq::zero(k), one = Fq::one(k);
  // constraint x1 r2 + x2 r1 = 0
  if (pt.a1.is_zero() && pt.a2.is_zero()) return {TangentOmega{one, z}, TangentOmega{z, one}};
  if (pt.a2.is_zero()) return {TangentOmega{one, z}};
  return {TangentOmega{z, one}};
}

TangentD d_upsilon(const GluedDisplay& G, const ChartPoint& pt, const TangentOmega& dir) {
  validate_point(pt);
  if (!(pt.a1 * dir.r2 + pt.a2 * dir.r1).is_zero())
    throw DomainError("d_upsilon: direction does not preserve a1 a2 = 0");
  Dual ax(pt.a1, dir.r1), ay(pt.a2, dir.r2);
  Display<Dual> lift = specialize_glued_dual(G.glued, ax, ay);
  return extract_tangent(lift);
}

StructuralDeformation alpha_computation(const Fq& zeta, const Fq& rho, int m) {
  auto k = zeta.ctx();
  if (zeta.in_prime_field())
    throw DomainError("alpha_computation: zeta must not be F_p-rational (different stratum)");
  const int p = static_cast<int>(k->p);

  StructuralDeformation out{zeta, rho, Mat<WittVec<Dual>>(), {}, false, TangentD{}};
  Dual dz = Dual::zero(k);
  WittVec<Dual> wz = WittVec<Dual>::zero(dz, m);
  WittVec<Dual> wo = WittVec<Dual>::one(dz, m);
  WittVec<Dual> wp = WittVec<Dual>::from_int(dz, m, p);

  Dual zd = Dual::from_base(zeta);
  Dual ad(zeta, -rho);  // the deformed coordinate zeta - eps rho
  WittVec<Dual> Tz = WittVec<Dual>::teich(zd, m);
  WittVec<Dual> Ta = WittVec<Dual>::teich(ad, m);
  WittVec<Dual> Tzp = WittVec<Dual>::teich(Dual::from_base(zeta.pow(p)), m);
  WittVec<Dual> Tzpp = WittVec<Dual>::teich(Dual::from_base(zeta.pow(static_cast<int64_t>(p) * p)), m);
  WittVec<Dual> Dt = Ta - Tz;  // the transport correction [zeta - eps rho] - [zeta]

  // ambient vectors, e-coordinates: b1 = e1, b2 = e2 - [zeta^p] e1,
  // b3 = e2 - [zeta] e1, b4 = p e1
  using V2 = std::array<WittVec<Dual>, 2>;
  auto sigv = [&](const V2& v) { return V2{v[0].sigma(), v[1].sigma()}; };
  auto sub = [&](const V2& a, const V2& b) { return V2{a[0] - b[0], a[1] - b[1]}; };
  auto psi1_inv = [&](const V2& v) {  // e2 -> e2 + Dt e1
    return V2{v[0] + Dt * v[1], v[1]};
  };
  V2 b1 = {wo, wz};
  V2 b2 = {-Tzp, wo};
  V2 b3 = {-Tz, wo};
  V2 b4 = {wp, wz};

  // g = F0 - F1 with F1 the psi-transported deformed Frobenius.
  // On piece 0 (source b2, b4-direction): F = sigma, target piece 1 transported.
  V2 g_b2 = sub(sigv(b2), psi1_inv(sigv(b2)));
  // On piece 1 (source b1): F = p sigma, target piece 0 untransported, and
  // psi_1 acts on the source: psi_1(b1) = b1.
  V2 g_b1 = sub(V2{witt_times_p(b1[0].sigma(), 1), witt_times_p(b1[1].sigma(), 1)},
                V2{witt_times_p(b1[0].sigma(), 1), witt_times_p(b1[1].sigma(), 1)});
  // h = Fdot0 - Fdot1 on Q-generators.
  // h(b3): Fdot = sigma on piece 1; psi_1(b3) = e2 - [zeta - eps rho] e1.
  V2 psi_b3 = {-Ta, wo};
  V2 h_b3 = sub(sigv(b3), sigv(psi_b3));
  // h(b4): Fdot = sigma/p on piece 0; sigma(p e1) / p = e1 both ways,
  // then psi_1^{-1} fixes e1.
  V2 h_b4 = sub(V2{wo, wz}, psi1_inv(V2{wo, wz}));

  // alpha on the image basis: alpha(b1) = h(b4), alpha(b2) = h(b3),
  // alpha(b4) = g(b1), alpha(b3) = g(b2) - c alpha(b1) with c = [z]-[z^{p^2}].
  // All values are multiples of b1 = e1; record the e1-components and check
  // the e2-components vanish.
  auto as_b1_multiple = [&](const V2& v) {
    if (!v[1].is_zero()) throw DomainError("alpha_computation: value not a multiple of b1");
    return v[0];
  };
  WittVec<Dual> al1 = as_b1_multiple(h_b4);
  WittVec<Dual> al2 = as_b1_multiple(h_b3);
  WittVec<Dual> al4 = as_b1_multiple(g_b1);
  WittVec<Dual> al3 = as_b1_multiple(g_b2);  // alpha(b1) = 0 makes the c-term drop
  out.alpha = {al1, al2, al3, al4};

  bool others_zero = al1.is_zero() && al2.is_zero() && al4.is_zero();
  // alpha(b3) = [zeta] - [zeta - eps rho]; its logarithmic 0-coordinate is eps rho
  Dual expected(Fq::zero(k), rho);
  bool b3_ok = (al3.w0() == expected);
  // and all coordinates must be eps-multiples (alpha lands in eps P)
  for (const auto& c : al3.coords())
    if (!c.base().is_zero()) b3_ok = false;
  out.alpha_matches = others_zero && b3_ok;
  // u reads off the q-hat slots: u_1 from alpha(b3), u_0 from alpha(b4)
  out.u = TangentD{al4.w0().eps_part(), al3.w0().eps_part()};

  // the 4x4 structural matrix in the b-basis, single deformed entry at (1,2)
  out.structural = Mat<WittVec<Dual>>(4, 4, wz);
  out.structural.at(3, 0) = wo;                 // F(b1) = b4
  out.structural.at(0, 1) = Ta - Tzpp;          // F(b2) = b3 + ([a] - [z^{p^2}]) b1
  out.structural.at(2, 1) = wo;
  out.structural.at(1, 2) = wo;                 // Fdot(b3) = b2
  out.structural.at(0, 3) = wo;                 // Fdot(b4) = b1
  return out;
}

}  // namespace d2
