#include "drinfeld2/phi.hpp"

#include <algorithm>

#include "drinfeld2/tree.hpp"

namespace d2 {

std::vector<int> ChartPoint::expected_critical() const {
  if (a1.is_zero() && a2.is_zero()) return {0, 1};
  if (a2.is_zero()) return {1};
  return {0};
}

void validate_point(const ChartPoint& pt) {
  if (!(pt.a1 * pt.a2).is_zero()) throw DomainError("ChartPoint: a1 * a2 != 0");
  Fq one = Fq::one(pt.k);
  int64_t e = pt.k->p - 1;
  if ((one - pt.a1.pow(e)).is_zero() || (one - pt.a2.pow(e)).is_zero())
    throw DomainError("ChartPoint: unit condition 1 - a^{p-1} fails");
}

std::vector<ChartPoint> enumerate_points(const std::shared_ptr<const FqCtx>& k) {
  std::vector<ChartPoint> out;
  Fq z = Fq::zero(k), one = Fq::one(k);
  int64_t e = k->p - 1;
  auto unit_ok = [&](const Fq& a) { return !(one - a.pow(e)).is_zero(); };
  for (const Fq& a : fq_elements(k)) {
    if (!unit_ok(a)) continue;
    out.push_back(ChartPoint{k, a, z});
    if (!a.is_zero()) out.push_back(ChartPoint{k, z, a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

DeligneDatum datum_of_point(const ChartPoint& pt) {
  validate_point(pt);
  DeligneDatum d;
  d.k = pt.k;
  auto crit = pt.expected_critical();
  for (int i : crit) {
    if (i == 1) {
      d.has1 = true;
      d.alpha1 = {Fq::one(pt.k), pt.a1};
    } else {
      d.has0 = true;
      d.alpha0 = {pt.a2, Fq::one(pt.k)};
    }
  }
  return d;
}

DeligneResult deligne_check(const DeligneDatum& d) {
  int64_t p = d.k->p;
  bool edge = d.has0 && d.has1;
  auto scan = [&](const std::array<Fq, 2>& row, bool skip_zero_first, bool skip_zero_second,
                  const char* tag) -> std::optional<std::string> {
    for (int64_t m1 = 0; m1 < p; ++m1)
      for (int64_t m2 = 0; m2 < p; ++m2) {
        if (m1 == 0 && m2 == 0) continue;
        if (skip_zero_first && m1 == 0) continue;   // classes inside the smaller lattice
        if (skip_zero_second && m2 == 0) continue;
        Fq v = Fq::from_int(d.k, m1) * row[0] + Fq::from_int(d.k, m2) * row[1];
        if (v.is_zero())
          return std::string(tag) + ": alpha vanishes on m = (" + std::to_string(m1) + ", " +
                 std::to_string(m2) + ")";
      }
    return std::nullopt;
  };

  DeligneResult out;
  if (!d.has0 && !d.has1) {
    out.witness = "empty datum";
    return out;
  }
  if (d.has1) {
    // m in Lambda_1 - Lambda_0 means unit e1-coefficient on the edge;
    // for a bare vertex all nonzero classes are tested.
    auto w = scan(d.alpha1, /*skip_zero_first=*/edge, false, "index 1");
    if (w) {
      out.witness = *w;
      return out;
    }
  }
  if (d.has0) {
    // m in Lambda_0 - p Lambda_1 means unit f2-coefficient on the edge.
    auto w = scan(d.alpha0, false, /*skip_zero_second=*/edge, "index 0");
    if (w) {
      out.witness = *w;
      return out;
    }
  }
  out.ok = true;
  return out;
}

namespace {

GrLattice lattice_from_coords(const std::shared_ptr<const ZqCtx>& R, int64_t c00, int64_t c10,
                              int64_t c01, int64_t c11) {
  Mat<Zq> B(2, 2, Zq::zero(R));
  B.at(0, 0) = Zq::from_int(R, c00);
  B.at(1, 0) = Zq::from_int(R, c10);
  B.at(0, 1) = Zq::from_int(R, c01);
  B.at(1, 1) = Zq::from_int(R, c11);
  return GrLattice(R, std::move(B), 0);
}

/// columns (p g1, g2 - t g1) in a given adapted basis, as ambient vectors
GrLattice kernel_lattice_index1(const std::shared_ptr<const ZqCtx>& R, const Zq& t) {
  // ker of (e1 -> 1, e2 -> xi) on <e1,e2>: <p e1, e2 - [xi] e1>
  Mat<Zq> B(2, 2, Zq::zero(R));
  B.at(0, 0) = Zq::from_int(R, R->p);
  B.at(0, 1) = -t;
  B.at(1, 1) = Zq::one(R);
  return GrLattice(R, std::move(B), 0);
}

GrLattice kernel_lattice_index0(const std::shared_ptr<const ZqCtx>& R, const Zq& t) {
  // ker of (f1 -> xi, f2 -> 1) on <f1, f2> = <p e1, e2>: <p f2, f1 - [xi] f2>
  // ambient coordinates: p f2 = (0, p), f1 - [xi] f2 = (p, -t)
  Mat<Zq> B(2, 2, Zq::zero(R));
  B.at(1, 0) = Zq::from_int(R, R->p);
  B.at(0, 1) = Zq::from_int(R, R->p);
  B.at(1, 1) = -t;
  return GrLattice(R, std::move(B), 0);
}

}  // namespace

SpecialDieudonne phi_inverse(const ChartPoint& pt, const std::shared_ptr<const ZqCtx>& R) {
  validate_point(pt);
  if (R->residue_field() != pt.k)
    throw DomainError("phi_inverse: working ring has the wrong residue field");
  DeligneResult dc = deligne_check(datum_of_point(pt));
  if (!dc.ok) throw DomainError("phi_inverse: condition (Deligne) fails: " + dc.witness);

  FramingN N{R};
  auto crit = pt.expected_critical();
  SpecialDieudonne M{N, {GrLattice::standard(R), GrLattice::standard(R)}};

  if (crit.size() == 2) {
    M.M[1] = GrLattice::standard(R);                       // Lambda^std (x) W in N_1
    M.M[0] = lattice_from_coords(R, R->p, 0, 0, 1);        // Lambda'^std (x) W in N_0
  } else if (crit[0] == 1) {
    M.M[1] = GrLattice::standard(R);
    GrLattice I0 = kernel_lattice_index1(R, teichmueller(R, pt.a1));  // inside N_1
    M.M[0] = N.apply_v_inv(I0, /*target_piece=*/0);
  } else {
    M.M[0] = lattice_from_coords(R, R->p, 0, 0, 1);
    GrLattice I1 = kernel_lattice_index0(R, teichmueller(R, pt.a2));  // inside N_0
    M.M[1] = N.apply_v_inv(I1, /*target_piece=*/1);
  }

  SpecialCheck chk = check_special(M);
  if (!chk.ok()) {
    std::string msg = "phi_inverse: output fails validation:";
    for (const auto& f : chk.failures) msg += " " + f;
    throw DomainError(msg);
  }
  if (critical_indices(M) != crit)
    throw DomainError("phi_inverse: critical set differs from the chart prediction");
  return M;
}

PLattice FixedLattice::as_plattice(const std::shared_ptr<const QpCtx>& C) const {
  auto to_int = [&](const Zq& x) -> int64_t {
    // sigma-fixed elements lie in Z/p^n
    for (size_t i = 1; i < x.coeffs().size(); ++i)
      if (x.coeffs()[i] != 0) throw DomainError("FixedLattice: generator not rational");
    return x.coeffs()[0];
  };
  Mat<Qp> B(2, 2, Qp::zero(C));
  for (size_t j = 0; j < 2; ++j)
    for (size_t i = 0; i < 2; ++i) B.at(i, j) = Qp::make(C, to_int(gens[j][i]), -scale);
  return PLattice(C, std::move(B));
}

FixedLattice fixed_lattice(const FramingN& N, const GrLattice& piece, int t_max) {
  auto R = N.R;
  if (!piece.contains(piece.sigma_pow(1)))
    throw DomainError("fixed_lattice: piece is not U-stable");
  const int n = R->n;
  const int64_t p = R->p;

  for (int t = 1; t <= t_max; ++t) {
    int u = R->s * t;
    auto Rt = ZqCtx::get(p, n, u);
    ZqEmbed emb(R, Rt);
    // embed the basis
    Mat<Zq> B(2, 2, Zq::zero(Rt));
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) B.at(i, j) = emb(piece.basis().at(i, j));
    GrLattice Lt(Rt, B, 0);  // scale handled at the end

    // C = B^{-1} sigma(B); integral by sigma-stability
    int dv = Lt.det_val();
    if (dv > n - 2) throw PrecisionError("fixed_lattice: working precision too small");
    Mat<Zq> C(2, 2, Zq::zero(Rt));
    for (size_t j = 0; j < 2; ++j) {
      std::vector<Zq> col = {B.at(0, j).sigma(), B.at(1, j).sigma()};
      auto c = Lt.coords_of(col);
      if (!c) throw DomainError("fixed_lattice: sigma image escapes the lattice");
      C.at(0, j) = (*c)[0];
      C.at(1, j) = (*c)[1];
    }

    // linearize y - C sigma(y) on (Z/p^n)^{2u}
    auto Z1 = ZqCtx::get(p, n, 1);
    size_t dim = 2 * static_cast<size_t>(u);
    Mat<Zq> T(dim, dim, Zq::zero(Z1));
    for (int comp = 0; comp < 2; ++comp) {
      for (int j = 0; j < u; ++j) {
        // basis vector t^j e_comp
        std::vector<int64_t> mono(static_cast<size_t>(u), 0);
        mono[static_cast<size_t>(j)] = 1;
        Zq y(Rt, mono);
        Zq ys = y.sigma();
        std::vector<Zq> img = {(-C.at(0, comp)) * ys, (-C.at(1, comp)) * ys};
        img[static_cast<size_t>(comp)] = img[static_cast<size_t>(comp)] + y;
        size_t colidx = static_cast<size_t>(comp * u + j);
        for (int rc = 0; rc < 2; ++rc)
          for (int rj = 0; rj < u; ++rj)
            T.at(static_cast<size_t>(rc * u + rj), colidx) =
                Zq::from_int(Z1, img[static_cast<size_t>(rc)].coeffs()[static_cast<size_t>(rj)]);
      }
    }

    SnfResult snf = snf_solve(T);
    int zero_divs = 0;
    bool clean = true;
    for (int a : snf.divisor_exponents) {
      if (a == n)
        ++zero_divs;
      else if (a != 0)
        clean = false;
    }
    if (!(clean && zero_divs == 2 && snf.kernel.cols() == 2)) continue;

    // reconstruct generators x = B y and verify they span the piece over GR
    FixedLattice out;
    out.ring = Rt;
    out.scale = piece.scale();
    out.t_used = t;
    for (size_t g = 0; g < 2; ++g) {
      std::vector<Zq> y2(2, Zq::zero(Rt));
      for (int comp = 0; comp < 2; ++comp) {
        std::vector<int64_t> coeffs(static_cast<size_t>(u), 0);
        for (int j = 0; j < u; ++j)
          coeffs[static_cast<size_t>(j)] =
              snf.kernel.at(static_cast<size_t>(comp * u + j), g).coeffs()[0];
        y2[static_cast<size_t>(comp)] = Zq(Rt, std::move(coeffs));
      }
      out.gens[g] = {B.at(0, 0) * y2[0] + B.at(0, 1) * y2[1],
                     B.at(1, 0) * y2[0] + B.at(1, 1) * y2[1]};
    }
    GrLattice span = GrLattice::from_cols(out.gens[0], out.gens[1], 0);
    bool spans = false;
    try {
      spans = (span == Lt);
    } catch (const PrecisionError&) {
      spans = false;
    }
    if (!spans) continue;
    return out;
  }
  throw InsufficientExtension("fixed_lattice: rank did not stabilize at 2 within t_max");
}

namespace {

/// xi-coordinate extraction at a critical index: canonical form of
/// Q_i = V M_{i-1} in the canonical basis of M_i.
Fq extract_xi(const SpecialDieudonne& M, int i) {
  GrLattice Mi = M.piece(i).canonical();
  GrLattice Qi = M.N.apply_v(M.piece(1 - i), 1 - i);
  // relative coordinates of Q in the basis of M
  auto R = M.N.R;
  int shift = Mi.scale() - Qi.scale();
  Mat<Zq> T(2, 2, Zq::zero(R));
  for (size_t j = 0; j < 2; ++j) {
    std::vector<Zq> col = Qi.basis().col(j);
    if (shift > 0)
      for (auto& x : col) x = x.times_p(shift);
    if (shift < 0)
      for (auto& x : col) x = x.div_p(-shift);
    auto c = Mi.coords_of(col);
    if (!c) throw DomainError("extract_xi: Q not inside M");
    T.at(0, j) = (*c)[0];
    T.at(1, j) = (*c)[1];
  }
  GrLattice Tcan = GrLattice(R, T, 0).canonical();
  int A = Tcan.basis().at(0, 0).val();
  int Cv = Tcan.basis().at(1, 1).val();
  if (A + Cv != 1) throw DomainError("extract_xi: Hodge quotient is not a line");
  Fq a0, a1;  // functional on (g1, g2)
  if (A == 1) {
    Fq bbar = Tcan.basis().at(0, 1).residue();
    a0 = Fq::one(R->residue_field());
    a1 = -bbar;
  } else {
    a0 = Fq::zero(R->residue_field());
    a1 = Fq::one(R->residue_field());
  }
  if (i == 1) {
    if (a0.is_zero()) throw DomainError("extract_xi: Deligne shape violated at index 1");
    return a1 * a0.inv();
  }
  if (a1.is_zero()) throw DomainError("extract_xi: Deligne shape violated at index 0");
  return a0 * a1.inv();
}

}  // namespace

PhiForwardResult phi_forward(const SpecialDieudonne& M, int t_max,
                             const std::shared_ptr<const QpCtx>& treeC) {
  SpecialCheck chk = check_special(M);
  if (!chk.ok()) throw DomainError("phi_forward: input is not a special module");
  std::vector<int> crit = critical_indices(M);
  if (crit.empty()) throw DomainError("phi_forward: no critical index (impossible for valid input)");

  PhiForwardResult out;
  out.critical = crit;
  auto k = M.N.R->residue_field();
  Fq z = Fq::zero(k);
  out.point = ChartPoint{k, z, z};

  std::vector<TreeVertex> verts;
  for (int i : crit) {
    FixedLattice fl = fixed_lattice(M.N, M.piece(i), t_max);
    verts.emplace_back(fl.as_plattice(treeC));
    Fq xi = extract_xi(M, i);
    if (i == 1)
      out.point.a1 = xi;
    else
      out.point.a2 = xi;
  }
  if (crit.size() == 2) {
    // order (index-0 vertex, index-1 vertex) and check the chain
    const TreeVertex& v1 = verts[crit[0] == 1 ? 0 : 1];
    const TreeVertex& v0 = verts[crit[0] == 0 ? 0 : 1];
    out.simplex = make_edge(v0, v1);
  } else {
    out.simplex = Simplex{{verts[0]}};
  }
  out.datum = datum_of_point(out.point);
  DeligneResult dc = deligne_check(out.datum);
  if (!dc.ok) throw DomainError("phi_forward: produced datum fails (Deligne): " + dc.witness);
  return out;
}

}  // namespace d2
