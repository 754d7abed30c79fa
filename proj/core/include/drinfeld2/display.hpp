#pragma once

#include <array>
#include <string>
#include <vector>

#include "drinfeld2/matrix.hpp"
#include "drinfeld2/witt.hpp"

namespace d2 {

/// Z/2-graded display with explicit basis inside the framing isocrystal,
/// over a char-p coefficient ring CR (chart ring, glued ring, dual numbers).
///
/// Piece i is the W(CR)-span of p^{-scale_i} * (columns of basis[i]), written
/// in the fixed coordinates e1, e2 of N_i. The Hodge surjection
/// P_i ->> L_i = CR sends a coordinate vector (a, b) in the P_i-basis to
/// w_0(a) hodge[i][0] + w_0(b) hodge[i][1]. Q_i = ker is W q_gen + I(CR) t_gen.
/// phi[i] holds the structural columns (Fdot(q_gen[i]) | F(t_gen[i])) in the
/// P_{i+1}-basis; pi_mat[i] is Pi: P_i -> P_{i+1} in the bases.
template <class CR>
struct Display {
  int m = 0;
  std::array<Mat<WittVec<CR>>, 2> basis;
  std::array<int, 2> scale{0, 0};
  std::array<std::array<CR, 2>, 2> hodge;
  std::array<std::array<WittVec<CR>, 2>, 2> q_gen;
  std::array<std::array<WittVec<CR>, 2>, 2> t_gen;
  std::array<Mat<WittVec<CR>>, 2> phi;
  std::array<Mat<WittVec<CR>>, 2> pi_mat;

  const CR& proto() const { return hodge[0][0]; }

  /// Lie multipliers (Lie_0 -> Lie_1, Lie_1 -> Lie_0) computed from the data.
  std::pair<CR, CR> lie_multipliers() const;

  /// reduction of a coordinate vector under the Hodge row of piece i
  CR hodge_eval(int i, const std::array<WittVec<CR>, 2>& coords) const;

  /// N-coordinates (times p^{scale_i}) of a P_i-coordinate vector.
  std::array<WittVec<CR>, 2> to_ambient(int i, const std::array<WittVec<CR>, 2>& coords) const;
};

struct DisplayCheckReport {
  std::vector<std::string> failures;
  std::vector<std::string> passed;
  bool ok() const { return failures.empty(); }
};

/// Structural verification: basis ranks, Hodge surjectivity and kernel
/// conditions, normal decomposition, structural-matrix invertibility, the
/// operator identities against the isocrystal formulas (p-power balanced),
/// Pi^2 = p, and the degree bookkeeping.
template <class CR>
DisplayCheckReport display_axioms_check(const Display<CR>& D);

/// --- helpers shared by the checks and the tangent module ---

template <class CR>
WittVec<CR> witt_sigma(const WittVec<CR>& w) {
  return w.sigma();
}

/// p^k * w, exact for char-p coefficient rings.
template <class CR>
WittVec<CR> witt_times_p(const WittVec<CR>& w, int k) {
  WittVec<CR> r = w;
  for (int i = 0; i < k; ++i) r = r.times_p();
  return r;
}

/// Divide by p when every coordinate of p*z is a p-th power; top coordinate
/// of the quotient is set to zero (determined choice).
WittVec<Loc> witt_div_p(const WittVec<Loc>& w);
WittVec<Fiber> witt_div_p(const WittVec<Fiber>& w);

template <class CR>
std::array<WittVec<CR>, 2> mat_apply2(const Mat<WittVec<CR>>& A,
                                      const std::array<WittVec<CR>, 2>& v) {
  return {A.at(0, 0) * v[0] + A.at(0, 1) * v[1], A.at(1, 0) * v[0] + A.at(1, 1) * v[1]};
}

template <class CR>
Mat<WittVec<CR>> mat_mul2(const Mat<WittVec<CR>>& A, const Mat<WittVec<CR>>& B) {
  Mat<WittVec<CR>> R(2, 2, A.at(0, 0));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      R.at(i, j) = A.at(i, 0) * B.at(0, j) + A.at(i, 1) * B.at(1, j);
  return R;
}

template <class CR>
WittVec<CR> mat_det2(const Mat<WittVec<CR>>& A) {
  return A.at(0, 0) * A.at(1, 1) - A.at(0, 1) * A.at(1, 0);
}

// ---- implementation ----

template <class CR>
CR Display<CR>::hodge_eval(int i, const std::array<WittVec<CR>, 2>& coords) const {
  const auto& row = hodge[static_cast<size_t>(i)];
  return coords[0].w0() * row[0] + coords[1].w0() * row[1];
}

template <class CR>
std::array<WittVec<CR>, 2> Display<CR>::to_ambient(int i,
                                                   const std::array<WittVec<CR>, 2>& coords) const {
  return mat_apply2(basis[static_cast<size_t>(i)], coords);
}

template <class CR>
std::pair<CR, CR> Display<CR>::lie_multipliers() const {
  auto mult = [&](int i) {
    // Pi(t_gen[i]) in the P_{i+1} basis, then through the Hodge row,
    // normalized by hodge(t_gen[i+1]).
    auto img = mat_apply2(pi_mat[static_cast<size_t>(i)], t_gen[static_cast<size_t>(i)]);
    CR num = hodge_eval(1 - i, img);
    CR den = hodge_eval(1 - i, t_gen[static_cast<size_t>(1 - i)]);
    return num * den.inv();
  };
  return {mult(0), mult(1)};
}

template <class CR>
DisplayCheckReport display_axioms_check(const Display<CR>& D) {
  DisplayCheckReport rep;
  auto fail = [&](const std::string& s) { rep.failures.push_back(s); };
  auto pass = [&](const std::string& s) { rep.passed.push_back(s); };
  const CR& pr = D.proto();
  using WR = WittRing<CR>;
  const int64_t p = WR::p(pr);

  // (1) basis ranks: det = p-power * unit
  for (int i = 0; i < 2; ++i) {
    WittVec<CR> det = mat_det2(D.basis[static_cast<size_t>(i)]);
    bool found_unit = false;
    WittVec<CR> d = det;
    for (int k = 0; k <= 2 * (D.scale[static_cast<size_t>(i)] + 1) + 2 && !found_unit; ++k) {
      if (d.is_unit()) found_unit = true;
      // peel a p: only meaningful while coordinates stay p-th powers; checked
      // implicitly by the unit test on w0 after shifting
      if (!found_unit) {
        if (d.coords()[0].is_zero()) {
          std::vector<CR> shifted(d.coords().begin() + 1, d.coords().end());
          shifted.push_back(WR::zero(pr));
          d = WittVec<CR>(std::move(shifted));  // "divide" the V-part; unit test only
        } else {
          break;
        }
      }
    }
    if (!found_unit)
      fail("basis " + std::to_string(i) + " determinant is not p-power times unit");
    else
      pass("basis " + std::to_string(i) + " full rank");
  }

  // (2) Hodge surjectivity and normal decomposition
  for (int i = 0; i < 2; ++i) {
    const auto& row = D.hodge[static_cast<size_t>(i)];
    if (!WR::is_unit(row[0]) && !WR::is_unit(row[1]))
      fail("hodge row " + std::to_string(i) + " not surjective");
    CR hq = D.hodge_eval(i, D.q_gen[static_cast<size_t>(i)]);
    CR ht = D.hodge_eval(i, D.t_gen[static_cast<size_t>(i)]);
    if (!hq.is_zero()) fail("q_gen[" + std::to_string(i) + "] not in the Hodge kernel");
    if (!WR::is_unit(ht)) fail("t_gen[" + std::to_string(i) + "] not transverse to Q");
    Mat<WittVec<CR>> QT(2, 2, D.q_gen[static_cast<size_t>(i)][0]);
    QT.at(0, 0) = D.q_gen[static_cast<size_t>(i)][0];
    QT.at(1, 0) = D.q_gen[static_cast<size_t>(i)][1];
    QT.at(0, 1) = D.t_gen[static_cast<size_t>(i)][0];
    QT.at(1, 1) = D.t_gen[static_cast<size_t>(i)][1];
    if (!mat_det2(QT).is_unit())
      fail("(q,t) is not a basis of piece " + std::to_string(i));
    else
      pass("normal decomposition piece " + std::to_string(i));
  }

  // (3) structural matrix invertible: Fdot(Q) generates
  for (int i = 0; i < 2; ++i) {
    if (!mat_det2(D.phi[static_cast<size_t>(i)]).is_unit())
      fail("Fdot(Q_" + std::to_string(i) + ") does not generate P_" + std::to_string(1 - i));
    else
      pass("structural matrix " + std::to_string(i) + " invertible");
  }

  // (4) operator identities against the isocrystal formulas, p-balanced:
  //     p^a sigma(Q_int) == p^b B_{i+1} phi_col1   (Fdot)
  //     p^c sigma(T_int) == p^d B_{i+1} phi_col2   (F)
  for (int i = 0; i < 2; ++i) {
    int si = D.scale[static_cast<size_t>(i)], sn = D.scale[static_cast<size_t>(1 - i)];
    auto Qint = D.to_ambient(i, D.q_gen[static_cast<size_t>(i)]);
    auto Tint = D.to_ambient(i, D.t_gen[static_cast<size_t>(i)]);
    auto phic1 = std::array<WittVec<CR>, 2>{D.phi[static_cast<size_t>(i)].at(0, 0),
                                            D.phi[static_cast<size_t>(i)].at(1, 0)};
    auto phic2 = std::array<WittVec<CR>, 2>{D.phi[static_cast<size_t>(i)].at(0, 1),
                                            D.phi[static_cast<size_t>(i)].at(1, 1)};
    auto claimed1 = mat_apply2(D.basis[static_cast<size_t>(1 - i)], phic1);
    auto claimed2 = mat_apply2(D.basis[static_cast<size_t>(1 - i)], phic2);
    // Fdot: sigma(q)/p^{1-i ? 0 : 1}, i.e. divide once on piece 0
    int lhs_pow = (i == 0) ? 1 : 0;
    int a = std::max(si + lhs_pow, sn) - si - lhs_pow;
    int b = std::max(si + lhs_pow, sn) - sn;
    bool ok1 = true;
    for (int r = 0; r < 2; ++r) {
      WittVec<CR> L = witt_times_p(witt_sigma(Qint[static_cast<size_t>(r)]), a);
      WittVec<CR> R = witt_times_p(claimed1[static_cast<size_t>(r)], b);
      if (!(L == R)) ok1 = false;
    }
    if (!ok1)
      fail("Fdot column at piece " + std::to_string(i) + " disagrees with sigma/p formula");
    else
      pass("Fdot column piece " + std::to_string(i));
    // F: LHS = p^{fpow - si} sigma(T_int), RHS = p^{-sn} claimed, fpow = [i == 1]
    int fpow = (i == 1) ? 1 : 0;
    int base = std::max(si - fpow, sn);
    int c = base - (si - fpow);
    int d0 = base - sn;
    bool ok2 = true;
    for (int r = 0; r < 2; ++r) {
      WittVec<CR> L = witt_times_p(witt_sigma(Tint[static_cast<size_t>(r)]), c);
      WittVec<CR> R = witt_times_p(claimed2[static_cast<size_t>(r)], d0);
      if (!(L == R)) ok2 = false;
    }
    if (!ok2)
      fail("F column at piece " + std::to_string(i) + " disagrees with the sigma formula");
    else
      pass("F column piece " + std::to_string(i));
  }

  // (5) Pi columns against the isocrystal (id resp. p), and Pi^2 = p
  for (int i = 0; i < 2; ++i) {
    int si = D.scale[static_cast<size_t>(i)], sn = D.scale[static_cast<size_t>(1 - i)];
    bool okp = true;
    for (int col = 0; col < 2; ++col) {
      std::array<WittVec<CR>, 2> bc = {D.basis[static_cast<size_t>(i)].at(0, static_cast<size_t>(col)),
                                       D.basis[static_cast<size_t>(i)].at(1, static_cast<size_t>(col))};
      std::array<WittVec<CR>, 2> pic = {D.pi_mat[static_cast<size_t>(i)].at(0, static_cast<size_t>(col)),
                                        D.pi_mat[static_cast<size_t>(i)].at(1, static_cast<size_t>(col))};
      auto claimed = mat_apply2(D.basis[static_cast<size_t>(1 - i)], pic);
      int ppow = (i == 1) ? 1 : 0;  // Pi multiplies by p out of piece 1
      int base = std::max(si - ppow, sn);
      int lhsk = base - (si - ppow), rhsk = base - sn;
      for (int r = 0; r < 2; ++r) {
        WittVec<CR> L = witt_times_p(bc[static_cast<size_t>(r)], lhsk);
        WittVec<CR> R = witt_times_p(claimed[static_cast<size_t>(r)], rhsk);
        if (!(L == R)) okp = false;
      }
    }
    if (!okp)
      fail("Pi matrix at piece " + std::to_string(i) + " disagrees with the framing");
    else
      pass("Pi matrix piece " + std::to_string(i));
  }
  {
    Mat<WittVec<CR>> sq = mat_mul2(D.pi_mat[1], D.pi_mat[0]);
    Mat<WittVec<CR>> sq2 = mat_mul2(D.pi_mat[0], D.pi_mat[1]);
    WittVec<CR> pw = WittVec<CR>::from_int(pr, D.m, p);
    WittVec<CR> zw = WittVec<CR>::zero(pr, D.m);
    bool ok = sq.at(0, 0) == pw && sq.at(1, 1) == pw && sq.at(0, 1) == zw && sq.at(1, 0) == zw &&
              sq2.at(0, 0) == pw && sq2.at(1, 1) == pw && sq2.at(0, 1) == zw && sq2.at(1, 0) == zw;
    if (!ok)
      fail("Pi^2 != p");
    else
      pass("Pi^2 = p");
  }

  return rep;
}

}  // namespace d2
