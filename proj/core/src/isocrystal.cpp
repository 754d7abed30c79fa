#include "drinfeld2/isocrystal.hpp"

namespace d2 {

SpecialCheck check_special(const SpecialDieudonne& M) {
  SpecialCheck out;
  out.stable = true;
  out.special = true;
  out.rank_ok = true;
  for (int i = 0; i < 2; ++i) {
    const GrLattice& Mi = M.piece(i);
    const GrLattice& Mn = M.piece(1 - i);
    try {
      Mi.det_val();
    } catch (const PrecisionError&) {
      out.rank_ok = false;
      out.failures.push_back("wrong-height: piece " + std::to_string(i) + " not full rank");
      continue;
    }
    GrLattice vim = M.N.apply_v(Mi, i);
    GrLattice pim = M.N.apply_pi(Mi, i);
    if (!Mn.contains(vim)) {
      out.stable = false;
      out.failures.push_back("not-stable: V M_" + std::to_string(i) + " not inside M_" +
                             std::to_string(1 - i));
      continue;
    }
    if (!Mn.contains(pim)) {
      out.stable = false;
      out.failures.push_back("not-stable: Pi M_" + std::to_string(i) + " not inside M_" +
                             std::to_string(1 - i));
      continue;
    }
    int lie_len = Mn.quotient_length(vim);
    if (lie_len != 1) {
      out.special = false;
      out.failures.push_back("not-special: Lie piece " + std::to_string(1 - i) + " has length " +
                             std::to_string(lie_len));
    }
    int pi_len = Mn.quotient_length(pim);
    if (pi_len != 1) {
      out.special = false;
      out.failures.push_back("not-special: coker(Pi_" + std::to_string(i) + ") has length " +
                             std::to_string(pi_len));
    }
  }
  return out;
}

std::vector<int> critical_indices(const SpecialDieudonne& M) {
  std::vector<int> out;
  for (int i = 0; i < 2; ++i) {
    GrLattice vim = M.N.apply_v(M.piece(i), i);
    GrLattice pim = M.N.apply_pi(M.piece(i), i);
    if (vim.contains(pim)) out.push_back(i);
  }
  return out;
}

HeightReport height_and_nilpotence(const SpecialDieudonne& M, int witt_len) {
  HeightReport out;
  out.height = M.piece(0).det_val() + M.piece(1).det_val();
  out.v_nilpotent = true;
  for (int i = 0; i < 2 && out.v_nilpotent; ++i) {
    GrLattice L = M.piece(i);
    int piece = i;
    for (int k = 0; k < 2 * witt_len; ++k) {
      L = M.N.apply_v(L, piece);
      piece = 1 - piece;
    }
    // V^{2m} lands back in piece i; nilpotent on M/pM iff image inside p M_i
    if (!M.piece(i).scaled_by_p(1).contains(L)) out.v_nilpotent = false;
  }
  return out;
}

int reference_height() { return 1; }

bool equal_framed(const SpecialDieudonne& A, const SpecialDieudonne& B) {
  return A.piece(0) == B.piece(0) && A.piece(1) == B.piece(1);
}

SpecialDieudonne scale_module_by_p(const SpecialDieudonne& M, int k) {
  SpecialDieudonne out = M;
  out.M[0] = M.piece(0).scaled_by_p(k);
  out.M[1] = M.piece(1).scaled_by_p(k);
  return out;
}

SpecialDieudonne standard_module(const std::shared_ptr<const ZqCtx>& R) {
  SpecialDieudonne out{FramingN{R}, {GrLattice::standard(R), GrLattice::standard(R)}};
  Mat<Zq> B0 = Mat<Zq>::identity(2, Zq::zero(R), Zq::one(R));
  B0.at(0, 0) = Zq::from_int(R, R->p);
  out.M[0] = GrLattice(R, std::move(B0), 0);  // <p e1, e2>
  return out;
}

}  // namespace d2
