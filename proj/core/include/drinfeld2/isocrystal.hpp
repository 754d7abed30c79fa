#pragma once

#include <array>
#include <string>
#include <vector>

#include "drinfeld2/grlat.hpp"

namespace d2 {

/// The trivialized framing isocrystal N = N_0 (+) N_1 with basis e1, e2 in
/// each graded piece. In this trivialization:
///   Pi: N_0 -> N_1 is the identity,  Pi: N_1 -> N_0 is multiplication by p,
///   V:  N_0 -> N_1 is sigma^{-1},    V:  N_1 -> N_0 is p * sigma^{-1},
///   F:  N_0 -> N_1 is sigma,         F:  N_1 -> N_0 is p * sigma,
/// and U = V^{-1} Pi acts as sigma on both pieces.
struct FramingN {
  std::shared_ptr<const ZqCtx> R;  // working Galois ring (precision, stage)

  GrLattice apply_pi(const GrLattice& L, int piece) const {
    return piece == 0 ? L : L.scaled_by_p(1);
  }
  GrLattice apply_v(const GrLattice& L, int piece) const {
    GrLattice s = L.sigma_pow(-1);
    return piece == 0 ? s : s.scaled_by_p(1);
  }
  GrLattice apply_f(const GrLattice& L, int piece) const {
    GrLattice s = L.sigma_pow(1);
    return piece == 0 ? s : s.scaled_by_p(1);
  }
  GrLattice apply_u(const GrLattice& L) const { return L.sigma_pow(1); }
  /// V^{-1} of a module inside N_i, landing in N_{i-1}: sigma for i = 1,
  /// sigma / p for i = 0.
  GrLattice apply_v_inv(const GrLattice& L, int target_piece) const {
    GrLattice s = L.sigma_pow(1);
    return target_piece == 1 ? s.scaled_by_p(-1) : s;
  }
};

/// Z/2-graded pair of W-lattices M_0 in N_0, M_1 in N_1, stable under V and
/// Pi with rank-1 Lie pieces. `check_special` validates the conditions.
struct SpecialDieudonne {
  FramingN N;
  std::array<GrLattice, 2> M;

  const GrLattice& piece(int i) const { return M[static_cast<size_t>(i)]; }
};

struct SpecialCheck {
  bool stable = false;    // V M_i, Pi M_i inside M_{i+1}
  bool special = false;   // both Lie pieces have length 1
  bool rank_ok = false;   // both lattices full rank (total height d^2 = 4)
  std::vector<std::string> failures;
  bool ok() const { return stable && special && rank_ok; }
};

/// Validates stability, the rank-1 Lie condition and full rank, reporting
/// each failed condition separately.
SpecialCheck check_special(const SpecialDieudonne& M);

/// Indices i with Pi M_i = V M_i (the induced Lie map vanishes).
std::vector<int> critical_indices(const SpecialDieudonne& M);

/// Absolute height (sum of determinant valuations in the fixed basis) and
/// V-nilpotence on M/pM at the given Witt length.
struct HeightReport {
  int height = 0;
  bool v_nilpotent = false;
};
HeightReport height_and_nilpotence(const SpecialDieudonne& M, int witt_len);

/// Height of the reference module Phi^{-1}((0,0)) in this chart; frozen by a
/// golden-value test.
int reference_height();

bool equal_framed(const SpecialDieudonne& A, const SpecialDieudonne& B);

SpecialDieudonne scale_module_by_p(const SpecialDieudonne& M, int k);

/// The standard module Phi^{-1}((0,0)): M_0 = <p e1, e2>, M_1 = <e1, e2>.
SpecialDieudonne standard_module(const std::shared_ptr<const ZqCtx>& R);

}  // namespace d2
