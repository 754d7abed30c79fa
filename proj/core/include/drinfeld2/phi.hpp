#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drinfeld2/isocrystal.hpp"
#include "drinfeld2/lattice.hpp"
#include "drinfeld2/snf.hpp"

namespace d2 {

/// A k-point of the standard-edge chart, in xi-coordinates (the Teichmueller
/// coordinates of the display bases, before the X - X^p change of variable).
/// Slot a1 belongs to the vertex [<e1,e2>] (critical index 1, the X-chart);
/// slot a2 to [<pe1,e2>] (critical index 0, the Y-chart).
/// Invariants: a1 * a2 = 0 and 1 - a_i^{p-1} != 0.
struct ChartPoint {
  std::shared_ptr<const FqCtx> k;
  Fq a1, a2;

  /// The Lie-diagram multipliers (Lie_0 -> Lie_1, Lie_1 -> Lie_0), i.e. the
  /// transformed chart coordinates.
  std::pair<Fq, Fq> multipliers() const { return {a1 - a1.pow(k->p), a2 - a2.pow(k->p)}; }
  /// {1} if a1 != 0, {0} if a2 != 0, {0,1} at the origin.
  std::vector<int> expected_critical() const;
  bool operator<(const ChartPoint& o) const {
    if (a1 != o.a1) return a1 < o.a1;
    return a2 < o.a2;
  }
  bool operator==(const ChartPoint& o) const { return a1 == o.a1 && a2 == o.a2; }
};

/// Throws DomainError unless the coordinates satisfy the chart conditions.
void validate_point(const ChartPoint& pt);

/// All chart points over F_{p^s}; count is 2(p^s - p) + 1.
std::vector<ChartPoint> enumerate_points(const std::shared_ptr<const FqCtx>& k);

/// The line-bundle datum of a point: one functional per critical vertex, in
/// the adapted basis (e1, e2) at index 1 and (p e1, e2) at index 0.
struct DeligneDatum {
  std::shared_ptr<const FqCtx> k;
  bool has0 = false, has1 = false;
  std::array<Fq, 2> alpha0{};  // defined when has0
  std::array<Fq, 2> alpha1{};  // defined when has1
};

struct DeligneResult {
  bool ok = false;
  std::string witness;  // a violating lattice vector on failure
};

DeligneDatum datum_of_point(const ChartPoint& pt);
DeligneResult deligne_check(const DeligneDatum& d);

/// U-fixed Z_p-lattice of a graded piece, solved over the extension ladder.
struct FixedLattice {
  std::shared_ptr<const ZqCtx> ring;     // GR at the successful stage
  std::array<std::vector<Zq>, 2> gens;   // sigma-fixed generator vectors
  int scale = 0;
  int t_used = 1;

  /// Generators have sigma-fixed (= Z/p^n) coordinates; as a lattice in Q_p^2.
  PLattice as_plattice(const std::shared_ptr<const QpCtx>& C) const;
};

/// Solves sigma(x) = x on the lattice by Z/p^n-linearization and SNF,
/// increasing the field stage t <= t_max until the kernel is free of rank 2
/// and spans the piece back over the big ring. Throws InsufficientExtension
/// when the budget is exhausted, never returns a wrong answer.
FixedLattice fixed_lattice(const FramingN& N, const GrLattice& piece, int t_max);

struct PhiForwardResult {
  ChartPoint point;
  Simplex simplex;
  DeligneDatum datum;
  std::vector<int> critical;
};

/// Drinfeld's point map: critical indices, U-fixed lattices, and the chart
/// coordinate read off the canonical basis of Q at each critical index.
PhiForwardResult phi_forward(const SpecialDieudonne& M, int t_max,
                             const std::shared_ptr<const QpCtx>& treeC);

/// The inverse algorithm: sets M at each critical index to Lambda (x) W,
/// takes I = ker(M -> L), and realizes the Frobenius twist inside N as
/// V^{-1}(I), with Pi = U o V. Validates the output.
///
/// General d (not implemented; d = 2 only): the grading has d pieces, the
/// framing has Pi = id except N_{d-1} -> N_0 = p, and the chain descends
/// through every non-critical index:
///   I_{i-1} = { m in M_i : Pi(m) in I_i }  starting from the Hodge kernel
///             at a critical index,
///   M_{i-1} = V^{-1}(I_{i-1}),
/// iterated until the next critical index is reached; the Hodge lines at
/// non-critical indices are then determined, with the xi-coordinates read
/// off the canonical kernel bases exactly as in the two-piece case.
SpecialDieudonne phi_inverse(const ChartPoint& pt, const std::shared_ptr<const ZqCtx>& R);

}  // namespace d2
