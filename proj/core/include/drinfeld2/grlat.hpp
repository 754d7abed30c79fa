#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drinfeld2/matrix.hpp"
#include "drinfeld2/zq.hpp"

namespace d2 {

/// Rank-2 W(F_q)-lattice inside the rational span of the fixed basis e1, e2,
/// modelled over the Galois ring at working precision. The actual lattice is
/// p^{-scale} * (column span of B); fractional lattices keep B integral and
/// move the scale, so no entrywise division by p ever happens.
class GrLattice {
 public:
  GrLattice() = default;
  GrLattice(std::shared_ptr<const ZqCtx> R, Mat<Zq> basis, int scale = 0);
  static GrLattice standard(std::shared_ptr<const ZqCtx> R);  // <e1, e2>
  static GrLattice from_cols(const std::vector<Zq>& c0, const std::vector<Zq>& c1, int scale = 0);

  const std::shared_ptr<const ZqCtx>& ctx() const { return R_; }
  const Mat<Zq>& basis() const { return B_; }
  int scale() const { return scale_; }

  /// Hermite canonical form [[p^a, b], [0, p^c]] with b reduced mod p^a, and
  /// the scale normalized down as far as all entries allow.
  GrLattice canonical() const;

  int det_val() const;  // valuation of det(basis) - 2*scale

  GrLattice scaled_by_p(int k) const;  // p^k * L
  GrLattice sigma_pow(int e) const;    // entrywise sigma^e (image lattice)

  bool contains(const GrLattice& other) const;
  bool contains_vector(const std::vector<Zq>& v, int vscale) const;
  bool operator==(const GrLattice& other) const;  // same lattice
  /// length of L / other as a W-module (other must be contained in L)
  int quotient_length(const GrLattice& other) const;

  /// Solve B * x = v (v given at the same scale); entries of x integral iff
  /// the vector lies in the lattice.
  std::optional<std::vector<Zq>> coords_of(const std::vector<Zq>& v) const;

  GrLattice sum(const GrLattice& other) const;

  std::string str() const;

 private:
  std::shared_ptr<const ZqCtx> R_;
  Mat<Zq> B_;
  int scale_ = 0;
};

}  // namespace d2
