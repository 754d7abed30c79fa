#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drinfeld2/matrix.hpp"
#include "drinfeld2/qp.hpp"

namespace d2 {

/// Full-rank Z_p-lattice in Q_p^2 given by a column basis. Canonical form is
/// upper triangular (p^a, b; 0, p^c) with b an exact integer reduced mod p^a.
class PLattice {
 public:
  PLattice(std::shared_ptr<const QpCtx> C, Mat<Qp> basis);
  /// From integer column vectors scaled by p^e.
  static PLattice from_ints(std::shared_ptr<const QpCtx> C, int64_t a00, int64_t a01, int64_t a10,
                            int64_t a11, int e = 0);

  const std::shared_ptr<const QpCtx>& ctx() const { return C_; }
  const Mat<Qp>& basis() const { return B_; }

  /// Hermite-style canonical basis; span unchanged. Throws PrecisionError if
  /// the determinant valuation reaches the precision budget.
  PLattice canonical() const;
  bool is_canonical() const { return canon_; }

  int det_val() const;

  /// Same span test (via canonical forms).
  bool same_lattice(const PLattice& o) const;

  std::string str() const;

 private:
  friend class TreeVertex;
  std::shared_ptr<const QpCtx> C_;
  Mat<Qp> B_;
  bool canon_ = false;
};

/// Homothety class with the canonical representative scaled so the lattice
/// sits inside Z_p^2 but not inside p Z_p^2.
class TreeVertex {
 public:
  explicit TreeVertex(const PLattice& L);

  const PLattice& rep() const { return rep_; }
  const std::shared_ptr<const QpCtx>& ctx() const { return rep_.ctx(); }

  bool operator==(const TreeVertex& o) const;
  bool operator!=(const TreeVertex& o) const { return !(*this == o); }
  bool operator<(const TreeVertex& o) const;  // deterministic order for sets

  static TreeVertex standard(std::shared_ptr<const QpCtx> C);  // [<e1,e2>]
  std::string str() const;

 private:
  PLattice rep_;
  std::vector<int64_t> key_;  // (a, c, b) canonical integers, for ordering
};

/// A vertex or an edge of the tree. Edges store chain representatives
/// p*L1 < L0 < L1 with [L1 : L0] = p.
struct Simplex {
  std::vector<TreeVertex> verts;  // size 1 or 2; edges ordered (L0, L1)
  bool is_vertex() const { return verts.size() == 1; }
  bool is_edge() const { return verts.size() == 2; }
};

}  // namespace d2
