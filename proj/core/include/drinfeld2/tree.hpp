#pragma once

#include <set>
#include <vector>

#include "drinfeld2/lattice.hpp"

namespace d2 {

/// Distance between homothety classes: |a - b| for the elementary divisors
/// p^a, p^b of a normalized basis-change matrix.
int tree_distance(const TreeVertex& v, const TreeVertex& w);

bool tree_is_edge(const TreeVertex& v, const TreeVertex& w);

/// Left action of g in GL_2(Q_p).
TreeVertex tree_act(const Mat<Qp>& g, const TreeVertex& v);

/// The p+1 neighbors (index-p sublattice classes).
std::vector<TreeVertex> tree_neighbors(const TreeVertex& v);

/// All vertices within distance r (BFS with canonical-form dedup).
std::vector<TreeVertex> tree_ball(const TreeVertex& center, int radius);

/// Edge simplex with chain representatives p*L1 < L0 < L1.
Simplex make_edge(const TreeVertex& v0, const TreeVertex& v1);

/// The standard edge ([<pe1,e2>], [<e1,e2>]).
Simplex standard_edge(std::shared_ptr<const QpCtx> C);

/// A g carrying the standard edge to the given edge (vertexwise, in order).
Mat<Qp> transport_to_edge(const Simplex& edge);

}  // namespace d2
