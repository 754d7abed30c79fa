#include "drinfeld2/tree.hpp"

namespace d2 {
namespace {

Mat<Qp> inv2(const Mat<Qp>& B, const std::shared_ptr<const QpCtx>& C) {
  Qp det = B.at(0, 0) * B.at(1, 1) - B.at(0, 1) * B.at(1, 0);
  if (det.is_zero()) throw DomainError("tree: singular matrix");
  Qp di = det.inv();
  Mat<Qp> A(2, 2, Qp::zero(C));
  A.at(0, 0) = B.at(1, 1) * di;
  A.at(0, 1) = -B.at(0, 1) * di;
  A.at(1, 0) = -B.at(1, 0) * di;
  A.at(1, 1) = B.at(0, 0) * di;
  return A;
}

int min_val(const Mat<Qp>& M) {
  int v = INT32_MAX;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      if (!M.at(i, j).is_zero()) v = std::min(v, M.at(i, j).val());
  if (v == INT32_MAX) throw DomainError("tree: zero matrix");
  return v;
}

}  // namespace

int tree_distance(const TreeVertex& v, const TreeVertex& w) {
  auto C = v.ctx();
  Mat<Qp> M = inv2(v.rep().basis(), C).mul(w.rep().basis(), Qp::zero(C));
  Qp det = M.at(0, 0) * M.at(1, 1) - M.at(0, 1) * M.at(1, 0);
  int d1 = min_val(M);
  int d2 = det.val() - d1;
  return d2 - d1;
}

bool tree_is_edge(const TreeVertex& v, const TreeVertex& w) { return tree_distance(v, w) == 1; }

TreeVertex tree_act(const Mat<Qp>& g, const TreeVertex& v) {
  auto C = v.ctx();
  Mat<Qp> B = g.mul(v.rep().basis(), Qp::zero(C));
  return TreeVertex(PLattice(C, std::move(B)));
}

std::vector<TreeVertex> tree_neighbors(const TreeVertex& v) {
  auto C = v.ctx();
  const Mat<Qp>& B = v.rep().basis();
  std::vector<TreeVertex> out;
  int64_t p = C->p;
  for (int64_t t = 0; t < p; ++t) {
    // <b1 + t b2, p b2>
    Mat<Qp> M(2, 2, Qp::zero(C));
    Qp tq = Qp::from_int(C, t);
    for (size_t i = 0; i < 2; ++i) {
      M.at(i, 0) = t == 0 ? B.at(i, 0) : B.at(i, 0) + tq * B.at(i, 1);
      M.at(i, 1) = B.at(i, 1).times_p_pow(1);
    }
    out.emplace_back(PLattice(C, std::move(M)));
  }
  {
    // <p b1, b2>
    Mat<Qp> M(2, 2, Qp::zero(C));
    for (size_t i = 0; i < 2; ++i) {
      M.at(i, 0) = B.at(i, 0).times_p_pow(1);
      M.at(i, 1) = B.at(i, 1);
    }
    out.emplace_back(PLattice(C, std::move(M)));
  }
  return out;
}

std::vector<TreeVertex> tree_ball(const TreeVertex& center, int radius) {
  std::set<TreeVertex> seen{center};
  std::vector<TreeVertex> frontier{center};
  for (int r = 0; r < radius; ++r) {
    std::vector<TreeVertex> next;
    for (const auto& v : frontier)
      for (const auto& w : tree_neighbors(v))
        if (seen.insert(w).second) next.push_back(w);
    frontier = std::move(next);
  }
  return std::vector<TreeVertex>(seen.begin(), seen.end());
}

Simplex make_edge(const TreeVertex& v0, const TreeVertex& v1) {
  if (tree_distance(v0, v1) != 1) throw DomainError("make_edge: vertices not adjacent");
  return Simplex{{v0, v1}};
}

Simplex standard_edge(std::shared_ptr<const QpCtx> C) {
  TreeVertex l1 = TreeVertex::standard(C);
  TreeVertex l0(PLattice::from_ints(C, C->p, 0, 0, 1));  // <p e1, e2>
  return Simplex{{l0, l1}};
}

Mat<Qp> transport_to_edge(const Simplex& edge) {
  if (!edge.is_edge()) throw DomainError("transport_to_edge: need an edge");
  auto C = edge.verts[0].ctx();
  const TreeVertex& v0 = edge.verts[0];
  const TreeVertex& v1 = edge.verts[1];
  const Mat<Qp>& B = v1.rep().basis();
  // find the index-p sublattice class of L1 equal to [L0]
  int64_t p = C->p;
  auto try_basis = [&](const std::vector<Qp>& c0, const std::vector<Qp>& c1) -> std::optional<Mat<Qp>> {
    // candidate adapted basis (v1, v2) of L1 with sub = <p v1, v2>
    Mat<Qp> sub(2, 2, Qp::zero(C));
    sub.at(0, 0) = c0[0].times_p_pow(1);
    sub.at(1, 0) = c0[1].times_p_pow(1);
    sub.at(0, 1) = c1[0];
    sub.at(1, 1) = c1[1];
    TreeVertex cand(PLattice(C, sub));
    if (cand == v0) {
      Mat<Qp> g(2, 2, Qp::zero(C));
      g.at(0, 0) = c0[0];
      g.at(1, 0) = c0[1];
      g.at(0, 1) = c1[0];
      g.at(1, 1) = c1[1];
      return g;
    }
    return std::nullopt;
  };
  std::vector<Qp> b1 = {B.at(0, 0), B.at(1, 0)};
  std::vector<Qp> b2 = {B.at(0, 1), B.at(1, 1)};
  for (int64_t t = 0; t < p; ++t) {
    Qp tq = Qp::from_int(C, t);
    std::vector<Qp> v2 = {t == 0 ? b1[0] : b1[0] + tq * b2[0],
                          t == 0 ? b1[1] : b1[1] + tq * b2[1]};
    if (auto g = try_basis(b2, v2)) return *g;
  }
  if (auto g = try_basis(b1, b2)) return *g;
  throw DomainError("transport_to_edge: no adapted basis found");
}

}  // namespace d2
