#include "drinfeld2/grlat.hpp"

#include <algorithm>

namespace d2 {
namespace {

int vof(const Zq& x) { return x.val(); }

}  // namespace

GrLattice::GrLattice(std::shared_ptr<const ZqCtx> R, Mat<Zq> basis, int scale)
    : R_(std::move(R)), B_(std::move(basis)), scale_(scale) {
  if (B_.rows() != 2 || B_.cols() != 2) throw DomainError("GrLattice: 2x2 bases only");
}

GrLattice GrLattice::standard(std::shared_ptr<const ZqCtx> R) {
  Mat<Zq> B = Mat<Zq>::identity(2, Zq::zero(R), Zq::one(R));
  return GrLattice(std::move(R), std::move(B), 0);
}

GrLattice GrLattice::from_cols(const std::vector<Zq>& c0, const std::vector<Zq>& c1, int scale) {
  auto R = c0[0].ctx();
  Mat<Zq> B(2, 2, Zq::zero(R));
  B.at(0, 0) = c0[0];
  B.at(1, 0) = c0[1];
  B.at(0, 1) = c1[0];
  B.at(1, 1) = c1[1];
  return GrLattice(R, std::move(B), scale);
}

int GrLattice::det_val() const {
  Zq det = B_.at(0, 0) * B_.at(1, 1) - B_.at(0, 1) * B_.at(1, 0);
  int v = det.val();
  if (v >= R_->n)
    throw PrecisionError("GrLattice: determinant valuation reaches working precision");
  return v - 2 * scale_;
}

GrLattice GrLattice::canonical() const {
  det_val();
  Mat<Zq> B = B_;
  // column with the lower-valuation bottom entry goes second
  if (vof(B.at(1, 0)) < vof(B.at(1, 1))) {
    std::swap(B.at(0, 0), B.at(0, 1));
    std::swap(B.at(1, 0), B.at(1, 1));
  }
  // clear the bottom of column 0: col0 -= (b10 / b11) col1  (valuations allow)
  if (!B.at(1, 0).is_zero()) {
    int a = vof(B.at(1, 1));
    Zq unit = B.at(1, 1).div_p(a);
    Zq f = B.at(1, 0).div_p(a) * unit.inv();
    B.at(0, 0) = B.at(0, 0) - f * B.at(0, 1);
    B.at(1, 0) = Zq::zero(R_);
  }
  // normalize pivots to p-powers (column scalings by units)
  int a = vof(B.at(0, 0)), c = vof(B.at(1, 1));
  Zq u1 = B.at(1, 1).div_p(c);
  B.at(0, 0) = Zq::from_int(R_, ipow(R_->p, a));
  B.at(0, 1) = B.at(0, 1) * u1.inv();
  B.at(1, 1) = Zq::from_int(R_, ipow(R_->p, c));
  // reduce b mod p^a
  {
    int64_t pa = ipow(R_->p, a);
    std::vector<int64_t> cc = B.at(0, 1).coeffs();
    for (auto& x : cc) x = mod_pos(x, pa);
    B.at(0, 1) = Zq(R_, std::move(cc));
  }
  // fold the scale down: divide all entries by the largest common p-power
  int s = scale_;
  while (s > 0) {
    int mv = R_->n;
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        if (!B.at(i, j).is_zero()) mv = std::min(mv, vof(B.at(i, j)));
    if (mv < 1) break;
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) B.at(i, j) = B.at(i, j).div_p(1);
    --s;
  }
  GrLattice out(R_, std::move(B), s);
  return out;
}

GrLattice GrLattice::scaled_by_p(int k) const {
  // p^{-scale} span: multiplying by p^k just lowers the scale
  return GrLattice(R_, B_, scale_ - k);
}

GrLattice GrLattice::sigma_pow(int e) const {
  Mat<Zq> B = B_;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) B.at(i, j) = B.at(i, j).sigma_pow(e);
  return GrLattice(R_, std::move(B), scale_);
}

std::optional<std::vector<Zq>> GrLattice::coords_of(const std::vector<Zq>& v) const {
  // solve B x = v by Cramer with exact p-division checks
  Zq det = B_.at(0, 0) * B_.at(1, 1) - B_.at(0, 1) * B_.at(1, 0);
  int dv = det.val();
  if (dv >= R_->n) throw PrecisionError("GrLattice: singular at working precision");
  Zq unit = det.div_p(dv);
  Zq ui = unit.inv();
  Zq n0 = (v[0] * B_.at(1, 1) - v[1] * B_.at(0, 1)) * ui;
  Zq n1 = (B_.at(0, 0) * v[1] - B_.at(1, 0) * v[0]) * ui;
  if (n0.val() < dv || n1.val() < dv) return std::nullopt;
  return std::vector<Zq>{n0.div_p(dv), n1.div_p(dv)};
}

bool GrLattice::contains_vector(const std::vector<Zq>& v, int vscale) const {
  // p^{-vscale} v in p^{-scale} span(B)  <=>  p^{scale - vscale} v in span(B)
  int shift = scale_ - vscale;
  std::vector<Zq> w = v;
  if (shift < 0) {
    // need to divide v by p^{-shift}: check divisibility
    for (auto& x : w) {
      if (x.val() < -shift) return false;
      x = x.div_p(-shift);
    }
  } else if (shift > 0) {
    for (auto& x : w) x = x.times_p(shift);
  }
  return coords_of(w).has_value();
}

bool GrLattice::contains(const GrLattice& other) const {
  for (size_t j = 0; j < 2; ++j) {
    std::vector<Zq> col = other.basis().col(j);
    if (!contains_vector(col, other.scale())) return false;
  }
  return true;
}

bool GrLattice::operator==(const GrLattice& other) const {
  return contains(other) && other.contains(*this);
}

int GrLattice::quotient_length(const GrLattice& other) const {
  if (!contains(other)) throw DomainError("GrLattice: quotient of non-sublattice");
  return other.det_val() - det_val();
}

GrLattice GrLattice::sum(const GrLattice& other) const {
  // bring both to a common scale and column-reduce the 2x4
  int s = std::max(scale_, other.scale_);
  auto lift = [&](const GrLattice& L) {
    Mat<Zq> B = L.B_;
    int k = s - L.scale_;
    if (k)
      for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) B.at(i, j) = B.at(i, j).times_p(k);
    return B;
  };
  Mat<Zq> A = lift(*this), B = lift(other);
  // Hermite of the 2x4 [A | B]
  std::vector<std::vector<Zq>> cols;
  for (size_t j = 0; j < 2; ++j) cols.push_back({A.at(0, j), A.at(1, j)});
  for (size_t j = 0; j < 2; ++j) cols.push_back({B.at(0, j), B.at(1, j)});
  // pivot on the bottom row
  size_t piv = 0;
  int best = INT32_MAX;
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j][1].is_zero()) continue;
    if (cols[j][1].val() < best) {
      best = cols[j][1].val();
      piv = j;
    }
  }
  if (best == INT32_MAX) throw DomainError("GrLattice: degenerate sum");
  std::swap(cols[piv], cols[3]);
  Zq pu = cols[3][1].div_p(best);
  Zq pui = pu.inv();
  for (size_t j = 0; j < 3; ++j) {
    if (cols[j][1].is_zero()) continue;
    if (cols[j][1].val() < best) throw DomainError("GrLattice: pivot order broken");
    Zq f = cols[j][1].div_p(best) * pui;
    cols[j][0] = cols[j][0] - f * cols[3][0];
    cols[j][1] = Zq::zero(R_);
  }
  // top-row pivot among the first three
  size_t piv2 = 0;
  best = INT32_MAX;
  for (size_t j = 0; j < 3; ++j) {
    if (cols[j][0].is_zero()) continue;
    if (cols[j][0].val() < best) {
      best = cols[j][0].val();
      piv2 = j;
    }
  }
  if (best == INT32_MAX) throw DomainError("GrLattice: degenerate sum");
  return GrLattice::from_cols(cols[piv2], cols[3], s).canonical();
}

std::string GrLattice::str() const {
  std::string sc = scale_ ? (" * p^-" + std::to_string(scale_)) : "";
  return "[[" + B_.at(0, 0).str() + "," + B_.at(0, 1).str() + "],[" + B_.at(1, 0).str() + "," +
         B_.at(1, 1).str() + "]]" + sc;
}

}  // namespace d2
