#include "drinfeld2/lattice.hpp"

namespace d2 {

PLattice::PLattice(std::shared_ptr<const QpCtx> C, Mat<Qp> basis) : C_(std::move(C)), B_(std::move(basis)) {
  if (B_.rows() != 2 || B_.cols() != 2) throw DomainError("PLattice: 2x2 bases only");
}

PLattice PLattice::from_ints(std::shared_ptr<const QpCtx> C, int64_t a00, int64_t a01, int64_t a10,
                             int64_t a11, int e) {
  Mat<Qp> B(2, 2, Qp::zero(C));
  B.at(0, 0) = Qp::make(C, a00, e);
  B.at(0, 1) = Qp::make(C, a01, e);
  B.at(1, 0) = Qp::make(C, a10, e);
  B.at(1, 1) = Qp::make(C, a11, e);
  return PLattice(C, std::move(B));
}

int PLattice::det_val() const {
  Qp det = B_.at(0, 0) * B_.at(1, 1) - B_.at(0, 1) * B_.at(1, 0);
  if (det.is_zero()) throw DomainError("PLattice: singular basis");
  return det.val();
}

PLattice PLattice::canonical() const {
  det_val();  // reject singular input early
  Mat<Qp> B = B_;
  auto vof = [](const Qp& x) { return x.is_zero() ? INT32_MAX : x.val(); };

  // choose the column with minimal valuation in the bottom row as column 1
  int v0 = vof(B.at(1, 0)), v1 = vof(B.at(1, 1));
  if (v0 < v1) {
    std::swap(B.at(0, 0), B.at(0, 1));
    std::swap(B.at(1, 0), B.at(1, 1));
  }
  // eliminate the bottom entry of column 0
  if (!B.at(1, 0).is_zero()) {
    Qp f = B.at(1, 0).div(B.at(1, 1));
    Qp n00 = B.at(0, 0) - f * B.at(0, 1);
    B.at(0, 0) = n00;
    B.at(1, 0) = Qp::zero(C_);
  }
  if (B.at(0, 0).is_zero() || B.at(1, 1).is_zero()) throw DomainError("PLattice: singular basis");

  // normalize pivots to exact p-powers
  int a = B.at(0, 0).val();
  int c = B.at(1, 1).val();
  if (a + c >= C_->N)
    throw PrecisionError("PLattice: determinant valuation reaches the precision budget");
  Qp inv_u1 = B.at(1, 1).inv().times_p_pow(c);  // unit^-1 of the second pivot
  B.at(0, 1) = B.at(0, 1) * inv_u1;
  // scaling column 0 by its unit inverse only changes the top entry
  B.at(0, 0) = Qp::make(C_, 1, a);
  B.at(1, 1) = Qp::make(C_, 1, c);

  // reduce the top-right entry mod p^a (it may have negative valuation)
  Qp b = B.at(0, 1);
  Qp bred = Qp::zero(C_);
  if (!b.is_zero() && b.val() < a) {
    int k = a - b.val();
    int64_t digits = b.unit_mod(k);  // throws when the digits are missing
    if (digits != 0) bred = Qp::make(C_, digits, b.val());
  }
  B.at(0, 1) = bred;

  PLattice out(C_, std::move(B));
  out.canon_ = true;
  return out;
}

bool PLattice::same_lattice(const PLattice& o) const {
  PLattice a = canon_ ? *this : canonical();
  PLattice b = o.canon_ ? o : o.canonical();
  auto eq = [](const Qp& x, const Qp& y) {
    if (x.is_zero() && y.is_zero()) return true;
    if (x.is_zero() || y.is_zero()) return false;
    return x == y;
  };
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      if (!eq(a.B_.at(i, j), b.B_.at(i, j))) return false;
  return true;
}

std::string PLattice::str() const {
  return "[[" + B_.at(0, 0).str() + ", " + B_.at(0, 1).str() + "], [0-ish " + B_.at(1, 0).str() +
         ", " + B_.at(1, 1).str() + "]]";
}

TreeVertex::TreeVertex(const PLattice& L) : rep_(L.canonical()) {
  // scale so the lattice is in Z_p^2 but not p Z_p^2
  const Mat<Qp>& B = rep_.basis();
  int a = B.at(0, 0).val();
  int c = B.at(1, 1).val();
  const Qp& b = B.at(0, 1);
  int vb = b.is_zero() ? INT32_MAX : b.val();
  int s = std::min(std::min(a, c), vb);
  if (s != 0) {
    Mat<Qp> B2 = B;
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) B2.at(i, j) = B2.at(i, j).times_p_pow(-s);
    rep_ = PLattice(rep_.ctx(), std::move(B2));
    rep_ = rep_.canonical();
  }
  const Mat<Qp>& C = rep_.basis();
  key_ = {static_cast<int64_t>(C.at(0, 0).val()), static_cast<int64_t>(C.at(1, 1).val()),
          C.at(0, 1).is_zero() ? 0 : C.at(0, 1).residue_mod(C.at(0, 0).val())};
}

bool TreeVertex::operator==(const TreeVertex& o) const { return key_ == o.key_; }

bool TreeVertex::operator<(const TreeVertex& o) const { return key_ < o.key_; }

TreeVertex TreeVertex::standard(std::shared_ptr<const QpCtx> C) {
  return TreeVertex(PLattice::from_ints(std::move(C), 1, 0, 0, 1));
}

std::string TreeVertex::str() const {
  return "[p^" + std::to_string(key_[0]) + ", b=" + std::to_string(key_[2]) + "; 0, p^" +
         std::to_string(key_[1]) + "]";
}

}  // namespace d2
