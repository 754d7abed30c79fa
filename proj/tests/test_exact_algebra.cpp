#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld2/chartring.hpp"
#include "drinfeld2/conway.hpp"
#include "drinfeld2/snf.hpp"
#include "drinfeld2/zq.hpp"

using namespace d2;

namespace {

bool poly_is_irreducible(int64_t p, const std::vector<int64_t>& f) {
  // f irreducible over F_p iff x^{p^n} = x mod f and gcd(x^{p^{n/q}} - x, f) = 1
  int n = static_cast<int>(f.size()) - 1;
  auto k = FqCtx::get(p, n);
  // x as an element of F_p[t]/(f) is the generator when f is the table entry;
  // here we only sanity-check the shipped modulus by testing that the
  // generator has multiplicative order p^n - 1 (primitivity), which implies
  // irreducibility of the modulus.
  (void)f;
  Fq g = Fq::gen(k);
  int64_t order = k->q() - 1;
  if (!(g.pow(order) == Fq::one(k))) return false;
  for (int64_t q = 2; q * q <= order; ++q) {
    if (order % q) continue;
    if (g.pow(order / q) == Fq::one(k)) return false;
    while (order % q == 0) order /= q;
  }
  int64_t rest = order;
  order = k->q() - 1;
  if (rest > 1 && g.pow(order / rest) == Fq::one(k)) return false;
  return true;
}

}  // namespace

TEST_CASE("modulus table: primitive and norm-compatible") {
  for (int64_t p : {2, 3, 5}) {
    for (int n = 1; n <= kConwayMaxDegree; ++n) {
      const auto& f = conway_poly(p, n);
      CHECK(static_cast<int>(f.size()) == n + 1);
      CHECK(f.back() == 1);
      CHECK(poly_is_irreducible(p, f));
    }
    // compatibility: the embedding image is a root of the small modulus
    for (auto [s, u] : std::vector<std::pair<int, int>>{{1, 2}, {2, 4}, {2, 6}, {3, 6}, {2, 8}}) {
      auto ks = FqCtx::get(p, s);
      auto ku = FqCtx::get(p, u);
      FqEmbed emb(ks, ku);
      Fq img = emb(Fq::gen(ks));
      // evaluate the degree-s modulus at the image
      Fq acc = Fq::zero(ku);
      Fq pw = Fq::one(ku);
      for (int64_t c : conway_poly(p, s)) {
        acc = acc + pw * Fq::from_int(ku, c);
        pw = pw * img;
      }
      CHECK(acc.is_zero());
      // embeddings are ring maps
      Fq a = Fq::gen(ks).pow(3) + Fq::one(ks);
      Fq b = Fq::gen(ks).pow(5);
      CHECK(emb(a * b) == emb(a) * emb(b));
      CHECK(emb(a + b) == emb(a) + emb(b));
    }
    // tower composition F_{p} -> F_{p^2} -> F_{p^4} equals the direct embedding
    {
      auto k1 = FqCtx::get(p, 1), k2 = FqCtx::get(p, 2), k4 = FqCtx::get(p, 4);
      FqEmbed e12(k1, k2), e24(k2, k4), e14(k1, k4);
      Fq a = Fq::from_int(k1, p - 1);
      CHECK(e24(e12(a)) == e14(a));
    }
  }
}

TEST_CASE("finite field arithmetic") {
  auto k = FqCtx::get(3, 2);
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Fq a = random_fq(k, rng);
    if (!a.is_zero()) CHECK(a * a.inv() == Fq::one(k));
    CHECK(a.frob_pow(k->s) == a);                 // Frobenius has order s
    CHECK(a.frob().frob_inv() == a);
    CHECK(a.pow(k->q()) == a);
  }
}

TEST_CASE("galois ring structure") {
  Rng rng(11);
  for (auto [p, n, s] : std::vector<std::tuple<int64_t, int, int>>{{2, 4, 2}, {3, 4, 2}, {5, 3, 1}, {2, 5, 3}}) {
    auto R = ZqCtx::get(p, n, s);
    Zq one = Zq::one(R);
    for (int i = 0; i < 30; ++i) {
      Zq a = random_zq(R, rng), b = random_zq(R, rng);
      CHECK(a.sigma() * b.sigma() == (a * b).sigma());  // sigma is a ring hom
      CHECK(a.sigma() + b.sigma() == (a + b).sigma());
      CHECK(a.sigma().residue() == a.residue().frob());  // reduces to x -> x^p
      CHECK(a.sigma_pow(s) == a);                        // order s
      if (a.is_unit()) CHECK(a * a.inv() == one);
    }
    // Teichmueller is multiplicative and sigma([x]) = [x^p]
    auto k = R->residue_field();
    for (int i = 0; i < 20; ++i) {
      Fq x = random_fq(k, rng), y = random_fq(k, rng);
      CHECK(teichmueller(R, x) * teichmueller(R, y) == teichmueller(R, x * y));
      CHECK(teichmueller(R, x).sigma() == teichmueller(R, x.frob()));
      CHECK(teichmueller(R, x).residue() == x);
    }
  }
}

TEST_CASE("witt coordinates vs galois ring value") {
  Rng rng(13);
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 2}, {5, 1}}) {
    int m = 4;
    auto R = ZqCtx::get(p, m, s);
    auto k = R->residue_field();
    for (int i = 0; i < 40; ++i) {
      Zq a = random_zq(R, rng);
      auto coords = zq_to_witt_coords(a, m);
      CHECK(witt_coords_to_zq(R, coords) == a);  // bijective round trip
    }
  }
}

TEST_CASE("galois ring embeddings commute with sigma") {
  auto R2 = ZqCtx::get(2, 4, 2);
  auto R4 = ZqCtx::get(2, 4, 4);
  ZqEmbed emb(R2, R4);
  Rng rng(17);
  for (int i = 0; i < 25; ++i) {
    Zq a = random_zq(R2, rng), b = random_zq(R2, rng);
    CHECK(emb(a * b) == emb(a) * emb(b));
    CHECK(emb(a + b) == emb(a) + emb(b));
    CHECK(emb(a.sigma()) == emb(a).sigma());  // the Frobenius lift restricts
  }
}

TEST_CASE("snf examples and properties") {
  // identity 2x2 over Z/8
  auto R = ZqCtx::get(2, 3, 1);
  Mat<Zq> I = Mat<Zq>::identity(2, Zq::zero(R), Zq::one(R));
  SnfResult r = snf_solve(I);
  CHECK(r.divisor_exponents == std::vector<int>{0, 0});
  CHECK(r.kernel.cols() == 0);

  // diag(2, 4) over Z/8: divisors (2, 4), kernel {(4,0), (0,2)}
  Mat<Zq> D(2, 2, Zq::zero(R));
  D.at(0, 0) = Zq::from_int(R, 2);
  D.at(1, 1) = Zq::from_int(R, 4);
  SnfResult r2 = snf_solve(D);
  CHECK(r2.divisor_exponents == std::vector<int>{1, 2});
  REQUIRE(r2.kernel.cols() == 2);
  std::vector<std::vector<int64_t>> kvals;
  for (size_t j = 0; j < 2; ++j)
    kvals.push_back({r2.kernel.at(0, j).coeffs()[0], r2.kernel.at(1, j).coeffs()[0]});
  std::sort(kvals.begin(), kvals.end());
  CHECK(kvals == std::vector<std::vector<int64_t>>{{0, 2}, {4, 0}});

  // zero map over Z/4: divisors (0, 0) as zero entries, kernel is everything
  auto R4 = ZqCtx::get(2, 2, 1);
  Mat<Zq> Z(2, 2, Zq::zero(R4));
  SnfResult r3 = snf_solve(Z);
  CHECK(r3.divisor_exponents == std::vector<int>{2, 2});
  CHECK(r3.kernel.cols() == 2);

  // random 4x4 over Z/p^m: U M V = D exactly, U and V invertible, kernel kills M
  Rng rng(23);
  for (auto [p, m] : std::vector<std::pair<int64_t, int>>{{2, 4}, {3, 3}, {5, 2}}) {
    auto Rp = ZqCtx::get(p, m, 1);
    for (int it = 0; it < 25; ++it) {
      Mat<Zq> M(4, 4, Zq::zero(Rp));
      for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) M.at(i, j) = random_zq(Rp, rng);
      SnfResult rr = snf_solve(M);
      Mat<Zq> umv = rr.U.mul(M, Zq::zero(Rp)).mul(rr.V, Zq::zero(Rp));
      CHECK(umv == rr.D);
      // U and V are invertible over Z/p^m (unit determinant)
      auto det4 = [&](const Mat<Zq>& A) {
        auto det3 = [&](size_t r0, size_t r1, size_t r2, size_t c0, size_t c1, size_t c2) {
          return A.at(r0, c0) * (A.at(r1, c1) * A.at(r2, c2) - A.at(r1, c2) * A.at(r2, c1)) -
                 A.at(r0, c1) * (A.at(r1, c0) * A.at(r2, c2) - A.at(r1, c2) * A.at(r2, c0)) +
                 A.at(r0, c2) * (A.at(r1, c0) * A.at(r2, c1) - A.at(r1, c1) * A.at(r2, c0));
        };
        Zq d = A.at(0, 0) * det3(1, 2, 3, 1, 2, 3) - A.at(0, 1) * det3(1, 2, 3, 0, 2, 3) +
               A.at(0, 2) * det3(1, 2, 3, 0, 1, 3) - A.at(0, 3) * det3(1, 2, 3, 0, 1, 2);
        return d;
      };
      CHECK(det4(rr.U).is_unit());
      CHECK(det4(rr.V).is_unit());
      for (size_t j = 0; j < rr.kernel.cols(); ++j) {
        auto x = rr.kernel.col(j);
        auto y = M.apply(x, Zq::zero(Rp));
        bool zero = true;
        for (const auto& v : y) zero = zero && v.is_zero();
        CHECK(zero);
      }
      for (int t = 0; t + 1 < 4; ++t)
        CHECK(rr.divisor_exponents[static_cast<size_t>(t)] <= rr.divisor_exponents[static_cast<size_t>(t) + 1]);
    }
  }

  // kernel cardinality against brute force over Z/p^2, extents <= 3
  for (int64_t p : {2, 3}) {
    auto Rp = ZqCtx::get(p, 2, 1);
    Rng rng2(31);
    for (int it = 0; it < 10; ++it) {
      size_t rows = 2 + rng2.uniform(2), cols = 2 + rng2.uniform(2);
      Mat<Zq> M(rows, cols, Zq::zero(Rp));
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) M.at(i, j) = random_zq(Rp, rng2);
      // brute force
      int64_t pm = ipow(p, 2);
      int64_t total = 1;
      for (size_t j = 0; j < cols; ++j) total *= pm;
      int64_t brute = 0;
      for (int64_t idx = 0; idx < total; ++idx) {
        int64_t t = idx;
        std::vector<Zq> x;
        for (size_t j = 0; j < cols; ++j) {
          x.push_back(Zq::from_int(Rp, t % pm));
          t /= pm;
        }
        auto y = M.apply(x, Zq::zero(Rp));
        bool zero = true;
        for (const auto& v : y) zero = zero && v.is_zero();
        if (zero) ++brute;
      }
      // kernel size from the divisors: p^{sum a_i} * p^{m (cols - rank)}
      SnfResult rr = snf_solve(M);
      int64_t ksize = 1;
      size_t rank = std::min(rows, cols);
      for (size_t t = 0; t < rank; ++t) ksize *= ipow(p, rr.divisor_exponents[t]);
      for (size_t t = rank; t < cols; ++t) ksize *= pm;
      CHECK(brute == ksize);
    }
  }

  // determinism golden value: a fixed matrix always reduces identically
  {
    auto R8 = ZqCtx::get(2, 3, 1);
    Mat<Zq> M(2, 2, Zq::zero(R8));
    M.at(0, 0) = Zq::from_int(R8, 6);
    M.at(0, 1) = Zq::from_int(R8, 4);
    M.at(1, 0) = Zq::from_int(R8, 2);
    M.at(1, 1) = Zq::from_int(R8, 3);
    SnfResult rr = snf_solve(M);
    // det = 10 = 2 mod 8: elementary divisors 1, 2
    CHECK(rr.divisor_exponents == std::vector<int>{0, 1});
    CHECK(rr.D.at(0, 0).coeffs()[0] == 1);
    CHECK(rr.D.at(1, 1).coeffs()[0] == 2);
  }

  // mixed precision rejected
  {
    auto Ra = ZqCtx::get(2, 3, 1);
    auto Rb = ZqCtx::get(2, 2, 1);
    Mat<Zq> M(1, 2, Zq::zero(Ra));
    M.at(0, 1) = Zq::zero(Rb);
    CHECK_THROWS_AS(snf_solve(M), DomainError);
  }
}

TEST_CASE("localized ring normal form") {
  auto k = FqCtx::get(3, 1);
  auto R = LocCtx::vertex_chart(k, 'X');  // denominator 1 - X^2
  Loc X = Loc::x(R);
  Loc one = Loc::one(R);
  Loc g = one - X * X;

  // fractions normalize: (X - X^3)/g = X
  Loc f(R, (FqPoly::x(k) - FqPoly::monomial(Fq::one(k), 3)), 1);
  CHECK(f == X);
  // equality iff cross multiplication agrees
  Loc a(R, FqPoly::x(k), 1);
  Loc b(R, FqPoly::x(k) * (FqPoly::constant(Fq::one(k)) - FqPoly::monomial(Fq::one(k), 2)), 2);
  CHECK(a == b);
  CHECK(a != X);
  // units and inverses
  CHECK(g.is_unit());
  CHECK(g * g.inv() == one);
  CHECK(!X.is_unit());
  Loc u = one - X;  // a factor of the denominator
  CHECK(u.is_unit());
  CHECK(u * u.inv() == one);

  // specialization X -> 0 on 1 + X gives 1
  SpecializeVar at0{Fq::zero(k)};
  CHECK(ring_hom_apply(at0, one + X) == Fq::one(k));
  // excluded locus: p = 3, lambda^2 = 1 makes the denominator vanish
  SpecializeVar at1{Fq::from_int(k, 1)};
  CHECK_THROWS_AS(ring_hom_apply(at1, one + X), DomainError);
  SpecializeVar at2{Fq::from_int(k, 2)};
  CHECK_THROWS_AS(ring_hom_apply(at2, X), DomainError);

  // hom laws on a specialization that is allowed
  auto k9 = FqCtx::get(3, 2);
  auto R9 = LocCtx::vertex_chart(k9, 'X');
  Fq lam = Fq::gen(k9);  // not in F_3, denominator is a unit there
  SpecializeVar at{lam};
  Loc x9 = Loc::x(R9);
  Loc h = (Loc::one(R9) + x9) * (Loc::one(R9) - x9 * x9).inv();
  Loc h2 = x9 * x9 + x9;
  CHECK(ring_hom_apply(at, h * h2) == ring_hom_apply(at, h) * ring_hom_apply(at, h2));
  CHECK(ring_hom_apply(at, h + h2) == ring_hom_apply(at, h) + ring_hom_apply(at, h2));
}

TEST_CASE("footnote bijection exhaustively over F_2") {
  // all pairs (f1, f2) of degree <= 3 with matching constant term
  auto k = FqCtx::get(2, 1);
  auto all = fq_elements(k);
  int count = 0;
  for (int64_t i1 = 0; i1 < 16; ++i1)
    for (int64_t i2 = 0; i2 < 16; ++i2) {
      std::vector<Fq> c1, c2;
      for (int b = 0; b < 4; ++b) c1.push_back(Fq::from_int(k, (i1 >> b) & 1));
      for (int b = 0; b < 4; ++b) c2.push_back(Fq::from_int(k, (i2 >> b) & 1));
      if (!(c1[0] == c2[0])) continue;
      FqPoly f1(k, c1), f2(k, c2);
      MixedPoly m = pair_to_mixed(f1, f2);
      auto [g1, g2] = mixed_to_pair(m);
      CHECK(g1 == f1);
      CHECK(g2 == f2);
      ++count;
    }
  CHECK(count == 128);
  (void)all;
}

TEST_CASE("fiber product ring and the footnote bijection") {
  auto k = FqCtx::get(2, 2);
  auto FC = FiberCtx::make(LocCtx::vertex_chart(k, 'X'), LocCtx::vertex_chart(k, 'Y'));
  Rng rng(41);
  for (int it = 0; it < 60; ++it) {
    std::vector<Fq> c1, c2;
    for (int i = 0; i < 4; ++i) c1.push_back(random_fq(k, rng));
    c2.push_back(c1[0]);
    for (int i = 1; i < 4; ++i) c2.push_back(random_fq(k, rng));
    FqPoly f1(k, c1), f2(k, c2);
    MixedPoly m = pair_to_mixed(f1, f2);
    auto [g1, g2] = mixed_to_pair(m);
    CHECK(g1 == f1);
    CHECK(g2 == f2);
    // no mixed terms: the mixed representation splits cleanly
    CHECK(m.xs.constant_term().is_zero());
    CHECK(m.ys.constant_term().is_zero());
  }
  // X + Y corresponds to the pair (X, Y)
  MixedPoly m{Fq::zero(k), FqPoly::x(k), FqPoly::x(k)};
  Fiber f = mixed_to_fiber(FC, m);
  CHECK(ring_hom_apply(FiberLegX{}, f) == Loc::x(FC->xr));
  CHECK(ring_hom_apply(FiberLegY{}, f) == Loc::x(FC->yr));
  // incompatible constants rejected
  CHECK_THROWS_AS(pair_to_mixed(FqPoly::constant(Fq::one(k)), FqPoly::x(k)), DomainError);
}
