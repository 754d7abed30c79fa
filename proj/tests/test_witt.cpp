#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld2/witt.hpp"

using namespace d2;

TEST_CASE("frozen ghost-oracle values") {
  // [1] + [1] = (0, 1) in W_2(F_2): computed once with the integer ghost
  // oracle (1 + 1 = 2 has ghost (2, 2), Witt coordinates (2, -1) -> (0, 1))
  auto k = FqCtx::get(2, 1);
  WittVec<Fq> one = WittVec<Fq>::teich(Fq::one(k), 2);
  WittVec<Fq> s = one + one;
  CHECK(s.coord(0).is_zero());
  CHECK(s.coord(1) == Fq::one(k));
}

TEST_CASE("teichmueller is multiplicative") {
  auto k = FqCtx::get(3, 2);  // F_9
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    Fq x = random_fq(k, rng), y = random_fq(k, rng);
    CHECK(WittVec<Fq>::teich(x, 3) * WittVec<Fq>::teich(y, 3) == WittVec<Fq>::teich(x * y, 3));
  }
}

TEST_CASE("additive identity and inverse") {
  auto k = FqCtx::get(5, 1);
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    std::vector<Fq> c;
    for (int j = 0; j < 4; ++j) c.push_back(random_fq(k, rng));
    WittVec<Fq> x(c);
    CHECK(x + WittVec<Fq>::zero(x.proto(), 4) == x);
    CHECK(x - x == WittVec<Fq>::zero(x.proto(), 4));
  }
}

TEST_CASE("frobenius and verschiebung identities") {
  auto k = FqCtx::get(5, 1);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    std::vector<Fq> c;
    for (int j = 0; j < 2; ++j) c.push_back(random_fq(k, rng));
    WittVec<Fq> w(c);  // length 2
    // F(V(w)) = p w  (V: W_2 -> W_3, F: W_3 -> W_2)
    CHECK(w.verschiebung().frobenius() == w.times_p());
  }
  // F([x]) = [x^p] over F_27
  auto k27 = FqCtx::get(3, 3);
  Rng rng2(9);
  for (int i = 0; i < 30; ++i) {
    Fq x = random_fq(k27, rng2);
    CHECK(WittVec<Fq>::teich(x, 3).frobenius() == WittVec<Fq>::teich(x.frob(), 2));
  }
  // V(x) y = V(x F(y))
  for (int i = 0; i < 40; ++i) {
    std::vector<Fq> a, b;
    for (int j = 0; j < 2; ++j) a.push_back(random_fq(k27, rng2));
    for (int j = 0; j < 3; ++j) b.push_back(random_fq(k27, rng2));
    WittVec<Fq> x(a), y(b);
    CHECK(x.verschiebung() * y == (x * y.frobenius()).verschiebung());
  }
}

TEST_CASE("length-preserving verschiebung") {
  auto k = FqCtx::get(2, 2);
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    std::vector<Fq> c;
    for (int j = 0; j < 4; ++j) c.push_back(random_fq(k, rng));
    WittVec<Fq> x(c);
    CHECK(x.verschiebung_trunc() == x.verschiebung().truncate(4));
    CHECK(x.verschiebung_trunc().length() == 4);
    // F(V_trunc(x)) = p x after truncation to the common length
    CHECK(x.verschiebung_trunc().frobenius() == x.times_p().truncate(3));
  }
}

TEST_CASE("ghost of verschiebung over torsion-free lifts") {
  auto k = FqCtx::get(3, 2);
  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    std::vector<Fq> c;
    for (int j = 0; j < 3; ++j) c.push_back(random_fq(k, rng));
    WittVec<Fq> w(c);
    auto gv = w.verschiebung().ghost_lift();
    auto g = w.ghost_lift();
    CHECK(gv[0].is_zero());
    for (size_t n = 1; n < gv.size(); ++n) CHECK(gv[n].sub(g[n - 1].times_p_pow(1)).is_zero());
  }
}

TEST_CASE("witt law integrality for p in {2,3,5}, m <= 5") {
  Rng rng(13);
  for (int64_t p : {2, 3, 5}) {
    for (int m = 2; m <= 5; ++m) {
      auto law = WittLaw::get(p, m);
      for (int it = 0; it < 10; ++it) {
        std::vector<BigInt> x, y;
        for (int i = 0; i < m; ++i) {
          x.emplace_back(static_cast<int64_t>(rng.uniform(4000)) - 2000);
          y.emplace_back(static_cast<int64_t>(rng.uniform(4000)) - 2000);
        }
        // construction aborts if any division is inexact
        auto s = law->add(x, y);
        auto q = law->mul(x, y);
        auto n = law->neg(x);
        auto gs = law->ghost(s), gq = law->ghost(q), gn = law->ghost(n);
        auto gx = law->ghost(x), gy = law->ghost(y);
        for (int i = 0; i < m; ++i) {
          CHECK(gs[static_cast<size_t>(i)] == gx[static_cast<size_t>(i)] + gy[static_cast<size_t>(i)]);
          CHECK(gq[static_cast<size_t>(i)] == gx[static_cast<size_t>(i)] * gy[static_cast<size_t>(i)]);
          CHECK(gn[static_cast<size_t>(i)] == -gx[static_cast<size_t>(i)]);
        }
      }
    }
  }
}

TEST_CASE("units invert") {
  auto k = FqCtx::get(2, 2);
  Rng rng(17);
  for (int i = 0; i < 25; ++i) {
    std::vector<Fq> c;
    c.push_back(Fq::one(k) + Fq::gen(k) * random_fq(k, rng));  // possibly non-unit w0
    for (int j = 1; j < 4; ++j) c.push_back(random_fq(k, rng));
    WittVec<Fq> x(c);
    if (!x.is_unit()) continue;
    CHECK(x * x.inv() == WittVec<Fq>::one(x.proto(), 4));
  }
}

TEST_CASE("exact length-m sigma over char-p rings") {
  // over perfect fields sigma agrees with the coordinatewise p-power
  auto k = FqCtx::get(3, 2);
  Rng rng(19);
  for (int i = 0; i < 40; ++i) {
    std::vector<Fq> c;
    for (int j = 0; j < 4; ++j) c.push_back(random_fq(k, rng));
    WittVec<Fq> x(c);
    CHECK(x.sigma() == x.frobenius_perfect());
  }
  // over a chart ring sigma is a ring endomorphism lifting x -> x^p
  auto R = LocCtx::vertex_chart(k, 'X');
  auto rand_loc = [&](Rng& r) {
    std::vector<Fq> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(random_fq(k, r));
    return Loc(R, FqPoly(k, cs), static_cast<int>(r.uniform(2)));
  };
  for (int i = 0; i < 15; ++i) {
    std::vector<Loc> a, b;
    for (int j = 0; j < 3; ++j) {
      a.push_back(rand_loc(rng));
      b.push_back(rand_loc(rng));
    }
    WittVec<Loc> x(a), y(b);
    CHECK(x.sigma() * y.sigma() == (x * y).sigma());
    CHECK(x.sigma() + y.sigma() == (x + y).sigma());
    // reduction: w0 of sigma(x) = (w0 of x)^p
    CHECK(x.sigma().w0() == x.w0().pow(3));
    // sigma truncates to the ghost-route Frobenius
    CHECK(x.sigma().truncate(2) == x.frobenius());
  }
}

TEST_CASE("witt engine agrees with the galois ring model") {
  // witt_coords_to_zq turns coordinatewise Witt arithmetic into ring
  // arithmetic in GR(p^m, s): a completely independent oracle for both sides
  Rng rng(23);
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 1}, {2, 2}, {3, 2}, {5, 1}}) {
    int m = 4;
    auto R = ZqCtx::get(p, m, s);
    auto k = R->residue_field();
    for (int i = 0; i < 25; ++i) {
      std::vector<Fq> a, b;
      for (int j = 0; j < m; ++j) {
        a.push_back(random_fq(k, rng));
        b.push_back(random_fq(k, rng));
      }
      WittVec<Fq> x(a), y(b);
      Zq zx = witt_coords_to_zq(R, x.coords());
      Zq zy = witt_coords_to_zq(R, y.coords());
      CHECK(witt_coords_to_zq(R, (x + y).coords()) == zx + zy);
      CHECK(witt_coords_to_zq(R, (x * y).coords()) == zx * zy);
      CHECK(witt_coords_to_zq(R, x.sigma().coords()) == zx.sigma());
      CHECK(witt_coords_to_zq(R, x.times_p().coords()) == zx.times_p(1));
    }
  }
}

TEST_CASE("mixed lengths and parameters rejected") {
  auto k = FqCtx::get(2, 1);
  WittVec<Fq> a = WittVec<Fq>::one(Fq::one(k), 3);
  WittVec<Fq> b = WittVec<Fq>::one(Fq::one(k), 2);
  CHECK_THROWS_AS(a + b, DomainError);
  CHECK_THROWS_AS(WittVec<Fq>(std::vector<Fq>{}), DomainError);
}

TEST_CASE("square-zero splitting") {
  auto k = FqCtx::get(2, 2);
  int m = 4;
  Dual eps = Dual::eps(k);
  // w = [eps]: ideal part (eps, 0, ..., 0), v = 0, fdot = 0
  WittVec<Dual> we = WittVec<Dual>::teich(eps, m);
  RelSplit s = rel_split(we);
  CHECK(s.a0 == eps);
  CHECK(s.v.is_zero());
  CHECK(rel_fdot(we).is_zero());
  // w = V(u) for u over the base field: a = 0, fdot(w) = u
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    std::vector<Dual> uc;
    for (int j = 0; j < m - 1; ++j) uc.push_back(Dual::from_base(random_fq(k, rng)));
    WittVec<Dual> u(uc);
    WittVec<Dual> w = u.verschiebung();
    RelSplit t = rel_split(w);
    CHECK(t.a0.is_zero());
    CHECK(rel_fdot(w) == u);
    CHECK(t.a_log + t.v == w);
  }
  // w = 0 -> (0, 0)
  RelSplit z = rel_split(WittVec<Dual>::zero(Dual::zero(k), m));
  CHECK(z.a0.is_zero());
  CHECK(z.v.is_zero());
  // additivity of the splitting
  for (int i = 0; i < 15; ++i) {
    auto rand_fil = [&](Rng& r) {
      std::vector<Dual> c;
      c.push_back(Dual(Fq::zero(k), random_fq(k, r)));
      for (int j = 1; j < m; ++j) c.push_back(Dual(random_fq(k, r), random_fq(k, r)));
      return WittVec<Dual>(c);
    };
    WittVec<Dual> w1 = rand_fil(rng), w2 = rand_fil(rng);
    RelSplit s1 = rel_split(w1), s2 = rel_split(w2), s12 = rel_split(w1 + w2);
    CHECK(s12.a0 == s1.a0 + s2.a0);
    CHECK(s12.v == s1.v + s2.v);
  }
  // elements not reducing to zero in the base are rejected
  CHECK_THROWS_AS(rel_split(WittVec<Dual>::one(Dual::zero(k), m)), DomainError);
}
