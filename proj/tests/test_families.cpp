#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld2/families.hpp"
#include "drinfeld2/hodgelift.hpp"
#include "drinfeld2/phi.hpp"
#include "drinfeld2/units.hpp"

using namespace d2;

TEST_CASE("family axioms and multipliers") {
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 2}, {5, 1}}) {
    auto k = FqCtx::get(p, s);
    int m = 3;
    Display<Loc> P0 = build_family(FamilyKind::P0, k, m);
    Display<Loc> P1 = build_family(FamilyKind::P1, k, m);
    CHECK(display_axioms_check(P0).ok());
    CHECK(display_axioms_check(P1).ok());
    auto [a01, a10] = P0.lie_multipliers();
    Loc X = Loc::x(P0.proto().ctx());
    CHECK(a01 == X - X.pow(static_cast<int>(p)));
    CHECK(a10.is_zero());
    auto [b01, b10] = P1.lie_multipliers();
    Loc Y = Loc::x(P1.proto().ctx());
    CHECK(b01.is_zero());
    CHECK(b10 == Y - Y.pow(static_cast<int>(p)));
  }
}

TEST_CASE("structural matrices invertible for m <= 4") {
  auto k = FqCtx::get(3, 2);
  for (int m = 2; m <= 4; ++m) {
    for (auto kind : {FamilyKind::P0, FamilyKind::P1}) {
      Display<Loc> D = build_family(kind, k, m);
      CHECK(mat_det2(D.phi[0]).is_unit());
      CHECK(mat_det2(D.phi[1]).is_unit());
    }
    GluedDisplay G = ferrand_glue(k, m);
    CHECK(mat_det2(G.glued.phi[0]).is_unit());
    CHECK(mat_det2(G.glued.phi[1]).is_unit());
  }
}

TEST_CASE("axioms checker reports violations") {
  auto k = FqCtx::get(2, 2);
  Display<Loc> D = build_family(FamilyKind::P0, k, 3);
  D.phi[0].at(0, 0) = WittVec<Loc>::zero(D.proto(), 3);
  D.phi[0].at(1, 0) = WittVec<Loc>::zero(D.proto(), 3);
  DisplayCheckReport rep = display_axioms_check(D);
  CHECK(!rep.ok());
  bool found = false;
  for (const auto& f : rep.failures) found |= f.find("does not generate") != std::string::npos;
  CHECK(found);
}

TEST_CASE("common fiber at the origin and fiberwise agreement") {
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 2}}) {
    auto k = FqCtx::get(p, s);
    auto R = ZqCtx::get(p, 6, s);
    int m = 3;
    Display<Loc> P0 = build_family(FamilyKind::P0, k, m);
    Display<Loc> P1 = build_family(FamilyKind::P1, k, m);
    SpecializedFiber f0 = specialize_fiber(P0, Fq::zero(k), R);
    SpecializedFiber f1 = specialize_fiber(P1, Fq::zero(k), R);
    CHECK(equal_framed(f0.module, f1.module));
    CHECK(equal_framed(f0.module, standard_module(R)));

    for (const auto& pt : enumerate_points(k)) {
      const bool xside = pt.a2.is_zero();
      SpecializedFiber f =
          xside ? specialize_fiber(P0, pt.a1, R) : specialize_fiber(P1, pt.a2, R);
      SpecialDieudonne M = phi_inverse(pt, R);
      CHECK(equal_framed(f.module, M));
      CHECK(critical_indices(f.module) == pt.expected_critical());
      CHECK(height_and_nilpotence(f.module, m).v_nilpotent);
    }
  }
}

TEST_CASE("specialization on the excluded locus is rejected") {
  auto k = FqCtx::get(3, 1);
  auto R = ZqCtx::get(3, 6, 1);
  Display<Loc> P0 = build_family(FamilyKind::P0, k, 3);
  CHECK_THROWS_AS(specialize_fiber(P0, Fq::from_int(k, 1), R), DomainError);
  CHECK_THROWS_AS(specialize_fiber(P0, Fq::from_int(k, 2), R), DomainError);
}

TEST_CASE("ferrand gluing") {
  auto k = FqCtx::get(2, 2);
  auto R = ZqCtx::get(2, 6, 2);
  int m = 3;
  GluedDisplay G = ferrand_glue(k, m);
  CHECK(display_axioms_check(G.glued).ok());

  // restrictions recover the two families over the punctured charts
  CHECK(display_equal(restrict_to_x_chart(G), base_change_punctured(G.px)));
  CHECK(display_equal(restrict_to_y_chart(G), base_change_punctured(G.py)));

  // glued multipliers in diagram order: (Y - Y^p, X - X^p)
  auto [m01, m10] = G.glued.lie_multipliers();
  auto FC = G.glued.proto().ctx();
  Fiber X = Fiber::x(FC), Y = Fiber::y(FC);
  CHECK(m01 == X - X.pow(2));
  CHECK(m10 == Y - Y.pow(2));

  // glued fibers match the inverse algorithm over every chart point
  for (const auto& pt : enumerate_points(k)) {
    SpecializedFiber f = specialize_glued(G.glued, pt.a1, pt.a2, R);
    CHECK(equal_framed(f.module, phi_inverse(pt, R)));
  }

  // an element of the glued module is determined by its restrictions, and
  // compatible pairs arise: encode a random compatible pair and restrict
  Rng rng(31);
  for (int it = 0; it < 25; ++it) {
    std::vector<Fiber> coeffs;
    for (int i = 0; i < m; ++i) {
      std::vector<Fq> cx = {random_fq(k, rng), random_fq(k, rng)};
      std::vector<Fq> cy = {cx[0], random_fq(k, rng)};  // matching constants
      coeffs.emplace_back(FC, Loc(FC->xr, FqPoly(k, cx)), Loc(FC->yr, FqPoly(k, cy)));
    }
    WittVec<Fiber> a(coeffs);
    auto elem = G.glued.basis[0].at(0, 0) * a + G.glued.basis[0].at(0, 1);
    // legs agree over W(k) (constant terms match in every coordinate)
    for (const auto& c : elem.coords())
      CHECK(c.xleg().constant_term() == c.yleg().constant_term());
  }
}

TEST_CASE("u-unit expansion") {
  for (int64_t p : {2, 3, 5}) {
    MPolyZ u = u_unit(2, p, 3);
    CHECK(u.reduce_mod_p() == denominator_product(2, p, 1));
    // the lambda = 0 factor contributes 1
    CHECK(u_unit_factor(2, p, 3, 0, {0}) == MPolyZ::constant(p, 3, 2, 1));
  }
  // d = 3 sanity: the product is a unit mod the chart ideal at the origin
  MPolyZ u3 = u_unit(3, 2, 2);
  std::vector<int> zero(3, 0);
  CHECK(u3.terms.count(zero) == 1);
  CHECK(u3.terms.at(zero) % 2 == 1);
}

TEST_CASE("hodge lift data") {
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 1}}) {
    // n = 1: X Y = p = 0
    HodgeLiftData h1 = hodge_lift_data(p, s, 1);
    CHECK(h1.X * h1.Y == h1.P);
    AXY samp = AXY::constant(h1.R, Zq::one(h1.R)) + AXY::x(h1.R) + AXY::y(h1.R) * AXY::y(h1.R);
    CHECK(h1.composite_is_p(samp));
    CHECK((h1.P * samp).is_zero());
    // n = 2: (.X) o (.Y) = .p != 0
    HodgeLiftData h2 = hodge_lift_data(p, s, 2);
    AXY samp2 = AXY::constant(h2.R, Zq::one(h2.R)) + AXY::x(h2.R);
    CHECK(h2.composite_is_p(samp2));
    CHECK(!(h2.P * samp2).is_zero());
    // reduction mod p lands in the special fiber ring, X |-> (X, 0)
    auto k = FqCtx::get(p, s);
    auto FC = FiberCtx::make(LocCtx::vertex_chart(k, 'X'), LocCtx::vertex_chart(k, 'Y'));
    CHECK(h2.X.reduce_mod_p(FC) == Fiber::x(FC));
    CHECK(h2.Y.reduce_mod_p(FC) == Fiber::y(FC));
    CHECK(h2.P.reduce_mod_p(FC).is_zero());
    // X^i Y^j rewriting: X^2 Y = p X
    AXY t = (h2.X * h2.X) * h2.Y;
    CHECK(t == h2.P * h2.X);
  }
}

TEST_CASE("u-unit localization agrees with the denominator product mod XY") {
  // in the glued special fiber the image of u equals the image of
  // (1 - X^{p-1})(1 - Y^{p-1}): mixed terms die along X Y = 0
  auto k = FqCtx::get(3, 1);
  auto FC = FiberCtx::make(LocCtx::vertex_chart(k, 'X'), LocCtx::vertex_chart(k, 'Y'));
  MPolyZ u = u_unit(2, 3, 1);
  // evaluate u with X = (X, 0), Y = (0, Y) in the fiber ring
  Fiber acc = Fiber::zero(FC);
  for (const auto& [e, c] : u.terms) {
    Fiber term = Fiber::from_fq(FC, Fq::from_int(k, c));
    for (int i = 0; i < e[0]; ++i) term = term * Fiber::x(FC);
    for (int i = 0; i < e[1]; ++i) term = term * Fiber::y(FC);
    acc = acc + term;
  }
  Fiber X = Fiber::x(FC), Y = Fiber::y(FC), one = Fiber::one(FC);
  Fiber prod = (one - X * X) * (one - Y * Y);
  CHECK(acc == prod);
  CHECK(acc.is_unit());
}
