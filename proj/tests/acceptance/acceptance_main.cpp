// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <vector>

#include "drinfeld2/families.hpp"
#include "drinfeld2/hodgelift.hpp"
#include "drinfeld2/phi.hpp"
#include "drinfeld2/report.hpp"
#include "drinfeld2/tangent.hpp"
#include "drinfeld2/tree.hpp"
#include "drinfeld2/units.hpp"

using namespace d2;

namespace {

struct Crit {
  int id;
  std::string what;
  std::function<bool()> fn;
};

bool check(bool cond, const char* msg) {
  if (!cond) std::cerr << "    [detail] failed: " << msg << "\n";
  return cond;
}

#define REQ(cond) \
  do {            \
    if (!check((cond), #cond)) return false; \
  } while (0)

// ---------- criterion 1 ----------
bool witt_kernel() {
  Rng rng(1001);
  int total_triples = 0;
  for (int64_t p : {int64_t(2), int64_t(3), int64_t(5)}) {
    for (int m = 2; m <= 4; ++m) {
      auto k = FqCtx::get(p, 2);
      auto sample = [&](Rng& r) { return random_fq(k, r); };
      int triples = 10000 / (3 * 3) + 1;  // spread over (p, m), >= 10^4 in total
      for (int it = 0; it < triples; ++it) {
        std::vector<Fq> xc, yc, zc;
        for (int i = 0; i < m; ++i) {
          xc.push_back(sample(rng));
          yc.push_back(sample(rng));
          zc.push_back(sample(rng));
        }
        WittVec<Fq> x(xc), y(yc), z(zc);
        REQ((x + y) == (y + x));
        REQ(((x + y) + z) == (x + (y + z)));
        REQ((x * y) == (y * x));
        REQ(((x * y) * z) == (x * (y * z)));
        REQ((x * (y + z)) == (x * y + x * z));
        REQ((x + (-x)).is_zero());
        ++total_triples;
      }
      // identities at this (p, m)
      for (int it = 0; it < 50; ++it) {
        std::vector<Fq> c;
        for (int i = 0; i + 1 < m; ++i) c.push_back(sample(rng));
        WittVec<Fq> w(c);  // length m - 1
        REQ(w.verschiebung().frobenius() == w.times_p());
        Fq a = sample(rng);
        REQ(WittVec<Fq>::teich(a, m).frobenius() == WittVec<Fq>::teich(a.frob(), m - 1));
        std::vector<Fq> d;
        for (int i = 0; i < m; ++i) d.push_back(sample(rng));
        WittVec<Fq> y2(d);
        REQ(w.verschiebung() * y2 == (w * y2.frobenius()).verschiebung());
      }
      // ghost homomorphism property over the integer lift
      auto law = WittLaw::get(p, m);
      for (int it = 0; it < 1112; ++it) {
        std::vector<BigInt> x, y;
        for (int i = 0; i < m; ++i) {
          x.emplace_back(static_cast<int64_t>(rng.uniform(2000)) - 1000);
          y.emplace_back(static_cast<int64_t>(rng.uniform(2000)) - 1000);
        }
        auto s = law->add(x, y), q = law->mul(x, y);
        auto gs = law->ghost(s), gq = law->ghost(q), gx = law->ghost(x), gy = law->ghost(y);
        for (int i = 0; i < m; ++i) {
          REQ(gs[static_cast<size_t>(i)] == gx[static_cast<size_t>(i)] + gy[static_cast<size_t>(i)]);
          REQ(gq[static_cast<size_t>(i)] == gx[static_cast<size_t>(i)] * gy[static_cast<size_t>(i)]);
        }
        ++total_triples;
      }
    }
  }
  std::cerr << "    [info] " << total_triples << " sampled triples\n";
  return total_triples >= 2 * 10000;  // >= 10^4 axiom triples and 10^4 law pairs
}

// ---------- criterion 2 ----------
bool fiber_coherence() {
  Rng rng(1002);
  auto k = FqCtx::get(3, 1);
  auto FC = FiberCtx::make(LocCtx::vertex_chart(k, 'X'), LocCtx::vertex_chart(k, 'Y'));
  const int m = 3;
  for (int it = 0; it < 1000; ++it) {
    // footnote bijection round trip
    std::vector<Fq> c1, c2;
    for (int i = 0; i < 4; ++i) c1.push_back(random_fq(k, rng));
    c2.push_back(c1[0]);
    for (int i = 1; i < 4; ++i) c2.push_back(random_fq(k, rng));
    FqPoly f1(k, c1), f2(k, c2);
    MixedPoly mx = pair_to_mixed(f1, f2);
    auto [g1, g2] = mixed_to_pair(mx);
    REQ(g1 == f1);
    REQ(g2 == f2);
    // the Witt functor is computed componentwise on compatible pairs
    auto rnd = [&](Rng& r) {
      std::vector<Fq> cx = {random_fq(k, r), random_fq(k, r)};
      std::vector<Fq> cy = {cx[0], random_fq(k, r)};
      return Fiber(FC, Loc(FC->xr, FqPoly(k, cx)), Loc(FC->yr, FqPoly(k, cy)));
    };
    std::vector<Fiber> xc, yc;
    for (int i = 0; i < m; ++i) {
      xc.push_back(rnd(rng));
      yc.push_back(rnd(rng));
    }
    WittVec<Fiber> x(xc), y(yc);
    WittVec<Fiber> s = x * y + x;
    auto leg = [&](const WittVec<Fiber>& w, bool xs) {
      std::vector<Loc> c;
      for (const auto& v : w.coords()) c.push_back(xs ? v.xleg() : v.yleg());
      return WittVec<Loc>(c);
    };
    for (bool side : {true, false})
      REQ(leg(x, side) * leg(y, side) + leg(x, side) == leg(s, side));
    for (const auto& v : s.coords())
      REQ(v.xleg().constant_term() == v.yleg().constant_term());
  }
  return true;
}

// ---------- criterion 3 ----------
bool tree_criterion() {
  for (int64_t p : {int64_t(2), int64_t(3)}) {
    auto C = QpCtx::get(p, 9);
    TreeVertex v = TreeVertex::standard(C);
    REQ(static_cast<int64_t>(tree_ball(v, 2).size()) == 1 + (p + 1) + (p + 1) * p);
  }
  Rng rng(1003);
  auto C = QpCtx::get(2, 9);
  int done = 0;
  while (done < 200) {
    int64_t a00 = 1 + static_cast<int64_t>(rng.uniform(9));
    int64_t a01 = static_cast<int64_t>(rng.uniform(9));
    int64_t a10 = 2 * static_cast<int64_t>(rng.uniform(5));
    int64_t a11 = 2 * (1 + static_cast<int64_t>(rng.uniform(5)));
    if (a00 * a11 - a01 * a10 == 0) continue;
    PLattice L = PLattice::from_ints(C, a00, a01, a10, a11);
    int64_t b = static_cast<int64_t>(rng.uniform(12)), c = static_cast<int64_t>(rng.uniform(12));
    Mat<Qp> G(2, 2, Qp::zero(C));
    G.at(0, 0) = Qp::from_int(C, 1);
    G.at(0, 1) = Qp::from_int(C, b);
    G.at(1, 0) = Qp::from_int(C, 2 * c);
    G.at(1, 1) = Qp::from_int(C, 1 + 2 * b * c);
    PLattice L2(C, L.basis().mul(G, Qp::zero(C)));
    REQ(L.canonical().same_lattice(L2.canonical()));
    ++done;
  }
  return true;
}

// ---------- criteria 4 and 5 ----------
bool phi_roundtrip() {
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    auto R = ZqCtx::get(p, 6, s);
    auto k = R->residue_field();
    auto C = QpCtx::get(p, 10);
    auto pts = enumerate_points(k);
    REQ(static_cast<int64_t>(pts.size()) == 2 * (k->q() - p) + 1);
    for (const auto& pt : pts) {
      SpecialDieudonne M = phi_inverse(pt, R);
      REQ(check_special(M).ok());
      REQ(critical_indices(M) == pt.expected_critical());
      HeightReport h = height_and_nilpotence(M, 3);
      REQ(h.height == reference_height());
      REQ(h.v_nilpotent);
      PhiForwardResult f = phi_forward(M, 6, C);
      REQ(f.point == pt);
    }
  }
  return true;
}

bool deligne_criterion() {
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 2}}) {
    auto R = ZqCtx::get(p, 6, s);
    auto k = R->residue_field();
    auto C = QpCtx::get(p, 10);
    for (const auto& pt : enumerate_points(k)) {
      PhiForwardResult f = phi_forward(phi_inverse(pt, R), 6, C);
      REQ(deligne_check(f.datum).ok);
    }
    DeligneDatum zero;
    zero.k = k;
    zero.has1 = true;
    zero.alpha1 = {Fq::zero(k), Fq::zero(k)};
    DeligneResult r = deligne_check(zero);
    REQ(!r.ok);
    REQ(!r.witness.empty());
  }
  return true;
}

// ---------- criterion 6 ----------
bool families_criterion() {
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 2}}) {
    auto k = FqCtx::get(p, s);
    auto R = ZqCtx::get(p, 6, s);
    const int m = 3;
    Display<Loc> P0 = build_family(FamilyKind::P0, k, m);
    Display<Loc> P1 = build_family(FamilyKind::P1, k, m);
    REQ(display_axioms_check(P0).ok());
    REQ(display_axioms_check(P1).ok());
    auto [a01, a10] = P0.lie_multipliers();
    Loc X = Loc::x(P0.proto().ctx());
    REQ(a01 == X - X.pow(static_cast<int>(p)));
    REQ(a10.is_zero());
    auto [b01, b10] = P1.lie_multipliers();
    Loc Y = Loc::x(P1.proto().ctx());
    REQ(b01.is_zero());
    REQ(b10 == Y - Y.pow(static_cast<int>(p)));
    GluedDisplay G = ferrand_glue(k, m);
    REQ(display_axioms_check(G.glued).ok());
    REQ(display_equal(restrict_to_x_chart(G), base_change_punctured(G.px)));
    REQ(display_equal(restrict_to_y_chart(G), base_change_punctured(G.py)));
    for (const auto& pt : enumerate_points(k)) {
      SpecialDieudonne M = phi_inverse(pt, R);
      const bool xside = pt.a2.is_zero();
      SpecializedFiber f = xside ? specialize_fiber(P0, pt.a1, R)
                                 : specialize_fiber(P1, pt.a2, R);
      REQ(equal_framed(f.module, M));
      SpecializedFiber g = specialize_glued(G.glued, pt.a1, pt.a2, R);
      REQ(equal_framed(g.module, M));
    }
  }
  return true;
}

// ---------- criterion 7 ----------
bool u_unit_criterion() {
  for (int64_t p : {int64_t(2), int64_t(3), int64_t(5)}) {
    MPolyZ u = u_unit(2, p, 3).reduce_mod_p();
    MPolyZ d = denominator_product(2, p, 1);
    REQ(u == d);
    // independent oracle: evaluate both sides on a grid over F_{p^2}
    auto k = FqCtx::get(p, 2);
    auto eval = [&](const MPolyZ& f, const Fq& x, const Fq& y) {
      Fq acc = Fq::zero(k);
      for (const auto& [e, c] : f.terms)
        acc = acc + Fq::from_int(k, c) * x.pow(e[0]) * y.pow(e[1]);
      return acc;
    };
    Fq one = Fq::one(k);
    for (const Fq& x : fq_elements(k))
      for (const Fq& y : fq_elements(k)) {
        Fq rhs = (one - x.pow(p - 1)) * (one - y.pow(p - 1));
        REQ(eval(u, x, y) == rhs);
      }
  }
  return true;
}

// ---------- criterion 8 ----------
bool hodge_lift_criterion() {
  auto k = FqCtx::get(2, 2);
  HodgeLiftData h2 = hodge_lift_data(2, 2, 2);
  AXY samp = AXY::constant(h2.R, Zq::one(h2.R)) + AXY::x(h2.R) + AXY::y(h2.R);
  REQ(h2.composite_is_p(samp));
  REQ(!(h2.P * samp).is_zero());
  HodgeLiftData h1 = hodge_lift_data(2, 2, 1);
  AXY samp1 = AXY::constant(h1.R, Zq::one(h1.R)) + AXY::x(h1.R);
  REQ(h1.composite_is_p(samp1));
  REQ((h1.P * AXY::x(h1.R)).is_zero());
  // reduction reproduces the special-fiber diagram: X |-> (X | 0), Y |-> (0 | Y),
  // whose variable transformation gives the glued Lie multipliers
  GluedDisplay G = ferrand_glue(k, 3);
  auto FC = G.glued.proto().ctx();
  REQ(h2.X.reduce_mod_p(FC) == Fiber::x(FC));
  REQ(h2.Y.reduce_mod_p(FC) == Fiber::y(FC));
  auto [m01, m10] = G.glued.lie_multipliers();
  Fiber X = Fiber::x(FC), Y = Fiber::y(FC);
  REQ(m01 == X - X.pow(2));
  REQ(m10 == Y - Y.pow(2));
  return true;
}

// ---------- criterion 9 ----------
bool tangent_criterion() {
  Rng rng(1009);
  for (auto [p, s] : std::vector<std::pair<int64_t, int>>{{2, 2}, {3, 2}}) {
    auto k = FqCtx::get(p, s);
    auto R = ZqCtx::get(p, 6, s);
    const int m = 3;
    GluedDisplay G = ferrand_glue(k, m);
    for (const auto& pt : enumerate_points(k)) {
      SpecialDieudonne x = phi_inverse(pt, R);
      TangentDSpace T = tangent_space_D(x);
      int expect = pt.expected_critical().size() == 2 ? 2 : 1;
      REQ(T.dim == expect);
      auto omega = tangent_omega_basis(pt);
      REQ(static_cast<int>(omega.size()) == expect);
      std::vector<TangentD> img;
      for (const auto& dir : omega) img.push_back(d_upsilon(G, pt, dir));
      if (img.size() == 1) {
        REQ(!img[0].u0.is_zero() || !img[0].u1.is_zero());
      } else {
        REQ(!(img[0].u0 * img[1].u1 - img[0].u1 * img[1].u0).is_zero());
      }
    }
    // 20 random (zeta, rho) with zeta not F_p-rational
    auto elems = fq_elements(k);
    int done = 0;
    while (done < 20) {
      Fq zeta = elems[rng.uniform(elems.size())];
      if (zeta.in_prime_field()) continue;
      Fq rho = random_fq(k, rng);
      StructuralDeformation sd = alpha_computation(zeta, rho, m);
      REQ(sd.alpha_matches);
      ChartPoint pt{k, zeta, Fq::zero(k)};
      TangentD via = d_upsilon(G, pt, TangentOmega{-rho, Fq::zero(k)});
      REQ(via == sd.u);
      ++done;
    }
  }
  return true;
}

// ---------- criterion 10 ----------
bool end_to_end() {
  std::string cmd = std::string(DRINFELD2_CLI_PATH) + " all --p 2 --s 2 --m 3 > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQ(WEXITSTATUS(rc) == 0);
  return true;
}

}  // namespace

int main() {
  std::vector<Crit> crits = {
      {1, "Witt kernel: ring axioms, ghost homomorphism, F/V identities (p in {2,3,5}, m <= 4)",
       witt_kernel},
      {2, "fiber-product coherence: Witt functor on 10^3 compatible pairs, footnote bijection",
       fiber_coherence},
      {3, "tree: radius-2 ball counts (p = 2, 3), 200 random rebasings", tree_criterion},
      {4, "point bijection round trip over (2,1), (2,2), (3,1), (3,2); height-0 validation",
       phi_roundtrip},
      {5, "condition (Deligne) on all forward images; corrupted datum rejected",
       deligne_criterion},
      {6, "families: axioms, Lie multipliers, gluing restrictions, fibers = inverse algorithm",
       families_criterion},
      {7, "u-unit reduces to prod (1 - X_i^{p-1}) mod p for p in {2,3,5}", u_unit_criterion},
      {8, "Hodge lift data: (.X)o(.Y) = .p at n = 2; mod-p reduction matches the fiber",
       hodge_lift_criterion},
      {9, "tangent suite: dimension dichotomy, d-Upsilon injective, alpha(b3) = eps rho b1",
       tangent_criterion},
      {10, "end to end: cli all --p 2 --s 2 --m 3 exits 0", end_to_end},
  };

  int failed = 0;
  for (const auto& c : crits) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      std::cerr << "    [detail] exception: " << e.what() << "\n";
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.id, c.what.c_str(),
                secs);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  if (failed) {
    std::printf("%d criterion(s) FAILED\n", failed);
    return 1;
  }
  std::printf("all 10 acceptance criteria passed\n");
  return 0;
}
