// SPDX-License-Identifier: MIT
//
// tests/unit/test_cocycle.cpp
//

#include "random_gen.hpp"
#include "weil/cocycle.hpp"

#include <doctest.h>

#include <random>

using namespace weil;

namespace
{

Poly um(int i, int k) { return Poly(Var::um(i, k)); }
Poly up(int i, int k) { return Poly(Var::up(i, k)); }

ExtIndex xp(int a, int b) { return {ExtIndex::XiPrime, a, b}; }
ExtIndex xpp(int a, int b) { return {ExtIndex::XiDoublePrime, a, b}; }

std::vector<DualPairCase> closed_cases()
{
   return {DualPairCase::make_a(2, 1, 1, 1), DualPairCase::make_a(2, 2, 1, 1), DualPairCase::make_b(2, 1),
           DualPairCase::make_c(3, 1)};
}

std::vector<DualPairCase> sweep_cases()
{
   return {DualPairCase::make_a(1, 1, 1, 0), DualPairCase::make_a(1, 1, 1, 1), DualPairCase::make_a(2, 1, 1, 0),
           DualPairCase::make_a(2, 1, 1, 1), DualPairCase::make_a(2, 2, 1, 1), DualPairCase::make_a(3, 1, 2, 1),
           DualPairCase::make_b(1, 1),       DualPairCase::make_b(2, 1),       DualPairCase::make_b(2, 2),
           DualPairCase::make_c(2, 1),       DualPairCase::make_c(3, 1),       DualPairCase::make_c(3, 2)};
}

ExtKey fiber_key(DualPairCase const& c, ExtIndex::Kind kind)
{
   ExtKey k;
   for (auto const& [a, b] : c.index_set())
      k.push_back({kind, a, b});
   return k;
}

} // namespace

TEST_SUITE("cocycle")
{
   TEST_CASE("special harmonic examples")
   {
      CHECK(special_harmonic(DualPairCase::make_a(2, 2, 1, 1)) == um(1, 1) * um(3, 2));
      CHECK(special_harmonic(DualPairCase::make_b(2, 1)) == um(1, 1) * um(1, 1));
      CHECK(special_harmonic(DualPairCase::make_c(2, 1)) == Poly(1));
      CHECK(special_harmonic(DualPairCase::make_c(3, 1)) == um(1, 1));
      CHECK(special_harmonic(DualPairCase::make_a(2, 1, 1, 1)) == um(3, 2));
      CHECK(special_harmonic(DualPairCase::make_b(2, 1), Side::Minus) == up(1, 1) * up(1, 1));
      // r = n = 2 in case B: the 2 x 2 minor to the first power.
      Poly m = um(1, 1) * um(2, 2) - um(1, 2) * um(2, 1);
      CHECK(special_harmonic(DualPairCase::make_b(2, 2)) == m);
   }

   TEST_CASE("top wedge examples")
   {
      auto a = top_wedge(DualPairCase::make_a(2, 2, 1, 1));
      REQUIRE(a.size() == 1);
      CHECK(a.begin()->first == ExtKey{xp(1, 3), xp(1, 4), xp(2, 3)});
      CHECK(a.begin()->second == GaussianRational(1));
      auto b = top_wedge(DualPairCase::make_b(2, 1));
      CHECK(b.begin()->first == ExtKey{xp(1, 1), xp(1, 2)});
      auto c = top_wedge(DualPairCase::make_c(3, 1));
      CHECK(c.begin()->first == ExtKey{xp(1, 2), xp(1, 3)});
      auto m = top_wedge(DualPairCase::make_c(3, 1), Side::Minus);
      CHECK(m.begin()->first == ExtKey{xpp(1, 2), xpp(1, 3)});
   }

   TEST_CASE("seed is a highest weight vector in both slots")
   {
      for (auto const& c : sweep_cases())
      {
         CAPTURE(c.label());
         auto const& lb = lie_basis(c);
         auto seed = seed_pair(c);
         for (std::size_t i = 0; i < lb.k.size(); ++i)
         {
            bool raising = false;
            for (auto const& r : lb.k_raising)
               raising = raising || r.label == lb.k[i].label;
            if (!raising)
               continue;
            CHECK(ad_ext(c, i, seed.top_ext, Side::Plus).empty());
         }
         CHECK(annihilated_by(c, seed.top_poly, Subalgebra::N, Sector::Minus).ok);
      }
   }

   TEST_CASE("one-dimensional module")
   {
      auto c = DualPairCase::make_a(1, 1, 1, 1);
      auto mod = generate_paired_module(seed_pair(c));
      REQUIRE(mod.eps.size() == 1);
      CHECK(mod.eps[0] == ExtVec{{ExtKey{xp(1, 2)}, GaussianRational(1)}});
      CHECK(mod.psi[0] == special_harmonic(c));
      // Oracle: every lowering operator kills both slots.
      auto const& lb = lie_basis(c);
      for (auto const& low : lb.k_lowering)
      {
         CHECK(apply(lie_action(c, low, Sector::Minus), mod.psi[0]).is_zero());
         for (std::size_t i = 0; i < lb.k.size(); ++i)
            if (lb.k[i].label == low.label)
               CHECK(ad_ext(c, i, mod.eps[0], Side::Plus).empty());
      }
   }

   TEST_CASE("module slot dimensions agree")
   {
      for (auto const& c : sweep_cases())
      {
         CAPTURE(c.label());
         for (Side s : {Side::Plus, Side::Minus})
         {
            auto mod = generate_paired_module(seed_pair(c, s));
            CHECK(mod.eps_rank == mod.psi_rank);
            CHECK(mod.eps_rank == static_cast<int>(mod.eps.size()));
         }
      }
      // Independent rank of the exterior slot for B(2,1).
      auto c = DualPairCase::make_b(2, 1);
      auto mod = generate_paired_module(seed_pair(c));
      std::map<ExtKey, std::size_t> rows;
      for (auto const& e : mod.eps)
         for (auto const& [k, v] : e)
            rows.emplace(k, rows.size());
      GMatrix m(rows.size(), std::vector<GaussianRational>(mod.eps.size()));
      for (std::size_t j = 0; j < mod.eps.size(); ++j)
         for (auto const& [k, v] : mod.eps[j])
            m[rows[k]][j] = v;
      CHECK(rank_exact(m) == mod.psi_rank);
   }

   TEST_CASE("module pairing is weight compatible")
   {
      for (auto const& c : sweep_cases())
      {
         CAPTURE(c.label());
         auto const& lb = lie_basis(c);
         auto mod = generate_paired_module(seed_pair(c));
         Rational shift = det_shift(c, Side::Plus);
         auto const& ad = ad_data(c);
         for (std::size_t j = 0; j < mod.eps.size(); ++j)
         {
            for (std::size_t i = 0; i < lb.k.size(); ++i)
            {
               bool torus = false;
               for (auto const& t : lb.k_torus)
                  torus = torus || t.label == lb.k[i].label;
               if (!torus)
                  continue;
               // Both slots of a weight vector are scaled; the scale factors
               // differ by the det shift.
               auto e = ad_ext(c, i, mod.eps[j], Side::Plus);
               auto p = apply(lie_action(c, lb.k[i], Sector::Minus), mod.psi[j]);
               auto const& [key, coef] = *mod.eps[j].begin();
               GaussianRational we = e.count(key) ? e.at(key) / coef : GaussianRational(0);
               CHECK(e == ext_add({}, mod.eps[j], we));
               GaussianRational wp = we - GaussianRational(shift) * ad.trace[i];
               CHECK(p == Scalar(wp) * mod.psi[j]);
            }
         }
      }
   }

   TEST_CASE("phi+ in dimension one")
   {
      auto c = DualPairCase::make_a(1, 1, 1, 0);
      Cochain phi = build_phi(c, PhiKind::Plus);
      Cochain expect;
      expect.add_term(ExtKey{xp(1, 2)}, um(1, 1));
      CHECK(phi == expect);
   }

   TEST_CASE("single-term restriction")
   {
      for (auto const& c : sweep_cases())
      {
         CAPTURE(c.label());
         Cochain plus = restrict_to_fiber(c, build_phi(c, PhiKind::Plus));
         REQUIRE(plus.terms().size() == 1);
         CHECK(plus.terms().begin()->first == fiber_key(c, ExtIndex::XiPrime));
         CHECK(plus.terms().begin()->second == special_harmonic(c));
         Cochain minus = restrict_to_fiber(c, build_phi(c, PhiKind::Minus));
         REQUIRE(minus.terms().size() == 1);
         CHECK(minus.terms().begin()->first == fiber_key(c, ExtIndex::XiDoublePrime));
         CHECK(minus.terms().begin()->second == special_harmonic(c, Side::Minus));
      }
      Cochain inside;
      inside.add_term(ExtKey{xp(1, 3), xp(2, 3)}, um(1, 1));
      CHECK(restrict_to_fiber(DualPairCase::make_a(2, 1, 1, 1), inside) == inside);
   }

   TEST_CASE("bidegrees")
   {
      auto c = DualPairCase::make_a(2, 2, 1, 1);
      CHECK(build_phi(c, PhiKind::Plus).bidegree() == std::make_pair(3, 0));
      CHECK(build_phi(c, PhiKind::Minus).bidegree() == std::make_pair(0, 3));
      CHECK(build_phi(c, PhiKind::Full).bidegree() == std::make_pair(3, 3));
   }

   TEST_CASE("closedness")
   {
      for (auto const& c : closed_cases())
      {
         CAPTURE(c.label());
         CHECK(rel_differential(c, build_phi(c, PhiKind::Plus), Sector::Minus).is_zero());
         CHECK(rel_differential(c, build_phi(c, PhiKind::Minus), Sector::Plus).is_zero());
         CHECK(rel_differential(c, build_phi(c, PhiKind::Full)).is_zero());
      }
   }

   TEST_CASE("differential of the constant")
   {
      auto c = DualPairCase::make_a(2, 1, 1, 1);
      auto const& lb = lie_basis(c);
      Cochain d = rel_differential(c, Cochain::scalar(Poly(1)));
      Cochain expect;
      for (std::size_t b = 0; b < lb.p_index.size(); ++b)
      {
         auto [x, y] = lb.p_index[b];
         expect += Cochain::single(xp(x, y), apply(lie_action(c, lb.p_plus[b]), Poly(1)));
         expect += Cochain::single(xpp(x, y), apply(lie_action(c, lb.p_minus[b]), Poly(1)));
      }
      CHECK(d == expect);
      CHECK(!d.is_zero());
   }

   TEST_CASE("basis independence")
   {
      for (auto const& c : closed_cases())
      {
         CAPTURE(c.label());
         Cochain ref = build_phi(c, PhiKind::Plus);
         Cochain refm = build_phi(c, PhiKind::Minus);
         for (std::uint64_t seed : {3u, 17u, 2024u})
         {
            CHECK(build_phi(c, PhiKind::Plus, seed) == ref);
            CHECK(build_phi(c, PhiKind::Minus, seed) == refm);
         }
      }
   }

   TEST_CASE("invariance and annihilation")
   {
      for (auto const& c : closed_cases())
      {
         CAPTURE(c.label());
         auto rp = check_invariance(c, build_phi(c, PhiKind::Plus), Side::Plus);
         CHECK_MESSAGE(rp.ok, rp.witness);
         auto rm = check_invariance(c, build_phi(c, PhiKind::Minus), Side::Minus);
         CHECK_MESSAGE(rm.ok, rm.witness);
         auto rf = check_invariance(c, build_phi(c, PhiKind::Full), std::nullopt);
         CHECK_MESSAGE(rf.ok, rf.witness);
      }
   }

   TEST_CASE("mutation is detected")
   {
      auto c = DualPairCase::make_a(2, 1, 1, 1);
      Cochain phi = build_phi(c, PhiKind::Plus);
      auto const& [key, p] = *phi.terms().begin();
      Cochain bad = phi;
      bad.add_term(key, um(1, 1));
      auto rep = check_invariance(c, bad, Side::Plus);
      CHECK_FALSE(rep.ok);
      CHECK(!rep.witness.empty());
   }

   TEST_CASE("brackets of p lie in k")
   {
      for (auto const& c : sweep_cases())
      {
         CAPTURE(c.label());
         CHECK(brackets_of_p_lie_in_k(c));
      }
   }

   TEST_CASE("d squared vanishes on invariant cochains")
   {
      std::mt19937 rng(11);
      struct Shape
      {
         DualPairCase c;
         int n1, n2, deg;
      };
      std::vector<Shape> shapes = {{DualPairCase::make_a(1, 1, 1, 0), 0, 0, 4}, {DualPairCase::make_a(1, 1, 1, 0), 1, 0, 3},
                                 {DualPairCase::make_a(1, 1, 1, 0), 1, 1, 2}, {DualPairCase::make_a(2, 1, 1, 1), 0, 0, 2},
                                 {DualPairCase::make_a(2, 1, 1, 1), 1, 0, 2}, {DualPairCase::make_b(1, 1), 0, 0, 2}};
      for (auto const& s : shapes)
      {
         CAPTURE(s.c.label());
         CAPTURE(s.n1);
         CAPTURE(s.n2);
         auto basis = invariant_cochains(s.c, s.n1, s.n2, s.deg);
         REQUIRE(!basis.empty());
         Cochain x;
         for (auto const& b : basis)
         {
            GaussianRational g = gen::gaussian(rng);
            x += b.map_coefficients([&](Poly const& p) { return Scalar(g) * p; });
         }
         CHECK(check_invariance(s.c, x, std::nullopt).ok);
         Cochain dx = rel_differential(s.c, x);
         CHECK(check_invariance(s.c, dx, std::nullopt).ok);
         CHECK(rel_differential(s.c, dx).is_zero());
      }
   }

   TEST_CASE("lowest weights of the plus-sector harmonics")
   {
      // Oracle: the printed lowest weights of f+ under the plus-sector torus.
      auto a = DualPairCase::make_a(2, 2, 1, 1);
      auto wa = weight_of(a, special_harmonic(a, Side::Minus), Torus::KPrimePlus, Rational(0), Sector::Plus);
      REQUIRE(wa.ok);
      CHECK(wa.weight == Weight{Rational(-1), Rational(1)});
      auto b = DualPairCase::make_b(2, 1);
      auto wb = weight_of(b, special_harmonic(b, Side::Minus), Torus::KPrimePlus, Rational(0), Sector::Plus);
      REQUIRE(wb.ok);
      CHECK(wb.weight == Weight{Rational(-2)});
      auto c = DualPairCase::make_c(3, 1);
      auto wc = weight_of(c, special_harmonic(c, Side::Minus), Torus::KPrimePlus, Rational(0), Sector::Plus);
      REQUIRE(wc.ok);
      CHECK(wc.weight == Weight{Rational(-1)});
   }

   TEST_CASE("weights of the top wedge")
   {
      // [e_aa, X_{a mu}] = X_{a mu} and [e_mumu, X_{a mu}] = -X_{a mu}, so the
      // weight counts the slots of I in each row and column.
      auto c = DualPairCase::make_a(2, 2, 1, 1);
      auto w = ext_weight(c, top_wedge(c), Side::Plus);
      REQUIRE(w);
      CHECK(*w == Weight{Rational(2), Rational(1), Rational(-2), Rational(-1)});
      auto wm = ext_weight(c, top_wedge(c, Side::Minus), Side::Minus);
      REQUIRE(wm);
      CHECK(*wm == Weight{Rational(-2), Rational(-1), Rational(2), Rational(1)});
      ExtVec mixed{{ExtKey{xp(1, 3)}, GaussianRational(1)}, {ExtKey{xp(2, 3)}, GaussianRational(1)}};
      CHECK_FALSE(ext_weight(c, mixed, Side::Plus).has_value());
      CHECK_THROWS_AS(ext_weight(c, ExtVec{}, Side::Plus), std::invalid_argument);
   }
}
