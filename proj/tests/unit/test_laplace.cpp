// SPDX-License-Identifier: MIT
//
// tests/unit/test_laplace.cpp
//

#include "weil/laplace.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace weil;

namespace
{

constexpr double kPi = std::numbers::pi;

LaplaceProblem toy(int n, std::function<std::complex<double>(Eigen::VectorXd const&)> f)
{
   LaplaceProblem p;
   p.n = n;
   p.f = std::move(f);
   p.h = [](Eigen::VectorXd const& x) { return x.squaredNorm(); };
   return p;
}

std::complex<double> one(Eigen::VectorXd const&) { return 1.0; }

// Closed-form exponents, substituted by hand.
LeadingTerm term(GaussianRational unit, Rational two, int pi, int t, int rate)
{
   LeadingTerm lt;
   lt.unit = unit;
   lt.two_power = two;
   lt.pi_power = pi;
   lt.t_power = t;
   lt.rate = rate;
   return lt.normalize();
}

GaussianRational const kI = GaussianRational::i();

} // namespace

TEST_SUITE("laplace")
{
   TEST_CASE("leading term of Gaussians")
   {
      auto p1 = toy(1, one);
      for (double t : {1.0, 7.0, 50.0})
         CHECK(laplace_leading(p1, t).real() == doctest::Approx(std::sqrt(kPi / t)).epsilon(1e-7));
      auto p2 = toy(2, one);
      CHECK(laplace_leading(p2, 3.0).real() == doctest::Approx(kPi / 3.0).epsilon(1e-7));
      p2.hessian = Eigen::MatrixXd::Identity(2, 2) * 2.0;
      CHECK(laplace_leading(p2, 3.0).real() == doctest::Approx(kPi / 3.0).epsilon(1e-14));
      LaplaceProblem bad = toy(1, one);
      bad.h = [](Eigen::VectorXd const& x) { return -x.squaredNorm(); };
      CHECK_THROWS_AS(laplace_leading(bad, 1.0), std::invalid_argument);
   }

   TEST_CASE("gauss hermite nodes")
   {
      auto [x2, w2] = gauss_hermite(2);
      CHECK(std::abs(x2(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
      CHECK(w2(0) == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-14));
      auto [x, w] = gauss_hermite(20);
      CHECK(w.sum() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
      // exact for x^4 e^{-x^2}: 3 sqrt(pi) / 4
      CHECK((w.array() * x.array().pow(4)).sum() == doctest::Approx(3 * std::sqrt(kPi) / 4).epsilon(1e-12));
   }

   TEST_CASE("one dimensional toys")
   {
      double t = 50;
      auto gauss = toy(1, one);
      auto gh = quadrature(gauss, t);
      CHECK(std::abs(gh.value.real() / std::sqrt(kPi / t) - 1) < 1e-3);
      QuadratureOptions mc;
      mc.scheme = Scheme::MonteCarlo;
      mc.samples = 200000;
      auto m = quadrature(gauss, t, mc);
      CHECK(std::abs(m.value.real() / std::sqrt(kPi / t) - 1) < 1e-3 + 4 * m.error / std::sqrt(kPi / t));
      // f = 1 + x^2: exact ratio to the leading term is 1 + 1/(2t).
      auto quad = toy(1, [](Eigen::VectorXd const& x) { return std::complex<double>(1 + x(0) * x(0)); });
      double ratio = quadrature(quad, t).value.real() / laplace_leading(quad, t).real();
      CHECK(ratio == doctest::Approx(1 + 1 / (2 * t)).epsilon(1e-7));
      CHECK(std::abs(ratio - 1) <= 0.01 + 1e-9);
      double prev = 1.0;
      for (double s : {10.0, 30.0, 100.0})
      {
         double err = std::abs(quadrature(quad, s).value.real() / laplace_leading(quad, s).real() - 1);
         CHECK(err < prev);
         prev = err;
      }
   }

   TEST_CASE("two dimensional toys")
   {
      double t = 100;
      auto prod = toy(2, [](Eigen::VectorXd const& x) {
         return std::complex<double>((1 + x(0) * x(0)) * (1 + x(1) * x(1)));
      });
      double ratio = quadrature(prod, t).value.real() / laplace_leading(prod, t).real();
      CHECK(ratio == doctest::Approx(std::pow(1 + 1 / (2 * t), 2)).epsilon(1e-7));
      CHECK(std::abs(ratio - 1) < 0.02);
      auto moment = toy(2, [](Eigen::VectorXd const& x) { return std::complex<double>(x(0) * x(0) * x(1) * x(1)); });
      CHECK(quadrature(moment, t).value.real() == doctest::Approx(kPi / (4 * t * t * t)).epsilon(1e-10));
   }

   TEST_CASE("closed forms")
   {
      CHECK(fiber_leading_closed_form(DualPairCase::make_a(2, 2, 1, 1)) == term(kI, -1, 4, 6, 2));
      // n = 2, r = 1: (-i)^2, 2^{10 + 15/4 - 19/4}, pi^4, t^4
      CHECK(fiber_leading_closed_form(DualPairCase::make_b(2, 1)) == term(-1, 9, 4, 4, 1));
      // n = 3, r = 1: (-i)^2, 2^{12 - 13/4 - 15/4}, pi^2, t^4
      CHECK(fiber_leading_closed_form(DualPairCase::make_c(3, 1)) == term(-1, 5, 2, 4, 1));
      // n = 3, r = 2: 2^{24 - 26/4 - 60/4} has a half-integer exponent
      CHECK(fiber_leading_closed_form(DualPairCase::make_c(3, 2)).two_power == make_rational(5, 2));
      for (int p = 1; p <= 3; ++p)
         for (int q = 1; q <= 3; ++q)
            for (int r = 0; r <= p; ++r)
               for (int s = 0; s <= q; ++s)
               {
                  if (r + s == 0)
                     continue;
                  auto lt = fiber_leading_closed_form(DualPairCase::make_a(p, q, r, s));
                  CHECK_FALSE(lt.unit.is_zero());
                  CHECK(std::abs(lt.coefficient()) > 0);
               }
      for (int n = 1; n <= 4; ++n)
         for (int r = 1; r <= n; ++r)
         {
            CHECK_FALSE(fiber_leading_closed_form(DualPairCase::make_b(n, r)).unit.is_zero());
            if (r < n)
               CHECK_FALSE(fiber_leading_closed_form(DualPairCase::make_c(n, r)).unit.is_zero());
         }
      LeadingTerm x = term(GaussianRational(make_rational(12, 5)), 0, 0, 0, 1);
      CHECK(x.unit == GaussianRational(make_rational(3, 5)));
      CHECK(x.two_power == 2);
   }

   TEST_CASE("fiber assembly")
   {
      auto c = DualPairCase::make_a(2, 2, 1, 1);
      auto fa = fiber_assembly(c);
      CHECK(fa.modulus_exponent == 8);
      CHECK(fa.normal_dim == 3);
      CHECK(fa.hessian_det == Rational(16384));
      auto closed = fiber_leading_closed_form(c);
      CHECK(fa.term.rate == closed.rate);
      CHECK(fa.term.t_power == closed.t_power);
      CHECK(fa.term.pi_power == closed.pi_power);
      CHECK(fa.term.two_power == closed.two_power);
      // (-2 sqrt2 pi)-type factors: the top term has one z or zbar per variable of P
      CHECK(fa.amplitude_degree == fa.fiber_poly.degree());
      for (auto const& cc : {DualPairCase::make_a(1, 1, 1, 1), DualPairCase::make_a(2, 1, 1, 1),
                             DualPairCase::make_a(3, 1, 2, 1)})
      {
         CAPTURE(cc.label());
         CHECK(fiber_leading_from_cocycle(cc) == fiber_leading_closed_form(cc));
      }
      try
      {
         fiber_leading_from_cocycle(c);
         CHECK(fa.term == closed);
      }
      catch (LeadingMismatch const& e)
      {
         CHECK(e.closed_form == closed);
         CHECK(e.rederived == fa.term);
      }
   }

   TEST_CASE("exponential map jacobian")
   {
      auto c = DualPairCase::make_a(1, 1, 1, 0);
      CHECK(exp_jacobian(c, TangentVector::zero(c)) == doctest::Approx(1.0));
      for (double rho : {0.1, 0.5, 1.2})
      {
         TangentVector y{{0.6 * rho}, {0.8 * rho}};
         CHECK(exp_jacobian(c, y) == doctest::Approx(std::sinh(2 * rho) / (2 * rho)).epsilon(1e-12));
      }
   }

   TEST_CASE("numeric fiber integral")
   {
      // For A(1,1,1,0) the polynomial depends on z_11 only, |z_11|^2 =
      // t^2 cosh^2 rho while h = pi cosh 2 rho, and the integral reduces to
      // (pi/2) int_1^oo (...) du.  It equals 2 i pi^2 t^2 exp(-pi t^2) exactly.
      auto c = DualPairCase::make_a(1, 1, 1, 0);
      for (double t : {1.0, 2.0, 3.0})
      {
         auto p = fiber_problem(c, t);
         auto gh = quadrature(p, t * t);
         std::complex<double> exact(0, 2 * kPi * kPi * t * t * std::exp(-kPi * t * t));
         CHECK(std::abs(gh.value - exact) < 1e-8 * std::abs(exact));
         CHECK(std::abs(fiber_assembly(c).term.value(t) - exact) < 1e-12 * std::abs(exact));
      }
      auto p = fiber_problem(c, 3.0);
      QuadratureOptions mc;
      mc.scheme = Scheme::MonteCarlo;
      mc.samples = 100000;
      mc.seed = 3;
      auto m = quadrature(p, 9.0, mc);
      auto gh = quadrature(p, 9.0);
      CHECK(std::abs(m.value - gh.value) < 5 * m.error);
      CHECK_THROWS_AS(fiber_problem(DualPairCase::make_a(2, 1, 1, 1), 1.0), std::invalid_argument);
   }
}
