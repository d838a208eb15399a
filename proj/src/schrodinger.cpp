// SPDX-License-Identifier: MIT
//
// src/schrodinger.cpp
//

#include "weil/schrodinger.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace weil
{

namespace
{

// On p * phi0:  d/dz (p phi0) = (dp/dz - pi zbar p) phi0 and
// d/dzbar (p phi0) = (dp/dzbar - pi z p) phi0.
DiffOperator mul(Poly const& p) { return DiffOperator::multiply(p); }

void check_fock_var(DualPairCase const& c, Var u)
{
   if ((u.kind != Var::UPlus && u.kind != Var::UMinus) || u.row < 1 || u.row > c.rows() || u.col < 1 || u.col > c.cols())
      throw std::invalid_argument("not a Fock variable of " + c.label() + ": " + u.name());
}

} // namespace

DiffOperator iota_creation(DualPairCase const& c, Var u)
{
   check_fock_var(c, u);
   Var z = Var::z(u.row, u.col), zb = Var::zb(u.row, u.col);
   Scalar r2 = Scalar::sqrt2();
   Scalar two_pi = Scalar(2) * Scalar::pi();
   bool alpha = c.is_alpha(u.row);
   // u+ (alpha): sqrt2 (d/dzbar - 2 pi z);   u+ (mu): sqrt2 (d/dz - 2 pi zbar)
   // u- (alpha): -sqrt2 (d/dz - 2 pi zbar);  u- (mu): -sqrt2 (d/dzbar - 2 pi z)
   bool holo_mult = (u.kind == Var::UPlus) == alpha;   // multiplier is z (else zbar)
   Var d = holo_mult ? zb : z;
   Var m = holo_mult ? z : zb;
   Scalar sign = u.kind == Var::UPlus ? Scalar(1) : Scalar(-1);
   DiffOperator op = DiffOperator::partial(d, sign * r2) - sign * r2 * mul(two_pi * Poly(m));
   return op;
}

DiffOperator iota_annihilation(DualPairCase const& c, Var u)
{
   check_fock_var(c, u);
   Var z = Var::z(u.row, u.col), zb = Var::zb(u.row, u.col);
   bool alpha = c.is_alpha(u.row);
   bool holo_mult = (u.kind == Var::UPlus) == alpha;
   // The annihilator differentiates in the variable the creation operator
   // multiplies by.
   Var d = holo_mult ? z : zb;
   Scalar sign = u.kind == Var::UPlus ? Scalar(1) : Scalar(-1);
   return DiffOperator::partial(d, sign * Scalar::sqrt2());
}

GaussPoly iota(DualPairCase const& c, Poly const& p)
{
   std::map<Var, DiffOperator> ops;
   Poly out;
   for (auto const& [m, coef] : p.terms())
   {
      Poly g(1);
      for (auto const& [v, e] : m.entries())
      {
         auto it = ops.find(v);
         if (it == ops.end())
            it = ops.emplace(v, iota_creation(c, v)).first;
         for (int i = 0; i < e; ++i)
            g = apply(it->second, g);
      }
      out += coef * g;
   }
   return {out};
}

GaussPoly highest_term(GaussPoly const& g)
{
   using Pair = std::pair<int, int>;
   auto pair_degrees = [](Monomial const& m) {
      std::map<Pair, int> d;
      for (auto const& [v, e] : m.entries())
         d[{v.row, v.col}] += e;
      return d;
   };
   std::map<Pair, int> maxdeg;
   for (auto const& [m, c] : g.poly.terms())
      for (auto const& [k, e] : pair_degrees(m))
         maxdeg[k] = std::max(maxdeg[k], e);
   Poly out;
   for (auto const& [m, c] : g.poly.terms())
   {
      auto d = pair_degrees(m);
      bool top = true;
      for (auto const& [k, e] : maxdeg)
         top = top && d.count(k) && d[k] == e;
      if (top)
         out += Poly(m, c);
   }
   if (!out.is_zero() || g.poly.is_zero())
      return {out};
   int top = g.poly.degree();
   for (auto const& [m, c] : g.poly.terms())
      if (m.degree() == top)
         out += Poly(m, c);
   return {out};
}

DiffOperator schrodinger_action(SchrodingerDirection dir, RealCoord j)
{
   Var z = Var::z(j.k, j.a), zb = Var::zb(j.k, j.a);
   Scalar half = Scalar(make_rational(1, 2));
   Scalar i = Scalar::i();
   // x = (z + zbar)/2, y = (z - zbar)/(2i)
   Poly coord = j.imag ? Scalar(make_rational(-1, 2)) * i * (Poly(z) - Poly(zb)) : half * (Poly(z) + Poly(zb));
   if (dir == SchrodingerDirection::F)
      return mul(Scalar(2) * Scalar::pi() * i * coord);
   // d/dx = d/dz + d/dzbar, d/dy = i (d/dz - d/dzbar); on p * phi0 the
   // Gaussian contributes -2 pi x (resp. -2 pi y).
   DiffOperator d = j.imag ? DiffOperator::partial(z, i) - DiffOperator::partial(zb, i)
                           : DiffOperator::partial(z) + DiffOperator::partial(zb);
   return d - mul(Scalar(2) * Scalar::pi() * coord);
}

int modulus_exponent(DualPairCase const& c)
{
   return c.tag == DualPairCase::A ? (c.p + c.q) * (c.r + c.s) : 2 * c.n * c.r;
}

namespace
{

Poly scale_variables(Poly const& p, Rational const& t)
{
   Poly out;
   for (auto const& [m, coef] : p.terms())
   {
      Rational f(1);
      for (int i = 0; i < m.degree(); ++i)
         f *= t;
      out += Poly(m, Scalar(GaussianRational(f)) * coef);
   }
   return out;
}

} // namespace

DilatedGaussPoly siegel_dilate(DualPairCase const& c, Rational const& t, DilatedGaussPoly const& g)
{
   if (sgn(t) <= 0)
      throw std::invalid_argument("m'(t Id) requires t > 0");
   return {scale_variables(g.poly, t), g.scale * t, modulus_exponent(c)};
}

DilatedGaussPoly siegel_dilate(DualPairCase const& c, Rational const& t, GaussPoly const& g)
{
   return siegel_dilate(c, t, DilatedGaussPoly{g.poly, Rational(1), modulus_exponent(c)});
}

std::complex<double> siegel_unipotent_phase(Eigen::MatrixXcd const& b, Eigen::MatrixXcd const& beta)
{
   std::complex<double> tr = (b * beta).trace();
   if (std::abs(tr.imag()) > 1e-12 * (1.0 + std::abs(tr.real())))
      throw std::invalid_argument("n'(b): tr(b beta) is not real");
   return std::exp(std::complex<double>(0.0, std::numbers::pi * tr.real()));
}

std::complex<double> evaluate(Poly const& p, EvalPoint const& pt)
{
   std::complex<double> s = 0;
   for (auto const& [m, coef] : p.terms())
   {
      std::complex<double> v = coef.to_complex();
      for (auto const& [var, e] : m.entries())
      {
         if (var.kind != Var::Z && var.kind != Var::ZBar)
            throw std::invalid_argument("evaluate: not a Schrodinger variable: " + var.name());
         if (var.row > pt.rows() || var.col > pt.cols())
            throw std::invalid_argument("evaluate: point too small for " + var.name());
         std::complex<double> x = pt(var.row - 1, var.col - 1);
         if (var.kind == Var::ZBar)
            x = std::conj(x);
         v *= std::pow(x, e);
      }
      s += v;
   }
   return s;
}

std::complex<double> evaluate(GaussPoly const& g, EvalPoint const& pt)
{
   return evaluate(g.poly, pt) * std::exp(-std::numbers::pi * pt.squaredNorm());
}

std::complex<double> evaluate(DilatedGaussPoly const& g, EvalPoint const& pt)
{
   double s = g.scale.get_d();
   return std::pow(s, g.kappa) * evaluate(g.poly, pt) * std::exp(-std::numbers::pi * s * s * pt.squaredNorm());
}

EvalPoint standard_point(DualPairCase const& c)
{
   EvalPoint x = EvalPoint::Zero(c.rows(), c.cols());
   for (int a = 0; a < c.r; ++a)
      x(a, a) = 1.0;
   if (c.tag == DualPairCase::A)
      for (int b = 0; b < c.s; ++b)
         x(c.p + b, c.r + b) = 1.0;
   return x;
}

} // namespace weil
