// SPDX-License-Identifier: MIT
//
// src/laplace.cpp
//

#include "weil/laplace.hpp"

#include "weil/schrodinger.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace weil
{

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------- Laplace

Eigen::MatrixXd hessian_at_zero(LaplaceProblem const& p, double step)
{
   Eigen::MatrixXd a(p.n, p.n);
   Eigen::VectorXd z = Eigen::VectorXd::Zero(p.n);
   double h0 = p.h(z);
   for (int i = 0; i < p.n; ++i)
   {
      Eigen::VectorXd ei = z;
      ei(i) = step;
      a(i, i) = (p.h(ei) - 2 * h0 + p.h(-ei)) / (step * step);
      for (int j = 0; j < i; ++j)
      {
         Eigen::VectorXd ej = z;
         ej(j) = step;
         double v = (p.h(ei + ej) - p.h(ei - ej) - p.h(ej - ei) + p.h(-ei - ej)) / (4 * step * step);
         a(i, j) = v;
         a(j, i) = v;
      }
   }
   return a;
}

namespace
{

Eigen::MatrixXd hessian_of(LaplaceProblem const& p)
{
   Eigen::MatrixXd a = p.hessian ? *p.hessian : hessian_at_zero(p);
   if (a.rows() != p.n || a.cols() != p.n)
      throw std::invalid_argument("laplace: Hessian has the wrong size");
   if (Eigen::LLT<Eigen::MatrixXd>(a).info() != Eigen::Success)
      throw std::invalid_argument("laplace: Hessian is not positive definite");
   return a;
}

} // namespace

std::complex<double> laplace_leading(LaplaceProblem const& p, double t)
{
   if (t <= 0)
      throw std::invalid_argument("laplace_leading: t must be positive");
   Eigen::MatrixXd a = hessian_of(p);
   Eigen::VectorXd z = Eigen::VectorXd::Zero(p.n);
   return std::pow(2 * kPi / t, p.n / 2.0) * p.f(z) / std::sqrt(a.determinant()) * std::exp(-t * p.h(z));
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n)
{
   if (n < 1)
      throw std::invalid_argument("gauss_hermite: need at least one node");
   Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
   for (int k = 1; k < n; ++k)
   {
      j(k - 1, k) = std::sqrt(k / 2.0);
      j(k, k - 1) = j(k - 1, k);
   }
   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
   Eigen::VectorXd w = std::sqrt(kPi) * es.eigenvectors().row(0).transpose().array().square();
   return {es.eigenvalues(), w};
}

namespace
{

cd integrand(LaplaceProblem const& p, double t, Eigen::VectorXd const& x, double box)
{
   if (x.cwiseAbs().maxCoeff() > box)
      return 0.0;
   return p.f(x) * std::exp(-t * p.h(x));
}

cd gauss_hermite_rule(LaplaceProblem const& p, double t, Eigen::VectorXd const& scale, int nodes, double box, long& evals)
{
   auto [xs, ws] = gauss_hermite(nodes);
   std::vector<int> idx(static_cast<std::size_t>(p.n), 0);
   cd sum = 0;
   double jac = scale.prod();
   while (true)
   {
      Eigen::VectorXd y(p.n);
      double w = 1.0, g = 0.0;
      for (int d = 0; d < p.n; ++d)
      {
         double node = xs(idx[static_cast<std::size_t>(d)]);
         y(d) = node;
         w *= ws(idx[static_cast<std::size_t>(d)]);
         g += node * node;
      }
      sum += w * std::exp(g) * integrand(p, t, scale.cwiseProduct(y), box);
      ++evals;
      int d = 0;
      while (d < p.n && ++idx[static_cast<std::size_t>(d)] == nodes)
         idx[static_cast<std::size_t>(d++)] = 0;
      if (d == p.n)
         break;
   }
   return jac * sum;
}

} // namespace

QuadratureResult quadrature(LaplaceProblem const& p, double t, QuadratureOptions const& opt)
{
   if (t <= 0)
      throw std::invalid_argument("quadrature: t must be positive");
   Eigen::MatrixXd a = hessian_of(p);
   // Laplace Gaussian exp(-t/2 a_ii x_i^2) has standard deviation 1/sqrt(t a_ii).
   Eigen::VectorXd sd = (t * a.diagonal()).cwiseSqrt().cwiseInverse();
   QuadratureResult res;
   if (opt.scheme == Scheme::GaussHermite)
   {
      // e^{-y^2} matches the Laplace Gaussian for x = sqrt(2) sd y.
      Eigen::VectorXd scale = std::sqrt(2.0) * sd;
      cd full = gauss_hermite_rule(p, t, scale, opt.nodes, opt.box, res.evaluations);
      cd half = gauss_hermite_rule(p, t, scale, std::max(1, opt.nodes / 2), opt.box, res.evaluations);
      res.value = full;
      res.error = std::abs(full - half);
      return res;
   }
   if (opt.samples < 2)
      throw std::invalid_argument("quadrature: need at least two samples");
   std::mt19937_64 rng(opt.seed);
   std::normal_distribution<double> nd;
   Eigen::VectorXd sigma = 2.0 * sd;
   double log_norm = 0;
   for (int d = 0; d < p.n; ++d)
      log_norm += std::log(sigma(d) * std::sqrt(2 * kPi));
   cd mean = 0;
   double m2 = 0;   // running sum of squared deviations (Welford)
   for (long k = 1; k <= opt.samples; ++k)
   {
      Eigen::VectorXd y(p.n);
      double q = 0;
      for (int d = 0; d < p.n; ++d)
      {
         double u = nd(rng);
         y(d) = sigma(d) * u;
         q += u * u;
      }
      cd v = integrand(p, t, y, opt.box) * std::exp(log_norm + 0.5 * q);
      cd delta = v - mean;
      mean += delta / static_cast<double>(k);
      m2 += std::real(std::conj(delta) * (v - mean));
   }
   res.value = mean;
   res.evaluations = opt.samples;
   res.error = std::sqrt(m2 / static_cast<double>(opt.samples - 1) / static_cast<double>(opt.samples));
   if (!std::isfinite(res.error))
      throw std::runtime_error("quadrature: Monte Carlo estimate did not converge");
   return res;
}

// ---------------------------------------------------------------- leading terms

namespace
{

int two_adic(mpz_class v)
{
   int k = 0;
   while (v != 0 && mpz_even_p(v.get_mpz_t()))
   {
      v /= 2;
      ++k;
   }
   return k;
}

int two_adic(Rational const& q) { return two_adic(q.get_num()) - two_adic(q.get_den()); }

Rational pow2(int k)
{
   Rational r(1);
   for (int i = 0; i < std::abs(k); ++i)
      r *= 2;
   return k >= 0 ? r : Rational(1) / r;
}

GaussianRational minus_i_pow(int k)
{
   GaussianRational r(1);
   for (int i = 0; i < ((k % 4) + 4) % 4; ++i)
      r *= GaussianRational(Rational(0), Rational(-1));
   return r;
}

// Square root of a non-negative rational if it is a perfect square.
std::optional<Rational> rational_sqrt(Rational const& q)
{
   if (sgn(q) < 0)
      return std::nullopt;
   mpz_class n = q.get_num(), d = q.get_den();
   mpz_class sn = sqrt(n), sd = sqrt(d);
   if (sn * sn != n || sd * sd != d)
      return std::nullopt;
   return Rational(sn, sd);
}

} // namespace

LeadingTerm& LeadingTerm::normalize()
{
   if (unit.is_zero())
      return *this;
   int v = 0;
   bool first = true;
   for (Rational const* q : {&unit.re, &unit.im})
      if (sgn(*q) != 0)
      {
         int k = two_adic(*q);
         v = first ? k : std::min(v, k);
         first = false;
      }
   Rational f = pow2(-v);
   unit.re *= f;
   unit.im *= f;
   two_power += v;
   return *this;
}

std::complex<double> LeadingTerm::coefficient() const
{
   return unit.to_complex() * std::pow(2.0, two_power.get_d()) * std::pow(kPi, pi_power);
}

std::complex<double> LeadingTerm::value(double t) const
{
   return coefficient() * std::pow(t, t_power) * std::exp(-rate.get_d() * kPi * t * t);
}

std::string LeadingTerm::str() const
{
   std::ostringstream os;
   os << "(" << unit.str() << ") * 2^(" << two_power.get_str() << ") * pi^" << pi_power << " * t^" << t_power
      << " * exp(-" << rate.get_str() << " pi t^2)";
   return os.str();
}

LeadingTerm fiber_leading_closed_form(DualPairCase const& c)
{
   c.validate();
   LeadingTerm lt;
   if (c.tag == DualPairCase::A)
   {
      int p = c.p, q = c.q, r = c.r, s = c.s;
      lt.unit = minus_i_pow(p * s + r * q - r * s);
      lt.two_power = p * s + r * q - 5 * r * s;
      lt.pi_power = 2 * p * s + 2 * r * q - 4 * r * s;
      lt.t_power = (p + q) * (r + s) - 2 * r * s;
      lt.rate = r + s;
   }
   else if (c.tag == DualPairCase::B)
   {
      int n = c.n, r = c.r;
      lt.unit = minus_i_pow((2 * n * r + r - r * r) / 2);
      lt.two_power = Rational(5 * n * r) + make_rational(15 * r - 19 * r * r, 4);
      lt.pi_power = 2 * r * (n - r + 1);
      lt.t_power = 2 * n * r + r - r * r;
      lt.rate = r;
   }
   else
   {
      int n = c.n, r = c.r;
      lt.unit = minus_i_pow((2 * n * r - r * r - r) / 2);
      lt.two_power = Rational(4 * n * r) - make_rational(13 * r + 15 * r * r, 4);
      lt.pi_power = 2 * r * (n - r - 1);
      lt.t_power = 2 * n * r - r * r - r;
      lt.rate = r;
   }
   return lt.normalize();
}

namespace
{

// Exact determinant of a small rational matrix.
Rational rational_det(std::vector<std::vector<Rational>> m)
{
   std::size_t n = m.size();
   Rational det(1);
   for (std::size_t col = 0; col < n; ++col)
   {
      std::size_t piv = col;
      while (piv < n && sgn(m[piv][col]) == 0)
         ++piv;
      if (piv == n)
         return Rational(0);
      if (piv != col)
      {
         std::swap(m[piv], m[col]);
         det = -det;
      }
      det *= m[col][col];
      for (std::size_t r = col + 1; r < n; ++r)
      {
         Rational f = m[r][col] / m[col][col];
         for (std::size_t k = col; k < n; ++k)
            m[r][k] -= f * m[col][k];
      }
   }
   return det;
}

// Exact Hessian determinant: the closed form in case A; rounded central
// differences otherwise (the entries are integers).
Rational exact_hessian_det(DualPairCase const& c)
{
   Eigen::MatrixXd h = hessian_of_h(MajorantContext::standard(c));
   std::vector<std::vector<Rational>> m(static_cast<std::size_t>(h.rows()));
   for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j)
      {
         double v = std::round(h(i, j));
         if (std::abs(h(i, j) - v) > 1e-4)
            throw std::runtime_error("fiber_assembly: Hessian entry is not an integer");
         m[static_cast<std::size_t>(i)].push_back(Rational(static_cast<long>(v)));
      }
   return rational_det(m);
}

Scalar evaluate_exact(Poly const& p, EvalPoint const& x)
{
   Scalar s;
   for (auto const& [m, coef] : p.terms())
   {
      bool live = true;
      for (auto const& [v, e] : m.entries())
      {
         std::complex<double> z = x(v.row - 1, v.col - 1);
         if (z == 0.0)
            live = false;
         else if (z != 1.0)
            throw std::logic_error("evaluate_exact: standard point entries are 0 or 1");
      }
      if (live)
         s += coef;
   }
   return s;
}

} // namespace

FiberAssembly fiber_assembly(DualPairCase const& c)
{
   c.validate();
   FiberAssembly fa;
   fa.modulus_exponent = modulus_exponent(c);
   auto idx = c.index_set();
   fa.normal_dim = static_cast<int>(idx.size());

   // Restriction drops terms with an index outside I, so it commutes with the
   // wedge product phi = phi+ ^ phi-.
   Cochain fib = wedge(restrict_to_fiber(c, build_phi(c, PhiKind::Plus)),
                       restrict_to_fiber(c, build_phi(c, PhiKind::Minus)));
   if (fib.terms().size() != 1)
      throw std::runtime_error("fiber_assembly: restricted phi is not a single term");
   auto const& [key, poly] = *fib.terms().begin();
   fa.fiber_poly = poly;

   std::vector<ExtIndex> pairs;
   for (auto [a, b] : idx)
   {
      pairs.push_back({ExtIndex::XiPrime, a, b});
      pairs.push_back({ExtIndex::XiDoublePrime, a, b});
   }
   Cochain ordered = Cochain::from_wedge(pairs, Poly(1));
   if (ordered.terms().size() != 1 || ordered.terms().begin()->first != key)
      throw std::runtime_error("fiber_assembly: restricted phi is not of top degree on the fiber");
   fa.wedge_sign = ordered.terms().begin()->second == Poly(1) ? 1 : -1;

   GaussPoly top = highest_term(iota(c, poly));
   int deg = 0;
   if (!top.poly.is_homogeneous(&deg))
      throw std::runtime_error("fiber_assembly: top term of iota(P) is not homogeneous");
   fa.amplitude_degree = deg;
   fa.amplitude = evaluate_exact(top.poly, standard_point(c));
   GaussianRational q;
   int pi_pow = 0, sqrt2_pow = 0;
   if (!fa.amplitude.is_monomial(&q, &pi_pow, &sqrt2_pow) || q.is_zero())
      throw std::runtime_error("fiber_assembly: amplitude at the standard point is not a nonzero monomial");

   fa.hessian_det = exact_hessian_det(c);
   int k = two_adic(fa.hessian_det);
   auto root = rational_sqrt(fa.hessian_det * pow2(-k));
   if (!root)
      throw std::runtime_error("fiber_assembly: Hessian determinant has no exact square root");

   // t^e (2 pi / t^2)^{d'} det(pi A)^{-1/2} (-i/2)^{d'} * sign * a t^D * exp(-pi m t^2)
   //   = (-i)^{d'} det(A)^{-1/2} sign a  t^{e - 2d' + D} exp(-pi m t^2)
   LeadingTerm lt;
   lt.unit = minus_i_pow(fa.normal_dim) * GaussianRational(fa.wedge_sign) * q / GaussianRational(*root);
   lt.two_power = Rational(sqrt2_pow, 2) - Rational(k, 2);
   lt.pi_power = pi_pow;
   lt.t_power = fa.modulus_exponent - 2 * fa.normal_dim + deg;
   lt.rate = c.cols();
   fa.term = lt.normalize();
   return fa;
}

LeadingMismatch::LeadingMismatch(LeadingTerm a, LeadingTerm b)
   : std::runtime_error("leading term mismatch: closed form " + a.str() + ", re-derived " + b.str()),
     closed_form(std::move(a)), rederived(std::move(b))
{
}

LeadingTerm fiber_leading_from_cocycle(DualPairCase const& c)
{
   LeadingTerm closed = fiber_leading_closed_form(c);
   LeadingTerm derived = fiber_assembly(c).term;
   if (!(closed == derived))
      throw LeadingMismatch(closed, derived);
   return derived;
}

// ---------------------------------------------------------------- fiber integral

double exp_jacobian(DualPairCase const& c, TangentVector const& y)
{
   auto idx = c.index_set();
   std::vector<Eigen::MatrixXcd> basis;
   for (bool imag : {false, true})
      for (auto s : idx)
         basis.push_back(normal_generator(c, s, imag));
   auto flat = [](Eigen::MatrixXcd const& m) {
      Eigen::VectorXd v(2 * m.size());
      for (Eigen::Index i = 0; i < m.size(); ++i)
      {
         v(2 * i) = m.data()[i].real();
         v(2 * i + 1) = m.data()[i].imag();
      }
      return v;
   };
   auto dim = static_cast<Eigen::Index>(basis.size());
   Eigen::MatrixXd b(flat(basis[0]).size(), dim);
   for (Eigen::Index k = 0; k < dim; ++k)
      b.col(k) = flat(basis[static_cast<std::size_t>(k)]);
   Eigen::MatrixXcd ym = y.matrix(c);
   Eigen::MatrixXd ad2(dim, dim);
   auto solver = b.colPivHouseholderQr();
   for (Eigen::Index k = 0; k < dim; ++k)
   {
      Eigen::MatrixXcd z = basis[static_cast<std::size_t>(k)];
      Eigen::MatrixXcd inner = ym * z - z * ym;
      Eigen::MatrixXcd outer = ym * inner - inner * ym;
      Eigen::VectorXd rhs = flat(outer);
      Eigen::VectorXd co = solver.solve(rhs);
      if ((b * co - rhs).norm() > 1e-9 * (1.0 + rhs.norm()))
         throw std::runtime_error("exp_jacobian: normal space is not a Lie triple system");
      ad2.col(k) = co;
   }
   Eigen::EigenSolver<Eigen::MatrixXd> es(ad2);
   double j = 1.0;
   for (Eigen::Index k = 0; k < dim; ++k)
   {
      double mu = std::max(0.0, es.eigenvalues()(k).real());
      double s = std::sqrt(mu);
      j *= s < 1e-8 ? 1.0 + mu / 6.0 : std::sinh(s) / s;
   }
   return j;
}

LaplaceProblem fiber_problem(DualPairCase const& c, double t)
{
   if (!(c.tag == DualPairCase::A && c.p == 1 && c.q == 1 && c.r == 1 && c.s == 0))
      throw std::invalid_argument("fiber_problem: only A(1,1,1,0) is supported");
   FiberAssembly fa = fiber_assembly(c);
   GaussPoly g = iota(c, fa.fiber_poly);
   auto ctx = MajorantContext::standard(c);
   // (-i/2) per complex normal direction, and the ordering sign of the key.
   cd conv = std::pow(cd(0, -0.5), fa.normal_dim) * static_cast<double>(fa.wedge_sign);
   double te = std::pow(t, fa.modulus_exponent);
   LaplaceProblem p;
   p.n = ctx.normal_dim();
   p.f = [c, g, ctx, conv, te, t](Eigen::VectorXd const& v) {
      TangentVector y = TangentVector::from_coords(v);
      Eigen::MatrixXcd ym = y.matrix(c);
      EvalPoint pt(ctx.x.rows(), ctx.x.cols());
      for (Eigen::Index j = 0; j < ctx.x.cols(); ++j)
         pt.col(j) = t * exp_apply(ym, 1.0, ctx.x.col(j));
      return conv * te * evaluate(g.poly, pt) * exp_jacobian(c, y);
   };
   p.h = [ctx](Eigen::VectorXd const& v) { return kPi * majorant(ctx, TangentVector::from_coords(v), 1.0); };
   p.hessian = kPi * hessian_closed_form(c);
   return p;
}

} // namespace weil
