// SPDX-License-Identifier: MIT
//
// weil/laplace.hpp
//
// The method of Laplace: the leading term (2 pi / t)^{n/2} f(0) det(A)^{-1/2}
// e^{-t h(0)} of J(t) = int f(x) e^{-t h(x)} dx, numeric quadrature for
// checking it, and the leading asymptotics of the fiber integral J(t) in the
// three cases, both from the closed forms and re-assembled from the cocycle.
//

#ifndef WEIL_LAPLACE_HPP
#define WEIL_LAPLACE_HPP

#include "weil/cocycle.hpp"
#include "weil/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace weil
{

struct LaplaceProblem
{
   int n = 1;
   std::function<std::complex<double>(Eigen::VectorXd const&)> f;
   std::function<double(Eigen::VectorXd const&)> h;
   std::optional<Eigen::MatrixXd> hessian;   // of h at 0; finite differences otherwise
};

// Hessian of h at 0 by central differences.
Eigen::MatrixXd hessian_at_zero(LaplaceProblem const& p, double step = 1e-4);

// (2 pi / t)^{n/2} f(0) det(A)^{-1/2} exp(-t h(0)).  Throws
// std::invalid_argument if the Hessian is not positive definite.
std::complex<double> laplace_leading(LaplaceProblem const& p, double t);

enum class Scheme { GaussHermite, MonteCarlo };

struct QuadratureResult
{
   std::complex<double> value;
   double error = 0;   // |difference of two rules| or the standard error
   long evaluations = 0;
};

struct QuadratureOptions
{
   Scheme scheme = Scheme::GaussHermite;
   int nodes = 40;               // per dimension (Gauss-Hermite)
   long samples = 1000000;       // Monte Carlo
   std::uint64_t seed = 1;
   double box = 10.0;            // integrand is taken as 0 outside [-box, box]^n
};

// Numeric J(t).  Gauss-Hermite rules are centred at 0 and scaled by the
// Hessian diagonal; the error estimate compares the rule with one of half the
// nodes.  Monte Carlo samples a Gaussian proposal twice as wide as the
// Laplace Gaussian and reports the standard error.
QuadratureResult quadrature(LaplaceProblem const& p, double t, QuadratureOptions const& opt = {});

// Nodes and weights of the n-point Gauss-Hermite rule for the weight e^{-x^2}
// (Golub-Welsch).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n);

// c t^a exp(-rate pi t^2) with c = unit * 2^two_power * pi^pi_power.
// unit has no factor 2 in numerator or denominator, so two terms are equal
// exactly when all fields are equal.
struct LeadingTerm
{
   GaussianRational unit{1};
   Rational two_power{0};
   int pi_power = 0;
   int t_power = 0;
   Rational rate{0};

   // Moves factors of 2 from unit into two_power.
   LeadingTerm& normalize();
   std::complex<double> coefficient() const;
   std::complex<double> value(double t) const;
   std::string str() const;

   friend bool operator==(LeadingTerm const& a, LeadingTerm const& b)
   {
      return a.unit == b.unit && a.two_power == b.two_power && a.pi_power == b.pi_power && a.t_power == b.t_power &&
             a.rate == b.rate;
   }
};

LeadingTerm fiber_leading_closed_form(DualPairCase const& c);

// The ingredients of the re-derived leading term.
struct FiberAssembly
{
   int modulus_exponent = 0;   // e
   int normal_dim = 0;         // d' = |I|, complex dimension of the normal space
   int amplitude_degree = 0;   // degree of the top term of iota(P)
   int wedge_sign = 1;         // sorted key = sign * wedge_s (xi'_s ^ xi''_s)
   Scalar amplitude;           // top term of iota(P) at the standard point
   Rational hessian_det;       // det A, A the Hessian of h / pi
   Poly fiber_poly;            // P, the coefficient of the restricted phi
   LeadingTerm term;
};

FiberAssembly fiber_assembly(DualPairCase const& c);

struct LeadingMismatch : std::runtime_error
{
   LeadingTerm closed_form;
   LeadingTerm rederived;
   LeadingMismatch(LeadingTerm a, LeadingTerm b);
};

// Re-derives the leading term from the cocycle and the geometry; throws
// LeadingMismatch if it differs from the closed form.
LeadingTerm fiber_leading_from_cocycle(DualPairCase const& c);

// Fiber integral of A(1,1,1,0) as a Laplace problem on the 2-dimensional
// normal space: the pullback of phi along Y -> exp(Y) z0 evaluated at
// exp(-Y) x t, including the Jacobian of the exponential map and the
// (-i/2) volume convention.  J(t) is quadrature(p, t * t) and its leading
// term laplace_leading(p, t * t).  Throws std::invalid_argument for other
// cases.
LaplaceProblem fiber_problem(DualPairCase const& c, double t);

// det(sinh(ad Y) / ad Y) on p0, the Jacobian of Y -> exp(Y) z0.
double exp_jacobian(DualPairCase const& c, TangentVector const& y);

} // namespace weil

#endif
