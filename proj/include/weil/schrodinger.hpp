// SPDX-License-Identifier: MIT
//
// weil/schrodinger.hpp
//
// The intertwiner iota from the Fock model to the Schrodinger model
// S(V^m).  Vectors in the image are p(z, zbar) * phi0 with
// phi0 = exp(-pi sum |z_{ka}|^2); a GaussPoly stores only the polynomial
// factor p.  Operators on the image are written as operators on p, i.e.
// conjugated by multiplication with phi0.
//

#ifndef WEIL_SCHRODINGER_HPP
#define WEIL_SCHRODINGER_HPP

#include "weil/fock.hpp"

#include <Eigen/Dense>

#include <complex>

namespace weil
{

struct GaussPoly
{
   Poly poly;   // in Var::z / Var::zb only

   GaussPoly conj() const { return {poly.conj()}; }
   friend bool operator==(GaussPoly const& a, GaussPoly const& b) { return a.poly == b.poly; }
};

using EvalPoint = Eigen::MatrixXcd;   // (p+q) x m, entry (k-1, a-1) is z_{ka}

// iota(u) iota^{-1} for a Fock variable, acting on the polynomial factor.
DiffOperator iota_creation(DualPairCase const& c, Var u);
// iota(-4 pi d/du) iota^{-1}, acting on the polynomial factor.
DiffOperator iota_annihilation(DualPairCase const& c, Var u);

GaussPoly iota(DualPairCase const& c, Poly const& p);

// The terms whose degree in every variable pair (z_{ka}, zbar_{ka}) is the
// maximum over all terms.  When no single term attains all the maxima, the
// terms of maximal total degree are returned instead.
GaussPoly highest_term(GaussPoly const& g);

// A real coordinate of V^m: x_{ka} (imag = false) or y_{ka} (imag = true),
// with z_{ka} = x_{ka} + i y_{ka}.
struct RealCoord
{
   int k = 1;
   int a = 1;
   bool imag = false;
};

enum class SchrodingerDirection { E, F };

// rho(e_j) = d/dx_j and rho(f_j) = 2 pi i x_j, on the polynomial factor.
DiffOperator schrodinger_action(SchrodingerDirection dir, RealCoord j);

// Image of a GaussPoly under m'(t Id): the function
// scale^kappa * poly(z) * exp(-pi scale^2 |z|^2).
struct DilatedGaussPoly
{
   Poly poly;
   Rational scale{1};
   int kappa = 0;

   friend bool operator==(DilatedGaussPoly const& a, DilatedGaussPoly const& b)
   {
      return a.poly == b.poly && a.scale == b.scale && a.kappa == b.kappa;
   }
};

// Exponent e of the modulus factor t^e of m'(t Id): (p+q)(r+s) in case A,
// 2nr in cases B and C.
int modulus_exponent(DualPairCase const& c);

// m'(t Id) with t > 0; throws std::invalid_argument otherwise.
DilatedGaussPoly siegel_dilate(DualPairCase const& c, Rational const& t, GaussPoly const& g);
DilatedGaussPoly siegel_dilate(DualPairCase const& c, Rational const& t, DilatedGaussPoly const& g);

// n'(b) acts by the scalar psi(tr(b beta) / 2) with psi(x) = exp(2 pi i x).
// Throws std::invalid_argument if tr(b beta) is not real (the phase would
// not be unimodular).
std::complex<double> siegel_unipotent_phase(Eigen::MatrixXcd const& b, Eigen::MatrixXcd const& beta);

std::complex<double> evaluate(Poly const& p, EvalPoint const& pt);
std::complex<double> evaluate(GaussPoly const& g, EvalPoint const& pt);
std::complex<double> evaluate(DilatedGaussPoly const& g, EvalPoint const& pt);

// Standard point x of the fiber computation, as a (rows x m) complex matrix.
EvalPoint standard_point(DualPairCase const& c);

} // namespace weil

#endif
