// SPDX-License-Identifier: MIT
//
// weil/geometry.hpp
//
// Numeric geometry of the symmetric space D at the base point z0.  All
// matrices are written in the (,)_{z0}-orthonormal basis v_1, ..., v_n of V,
// so elements of p0 are Hermitian matrices and ||v||_{z0} is the Euclidean
// norm of the coordinate vector.
//

#ifndef WEIL_GEOMETRY_HPP
#define WEIL_GEOMETRY_HPP

#include "weil/fock.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace weil
{

// Element of the normal space N_{z0} D_{U,z0'}: X = sum x_s E_s + y_s F_s
// over the slots s of the index set I.  With X_s the p+ matrix of slot s,
// E_s = i (X_s - X_s^*) and F_s = -(X_s + X_s^*).  In case A this gives
// E v_alpha = -i v_mu, E v_mu = i v_alpha, F v_alpha = -v_mu, F v_mu = -v_alpha.
struct TangentVector
{
   std::vector<double> x;
   std::vector<double> y;

   static TangentVector zero(DualPairCase const& c);
   // Coordinate vector (x_1, ..., x_N, y_1, ..., y_N).
   Eigen::VectorXd coords() const;
   static TangentVector from_coords(Eigen::VectorXd const& v);
   double norm() const { return coords().norm(); }
   Eigen::MatrixXcd matrix(DualPairCase const& c) const;
};

// The p+ matrix X_s of a slot of I.
Eigen::MatrixXcd p_plus_matrix(DualPairCase const& c, std::pair<int, int> slot);
// E_s (imag = false) or F_s (imag = true).
Eigen::MatrixXcd normal_generator(DualPairCase const& c, std::pair<int, int> slot, bool imag);
// Whether M = [[0, A], [A^*, 0]] with A of the case's shape (A^t = A in
// case B, A^t = -A in case C).
bool in_p0_pattern(DualPairCase const& c, Eigen::MatrixXcd const& m, double tol = 1e-12);

struct MajorantContext
{
   DualPairCase c;
   Eigen::MatrixXcd x;   // n x m, column j is x_j

   // x = (v_1, ..., v_r, v_{p+1}, ..., v_{p+s}) in case A and
   // (v_1, ..., v_r) in cases B and C.
   static MajorantContext standard(DualPairCase const& c);
   int n() const { return static_cast<int>(x.rows()); }
   int m() const { return static_cast<int>(x.cols()); }
   int normal_dim() const { return 2 * static_cast<int>(c.index_set().size()); }
};

// Eigenvalues of a Hermitian matrix with the spectral projections; eigenvalues
// closer than tol are merged and their projections summed.
struct Spectral
{
   std::vector<double> values;
   std::vector<Eigen::MatrixXcd> projections;
};

// Throws std::invalid_argument if X is not Hermitian to 1e-12.
Spectral spectral(Eigen::MatrixXcd const& x, double tol = 1e-9);

// exp(-t X) v through the spectral decomposition.
Eigen::VectorXcd exp_apply(Eigen::MatrixXcd const& x, double t, Eigen::VectorXcd const& v, Spectral* data = nullptr);
Eigen::VectorXcd exp_apply(DualPairCase const& c, TangentVector const& x, double t, Eigen::VectorXcd const& v);

// M_{z0}(exp(tX) z0, x) = sum_j ||exp(-tX) x_j||^2.
double majorant(MajorantContext const& ctx, TangentVector const& x, double t);
// h(Y) = pi * M_{z0}(exp(Y) z0, x).
double h_function(MajorantContext const& ctx, TangentVector const& y);
// f(X) = -sum_j sum_{lambda < 0} ||p_lambda(x_j)||^2 lambda.
double f_function(MajorantContext const& ctx, TangentVector const& x);

// Uniform sample of the unit sphere in the (x, y) coordinates.
TangentVector random_unit_normal(MajorantContext const& ctx, std::mt19937_64& rng);

struct CertificateRow
{
   int id = 0;
   double t = 0;
   double m = 0;
   double bound = 0;
};

struct DecayConstants
{
   double b = 0;
   double c = 0;
   double sphere_min = 0;   // sampled minimum C of f on the unit sphere
   int terms = 0;           // N = n m
   int samples = 0;
   std::vector<CertificateRow> grid;
   double worst_ratio = 0;  // min over the grid of M / (c e^{2bt})
};

struct CertificateError : std::runtime_error
{
   CertificateRow witness;
   CertificateError(std::string const& what, CertificateRow w) : std::runtime_error(what), witness(w) {}
};

// b, c from the sampled minimum C of f: c = C/N, b = c / max_j ||x_j||^2,
// then certifies M >= c e^{2bt} for `normals` fresh unit normals and
// t in {0, step, ..., tmax}.  Throws CertificateError with the worst grid
// point when the bound fails.
DecayConstants decay_constants(MajorantContext const& ctx, int samples = 2000, std::uint64_t seed = 1, int normals = 200,
                               double tmax = 5.0, double step = 0.5);

// Hessian at 0 of Y -> M_{z0}(exp(Y) z0, x) = h(Y)/pi in the coordinates
// (x_1, ..., x_N, y_1, ..., y_N).  Case A uses the closed form and checks
// it against central differences; cases B and C use central differences.
// Throws std::runtime_error if the gradient at 0 exceeds 1e-8, the two
// computations differ by more than 1e-5 relative, or the result is not
// positive definite.
Eigen::MatrixXd hessian_of_h(MajorantContext const& ctx, double step = 1e-4);
Eigen::MatrixXd hessian_closed_form(DualPairCase const& c);
Eigen::MatrixXd hessian_fd(MajorantContext const& ctx, double step = 1e-4);
Eigen::VectorXd gradient_fd(MajorantContext const& ctx, double step = 1e-4);

} // namespace weil

#endif
