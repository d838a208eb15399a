// SPDX-License-Identifier: MIT
//
// src/geometry.cpp
//

#include "weil/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace weil
{

using cd = std::complex<double>;

// ---------------------------------------------------------------- normal space

TangentVector TangentVector::zero(DualPairCase const& c)
{
   auto n = c.index_set().size();
   return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

Eigen::VectorXd TangentVector::coords() const
{
   Eigen::VectorXd v(x.size() + y.size());
   for (std::size_t i = 0; i < x.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = x[i];
   for (std::size_t i = 0; i < y.size(); ++i)
      v(static_cast<Eigen::Index>(x.size() + i)) = y[i];
   return v;
}

TangentVector TangentVector::from_coords(Eigen::VectorXd const& v)
{
   auto half = v.size() / 2;
   TangentVector t;
   for (Eigen::Index i = 0; i < half; ++i)
   {
      t.x.push_back(v(i));
      t.y.push_back(v(half + i));
   }
   return t;
}

Eigen::MatrixXcd TangentVector::matrix(DualPairCase const& c) const
{
   auto idx = c.index_set();
   if (x.size() != idx.size() || y.size() != idx.size())
      throw std::invalid_argument("tangent vector has the wrong number of coordinates for " + c.label());
   Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c.rows(), c.rows());
   for (std::size_t s = 0; s < idx.size(); ++s)
   {
      if (x[s] != 0.0)
         m += x[s] * normal_generator(c, idx[s], false);
      if (y[s] != 0.0)
         m += y[s] * normal_generator(c, idx[s], true);
   }
   return m;
}

Eigen::MatrixXcd p_plus_matrix(DualPairCase const& c, std::pair<int, int> slot)
{
   Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c.rows(), c.rows());
   auto [a, b] = slot;
   if (c.tag == DualPairCase::A)
      m(a - 1, b - 1) = 1.0;
   else if (c.tag == DualPairCase::B)
   {
      // e_{b, a+n} + e_{a, b+n}
      m(b - 1, a + c.n - 1) += 1.0;
      m(a - 1, b + c.n - 1) += 1.0;
   }
   else
   {
      // e_{a, b+n} - e_{b, a+n}
      m(a - 1, b + c.n - 1) += 1.0;
      m(b - 1, a + c.n - 1) -= 1.0;
   }
   return m;
}

Eigen::MatrixXcd normal_generator(DualPairCase const& c, std::pair<int, int> slot, bool imag)
{
   Eigen::MatrixXcd xp = p_plus_matrix(c, slot);
   Eigen::MatrixXcd xa = xp.adjoint();
   if (imag)
      return -(xp + xa);
   return cd(0, 1) * (xp - xa);
}

bool in_p0_pattern(DualPairCase const& c, Eigen::MatrixXcd const& m, double tol)
{
   int n = c.rows(), k = c.npos();
   if (m.rows() != n || m.cols() != n)
      return false;
   if (m.topLeftCorner(k, k).norm() > tol || m.bottomRightCorner(n - k, n - k).norm() > tol)
      return false;
   Eigen::MatrixXcd a = m.topRightCorner(k, n - k);
   if ((m.bottomLeftCorner(n - k, k) - a.adjoint()).norm() > tol)
      return false;
   if (c.tag == DualPairCase::B)
      return (a - a.transpose()).norm() <= tol;
   if (c.tag == DualPairCase::C)
      return (a + a.transpose()).norm() <= tol;
   return true;
}

MajorantContext MajorantContext::standard(DualPairCase const& c)
{
   c.validate();
   Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(c.rows(), c.cols());
   for (int j = 0; j < c.r; ++j)
      x(j, j) = 1.0;
   if (c.tag == DualPairCase::A)
      for (int j = 0; j < c.s; ++j)
         x(c.p + j, c.r + j) = 1.0;
   return {c, x};
}

// ---------------------------------------------------------------- spectra

Spectral spectral(Eigen::MatrixXcd const& x, double tol)
{
   if (x.rows() != x.cols())
      throw std::invalid_argument("spectral: matrix is not square");
   if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("spectral: matrix is not Hermitian");
   Eigen::MatrixXcd h = 0.5 * (x + x.adjoint());
   Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
   if (es.info() != Eigen::Success)
      throw std::runtime_error("spectral: eigendecomposition failed");
   Spectral out;
   auto const& vals = es.eigenvalues();
   auto const& vecs = es.eigenvectors();
   for (Eigen::Index k = 0; k < vals.size(); ++k)
   {
      Eigen::MatrixXcd proj = vecs.col(k) * vecs.col(k).adjoint();
      if (!out.values.empty() && std::abs(vals(k) - out.values.back()) < tol)
         out.projections.back() += proj;
      else
      {
         out.values.push_back(vals(k));
         out.projections.push_back(proj);
      }
   }
   return out;
}

Eigen::VectorXcd exp_apply(Eigen::MatrixXcd const& x, double t, Eigen::VectorXcd const& v, Spectral* data)
{
   Spectral sp = spectral(x);
   Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
   for (std::size_t k = 0; k < sp.values.size(); ++k)
      out += std::exp(-t * sp.values[k]) * (sp.projections[k] * v);
   if (data)
      *data = std::move(sp);
   return out;
}

Eigen::VectorXcd exp_apply(DualPairCase const& c, TangentVector const& x, double t, Eigen::VectorXcd const& v)
{
   return exp_apply(x.matrix(c), t, v);
}

// ---------------------------------------------------------------- majorant

namespace
{

// ||p_lambda(x_j)||^2 summed over j, per eigenvalue.
std::vector<double> weights(MajorantContext const& ctx, Spectral const& sp)
{
   std::vector<double> w;
   for (auto const& p : sp.projections)
      w.push_back((p * ctx.x).squaredNorm());
   return w;
}

double majorant_from(Spectral const& sp, std::vector<double> const& w, double t)
{
   double s = 0;
   for (std::size_t k = 0; k < w.size(); ++k)
      s += w[k] * std::exp(-2.0 * t * sp.values[k]);
   return s;
}

} // namespace

double majorant(MajorantContext const& ctx, TangentVector const& x, double t)
{
   Spectral sp = spectral(x.matrix(ctx.c));
   return majorant_from(sp, weights(ctx, sp), t);
}

double h_function(MajorantContext const& ctx, TangentVector const& y)
{
   return std::numbers::pi * majorant(ctx, y, 1.0);
}

double f_function(MajorantContext const& ctx, TangentVector const& x)
{
   Spectral sp = spectral(x.matrix(ctx.c));
   auto w = weights(ctx, sp);
   double f = 0;
   for (std::size_t k = 0; k < w.size(); ++k)
      if (sp.values[k] < 0)
         f -= w[k] * sp.values[k];
   return f;
}

TangentVector random_unit_normal(MajorantContext const& ctx, std::mt19937_64& rng)
{
   std::normal_distribution<double> nd;
   Eigen::VectorXd v(ctx.normal_dim());
   do
   {
      for (Eigen::Index i = 0; i < v.size(); ++i)
         v(i) = nd(rng);
   } while (v.norm() < 1e-12);
   return TangentVector::from_coords(v / v.norm());
}

DecayConstants decay_constants(MajorantContext const& ctx, int samples, std::uint64_t seed, int normals, double tmax,
                               double step)
{
   if (samples < 1 || normals < 1 || step <= 0 || tmax < 0)
      throw std::invalid_argument("decay_constants: bad sampling parameters");
   DecayConstants out;
   out.samples = samples;
   out.terms = ctx.n() * ctx.m();
   std::mt19937_64 rng(seed);
   double cmin = std::numeric_limits<double>::infinity();
   for (int i = 0; i < samples; ++i)
      cmin = std::min(cmin, f_function(ctx, random_unit_normal(ctx, rng)));
   out.sphere_min = cmin;
   out.c = cmin / out.terms;
   double xmax = 0;
   for (Eigen::Index j = 0; j < ctx.x.cols(); ++j)
      xmax = std::max(xmax, ctx.x.col(j).squaredNorm());
   out.b = out.c / xmax;
   if (!(out.c > 0))
      throw CertificateError("decay_constants: sampled minimum of f is not positive", {});

   std::mt19937_64 fresh(seed ^ 0x9e3779b97f4a7c15ULL);
   out.worst_ratio = std::numeric_limits<double>::infinity();
   CertificateRow worst;
   int steps = static_cast<int>(std::floor(tmax / step + 1e-9));
   for (int id = 0; id < normals; ++id)
   {
      TangentVector x = random_unit_normal(ctx, fresh);
      Spectral sp = spectral(x.matrix(ctx.c));
      auto w = weights(ctx, sp);
      for (int k = 0; k <= steps; ++k)
      {
         double t = k * step;
         CertificateRow row{id, t, majorant_from(sp, w, t), out.c * std::exp(2.0 * out.b * t)};
         out.grid.push_back(row);
         double ratio = row.m / row.bound;
         if (ratio < out.worst_ratio)
         {
            out.worst_ratio = ratio;
            worst = row;
         }
      }
   }
   if (out.worst_ratio < 1.0)
   {
      std::ostringstream os;
      os << "decay_constants: bound fails at normal " << worst.id << ", t = " << worst.t << " (M = " << worst.m
         << ", bound = " << worst.bound << ")";
      throw CertificateError(os.str(), worst);
   }
   return out;
}

// ---------------------------------------------------------------- Hessian

namespace
{

double m_at(MajorantContext const& ctx, Eigen::VectorXd const& y)
{
   return majorant(ctx, TangentVector::from_coords(y), 1.0);
}

} // namespace

Eigen::MatrixXd hessian_closed_form(DualPairCase const& c)
{
   if (c.tag != DualPairCase::A)
      throw std::invalid_argument("hessian_closed_form: only case A has a closed form");
   auto idx = c.index_set();
   auto n = static_cast<Eigen::Index>(idx.size());
   Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
   for (Eigen::Index s = 0; s < n; ++s)
   {
      auto [a, mu] = idx[static_cast<std::size_t>(s)];
      double v = (a <= c.r ? 4.0 : 0.0) + (mu <= c.p + c.s ? 4.0 : 0.0);
      h(s, s) = v;
      h(n + s, n + s) = v;
   }
   return h;
}

Eigen::VectorXd gradient_fd(MajorantContext const& ctx, double step)
{
   auto d = ctx.normal_dim();
   Eigen::VectorXd g(d);
   for (int i = 0; i < d; ++i)
   {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e(i) = step;
      g(i) = (m_at(ctx, e) - m_at(ctx, -e)) / (2 * step);
   }
   return g;
}

Eigen::MatrixXd hessian_fd(MajorantContext const& ctx, double step)
{
   auto d = ctx.normal_dim();
   Eigen::MatrixXd h(d, d);
   double m0 = m_at(ctx, Eigen::VectorXd::Zero(d));
   for (int i = 0; i < d; ++i)
   {
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(d);
      ei(i) = step;
      h(i, i) = (m_at(ctx, ei) - 2 * m0 + m_at(ctx, -ei)) / (step * step);
      for (int j = 0; j < i; ++j)
      {
         Eigen::VectorXd ej = Eigen::VectorXd::Zero(d);
         ej(j) = step;
         double v = (m_at(ctx, ei + ej) - m_at(ctx, ei - ej) - m_at(ctx, ej - ei) + m_at(ctx, -ei - ej)) /
                    (4 * step * step);
         h(i, j) = v;
         h(j, i) = v;
      }
   }
   return h;
}

Eigen::MatrixXd hessian_of_h(MajorantContext const& ctx, double step)
{
   Eigen::VectorXd g = gradient_fd(ctx, step);
   if (g.cwiseAbs().maxCoeff() >= 1e-8)
      throw std::runtime_error("hessian_of_h: gradient at 0 does not vanish");
   Eigen::MatrixXd fd = hessian_fd(ctx, step);
   Eigen::MatrixXd h = fd;
   if (ctx.c.tag == DualPairCase::A)
   {
      h = hessian_closed_form(ctx.c);
      double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
      if ((h - fd).cwiseAbs().maxCoeff() > 1e-5 * scale)
         throw std::runtime_error("hessian_of_h: closed form and finite differences disagree");
   }
   Eigen::LLT<Eigen::MatrixXd> llt(h);
   if (llt.info() != Eigen::Success)
      throw std::runtime_error("hessian_of_h: Hessian is not positive definite");
   return h;
}

} // namespace weil
