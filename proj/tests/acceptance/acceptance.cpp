// SPDX-License-Identifier: MIT
//
// tests/acceptance/acceptance.cpp
//
// Acceptance suite: one PASS / FAIL line per criterion.  Expected values are
// either printed closed forms (weights, determinants, leading terms) written
// out below or independent oracles (reference operators, finite differences,
// numeric integration).  Exit status is 0 iff every criterion passes.
//
// Usage: acceptance [criterion ...]   (default: all)
//

#include "reference_actions.hpp"
#include "weil/cocycle.hpp"
#include "weil/geometry.hpp"
#include "weil/laplace.hpp"
#include "weil/schrodinger.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace weil;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failures of one criterion; the first few are reported.
struct Log
{
   int checks = 0;
   std::vector<std::string> failures;
   std::string note;

   void expect(bool ok, std::string const& what)
   {
      ++checks;
      if (!ok)
         failures.push_back(what);
   }
   bool ok() const { return failures.empty(); }
};

std::vector<DualPairCase> desk_cases()
{
   return {DualPairCase::make_a(2, 1, 1, 1), DualPairCase::make_a(2, 2, 1, 1), DualPairCase::make_b(2, 1),
           DualPairCase::make_c(3, 1)};
}

LieElt const& find(std::vector<LieElt> const& v, std::string const& label)
{
   for (auto const& e : v)
      if (e.label == label)
         return e;
   throw std::runtime_error("no basis element " + label);
}

std::string lbl(std::string const& pre, int a, int b) { return pre + std::to_string(a) + "," + std::to_string(b); }

bool agree_on_monomials(DiffOperator const& x, DiffOperator const& y, std::vector<Var> const& vars)
{
   for (auto const& m : monomials_up_to(vars, 3))
   {
      Poly p(m, Scalar(1));
      if (apply(x, p) != apply(y, p))
         return false;
   }
   return true;
}

std::string weight_str(Weight const& w)
{
   std::ostringstream os;
   os << "(";
   for (std::size_t i = 0; i < w.size(); ++i)
      os << (i ? "," : "") << w[i].get_str();
   os << ")";
   return os.str();
}

// blocks of (value, multiplicity)
Weight repeat(std::vector<std::pair<Rational, int>> const& blocks)
{
   Weight w;
   for (auto const& [v, k] : blocks)
      for (int i = 0; i < k; ++i)
         w.push_back(v);
   return w;
}

Rational half(long k) { return make_rational(k, 2); }

// ---------------------------------------------------------------- 1

void normalization_lock(Log& log)
{
   auto t0 = Clock::now();
   for (auto const& c : desk_cases())
   {
      auto const& lb = lie_basis(c);
      auto vm = fock_variables(c, Sector::Minus);
      auto vp = fock_variables(c, Sector::Plus);
      int m = c.cols();
      if (c.tag == DualPairCase::A)
      {
         for (int i = 1; i <= c.rows(); ++i)
            for (int j = 1; j <= c.rows(); ++j)
               if ((i <= c.p) == (j <= c.p))
                  log.expect(agree_on_monomials(lie_action(c, find(lb.k, lbl("e_", i, j)), Sector::Minus),
                                                ref::a_k_minus(c, i, j), vm),
                             c.label() + " " + lbl("e_", i, j));
         for (int k = 1; k <= m; ++k)
            for (int l = 1; l <= m; ++l)
            {
               log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, lbl("kp-e_", k, l))),
                                             ref::a_kp_minus(c, k, l), vm),
                          c.label() + " " + lbl("kp-e_", k, l));
               log.expect(agree_on_monomials(lie_action(c, find(lb.kp_plus, lbl("kp+e_", k, l))),
                                             ref::a_kp_plus(c, k, l), vp),
                          c.label() + " " + lbl("kp+e_", k, l));
            }
         continue;
      }
      for (int a = 1; a <= c.n; ++a)
         for (int b = 1; b <= c.n; ++b)
            log.expect(agree_on_monomials(lie_action(c, find(lb.k, lbl("k_", a, b)), Sector::Minus),
                                          ref::bc_k_minus(c, a, b), vm),
                       c.label() + " " + lbl("k_", a, b));
      for (int k = 1; k <= m; ++k)
         for (int l = 1; l <= m; ++l)
         {
            std::string ks = std::to_string(k), ls = std::to_string(l);
            if (c.tag == DualPairCase::B)
            {
               log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, "kp-w'" + ks + "^w''" + ls)),
                                             ref::b_wp_wpp(c, k, l), vm),
                          c.label() + " w'^w''");
               if (k < l)
               {
                  log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, "kp-w'" + ks + "^w'" + ls)),
                                                ref::b_wp_wp(c, k, l), vm),
                             c.label() + " w'^w'");
                  log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, "kp-w''" + ks + "^w''" + ls)),
                                                ref::b_wpp_wpp(c, k, l), vm),
                             c.label() + " w''^w''");
               }
            }
            else
            {
               log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, lbl("kp-a_", k, l))),
                                             ref::c_diag_block(c, k, l), vm),
                          c.label() + " " + lbl("kp-a_", k, l));
               if (k <= l)
               {
                  log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, lbl("kp-b_", k, l))),
                                                ref::c_upper_block(c, k, l), vm),
                             c.label() + " " + lbl("kp-b_", k, l));
                  log.expect(agree_on_monomials(lie_action(c, find(lb.kp_minus, lbl("kp-c_", k, l))),
                                                ref::c_lower_block(c, k, l), vm),
                             c.label() + " " + lbl("kp-c_", k, l));
               }
            }
         }
   }
   double el = seconds_since(t0);
   log.expect(el < 30, "runtime " + std::to_string(el) + " s");
   log.note = "limit 30 s";
}

// ---------------------------------------------------------------- 2

struct PrintedWeights
{
   Weight e, f, kprime_f, kprime_phi_minus;
};

// The printed tuples: b-weights of e_{D_U} and f_{D_U}, the k'-weight of
// f_{D_U} under the negative-sector torus and the lowest weight of phi-.
PrintedWeights printed_weights(DualPairCase const& c)
{
   PrintedWeights w;
   if (c.tag == DualPairCase::A)
   {
      int p = c.p, q = c.q, r = c.r, s = c.s;
      Rational d = half(r - s);
      w.e = repeat({{q, r}, {s, p - r}, {-p, s}, {-r, q - s}});
      w.f = repeat({{q + d, r}, {half(r + s), p - r}, {d - p, s}, {-half(r + s), q - s}});
      w.kprime_f = repeat({{-s + half(p + q), r}, {r - half(p + q), s}});
      w.kprime_phi_minus = repeat({{s - half(p + q), r}, {-r + half(p + q), s}});
      return w;
   }
   int n = c.n, r = c.r;
   int e = c.tag == DualPairCase::B ? n - r + 1 : n - r - 1;
   w.e = repeat({{c.tag == DualPairCase::B ? n + 1 : n - 1, r}, {r, n - r}});
   w.f = w.e;
   w.kprime_f = repeat({{e, r}});
   w.kprime_phi_minus = repeat({{-e, r}});
   return w;
}

void weights(Log& log)
{
   std::vector<DualPairCase> cases = desk_cases();
   for (auto c : {DualPairCase::make_a(1, 1, 1, 0), DualPairCase::make_a(2, 1, 1, 0), DualPairCase::make_a(3, 1, 2, 1),
                  DualPairCase::make_b(3, 1), DualPairCase::make_c(3, 2)})
      cases.push_back(c);
   int mismatches = 0;
   for (auto const& c : cases)
   {
      auto pw = printed_weights(c);
      Poly f = special_harmonic(c, Side::Plus);
      auto we = ext_weight(c, top_wedge(c, Side::Plus), Side::Plus);
      auto wf = weight_of(c, f, Torus::K, 0, Sector::Minus);
      auto wkf = weight_of(c, f, Torus::KPrimeMinus, 0, Sector::Minus);
      auto wphi = weight_of(c, special_harmonic(c, Side::Minus), Torus::KPrimePlus, 0, Sector::Plus);
      auto check = [&](bool ok, Weight const& got, Weight const& want, std::string const& what) {
         bool eq = ok && got == want;
         if (!eq)
            ++mismatches;
         log.expect(eq, c.label() + " " + what + ": got " + (ok ? weight_str(got) : "no weight") + ", printed " +
                           weight_str(want));
      };
      check(we.has_value(), we.value_or(Weight{}), pw.e, "e_{D_U}");
      check(wf.ok, wf.weight, pw.f, "f_{D_U}");
      check(wkf.ok, wkf.weight, pw.kprime_f, "k' weight of f_{D_U}");
      check(wphi.ok, wphi.weight, pw.kprime_phi_minus, "lowest k' weight of phi-");
      // e and f differ by the det shift in case A and agree in B and C
      if (we && wf.ok)
      {
         Weight shifted = wf.weight;
         for (auto& x : shifted)
            x += det_shift(c, Side::Plus);
         log.expect(shifted == *we, c.label() + " shifted f weight differs from e weight");
      }
   }
   log.note = std::to_string(cases.size()) + " cases";
}

// ---------------------------------------------------------------- 3

void annihilation(Log& log)
{
   for (auto const& c : desk_cases())
   {
      Poly f = special_harmonic(c, Side::Plus);
      auto n = annihilated_by(c, f, Subalgebra::N, Sector::Minus);
      log.expect(n.ok, c.label() + " f_{D_U} under n: " + n.failing_generator);
      auto np = annihilated_by(c, f, Subalgebra::KPrimeN, Sector::Minus);
      log.expect(np.ok, c.label() + " f_{D_U} under n of k': " + np.failing_generator);
      Cochain phi = build_phi(c, PhiKind::Plus);
      for (auto const& [key, poly] : phi.terms())
      {
         auto pm = annihilated_by(c, poly, Subalgebra::PMinus, Sector::Minus);
         log.expect(pm.ok, c.label() + " phi+ value under p-: " + pm.failing_generator);
      }
      auto rep = check_invariance(c, phi, Side::Plus);
      log.expect(rep.ok, c.label() + " phi+ invariance: " + rep.witness);
   }
}

// ---------------------------------------------------------------- 4

void closedness(Log& log)
{
   std::ostringstream notes;
   notes << std::fixed;
   notes.precision(1);
   for (auto const& c : desk_cases())
   {
      auto t0 = Clock::now();
      Cochain plus = build_phi(c, PhiKind::Plus);
      Cochain minus = build_phi(c, PhiKind::Minus);
      Cochain full = build_phi(c, PhiKind::Full);
      log.expect(rel_differential(c, plus, Sector::Minus).is_zero(), c.label() + " d phi+ != 0");
      log.expect(rel_differential(c, minus, Sector::Plus).is_zero(), c.label() + " d phi- != 0");
      log.expect(rel_differential(c, full).is_zero(), c.label() + " d phi != 0");
      double el = seconds_since(t0);
      log.expect(el < 300, c.label() + " runtime " + std::to_string(el) + " s");
      notes << c.label() << " " << el << " s; ";
   }
   log.note = notes.str();
}

// ---------------------------------------------------------------- 5

void restriction(Log& log)
{
   std::vector<DualPairCase> cases = desk_cases();
   for (auto c : {DualPairCase::make_a(1, 1, 1, 0), DualPairCase::make_a(3, 1, 2, 1), DualPairCase::make_b(2, 2),
                  DualPairCase::make_c(3, 2)})
      cases.push_back(c);
   for (auto const& c : cases)
   {
      ExtKey key;
      for (auto const& [a, b] : c.index_set())
         key.push_back({ExtIndex::XiPrime, a, b});
      Cochain expect;
      expect.add_term(key, special_harmonic(c, Side::Plus));
      log.expect(restrict_to_fiber(c, build_phi(c, PhiKind::Plus)) == expect, c.label() + " restricted phi+");
   }
   log.note = std::to_string(cases.size()) + " cases";
}

// ---------------------------------------------------------------- 6

// Top term of iota(u): -2 sqrt2 pi z for u+ and +2 sqrt2 pi zbar for u- on
// the alpha rows, with z and zbar exchanged on the mu rows.
Poly top_factor(DualPairCase const& c, Var u)
{
   Scalar k = Scalar(2) * Scalar::sqrt2() * Scalar::pi();
   bool alpha = c.is_alpha(u.row);
   Poly z(Var::z(u.row, u.col)), zb(Var::zb(u.row, u.col));
   if (u.kind == Var::UPlus)
      return -k * (alpha ? z : zb);
   return k * (alpha ? zb : z);
}

void intertwiner(Log& log)
{
   int count = 0;
   for (auto const& c : desk_cases())
   {
      auto monos = monomials_up_to(fock_variables(c), 3);
      for (auto const& w : weyl_basis(c))
      {
         auto role = weyl_role(c, w);
         DiffOperator fock = weyl_action(c, w);
         DiffOperator schr = role.creation ? iota_creation(c, role.var) : iota_annihilation(c, role.var);
         for (auto const& m : monos)
         {
            Poly p(m, Scalar(1));
            log.expect(iota(c, apply(fock, p)).poly == apply(schr, iota(c, p).poly),
                       c.label() + " intertwining fails for " + role.var.name());
            ++count;
         }
      }
      for (auto const& m : monos)
      {
         Poly expect(1);
         for (auto const& [v, e] : m.entries())
            expect *= top_factor(c, v).pow(e);
         log.expect(highest_term(iota(c, Poly(m, Scalar(1)))).poly == expect, c.label() + " highest term");
      }
   }
   log.note = std::to_string(count) + " generator-monomial pairs";
}

// ---------------------------------------------------------------- 7

void hessian(Log& log)
{
   std::vector<DualPairCase> cases = {DualPairCase::make_a(1, 1, 1, 0), DualPairCase::make_a(2, 1, 1, 1),
                                      DualPairCase::make_a(2, 2, 1, 1), DualPairCase::make_a(3, 1, 2, 1),
                                      DualPairCase::make_a(2, 2, 2, 0)};
   for (auto const& c : cases)
   {
      auto ctx = MajorantContext::standard(c);
      Eigen::MatrixXd closed = hessian_closed_form(c);
      Eigen::MatrixXd fd = hessian_fd(ctx);
      // the analytic form is diagonal with entries 4 and 8
      bool shape = closed.isDiagonal();
      for (Eigen::Index i = 0; i < closed.rows(); ++i)
         shape = shape && (closed(i, i) == 4.0 || closed(i, i) == 8.0);
      log.expect(shape, c.label() + " closed-form Hessian is not diag{4,8}");
      double rel = (closed - fd).cwiseAbs().maxCoeff() / closed.cwiseAbs().maxCoeff();
      log.expect(rel < 1e-5, c.label() + " finite differences differ by " + std::to_string(rel));
      // exact determinant: product of the integer diagonal entries
      mpz_class det = 1;
      for (Eigen::Index i = 0; i < closed.rows(); ++i)
         det *= static_cast<long>(closed(i, i));
      mpz_class want;
      mpz_ui_pow_ui(want.get_mpz_t(), 4, static_cast<unsigned long>(2 * c.r * c.q + 2 * c.p * c.s - c.r * c.s));
      log.expect(det == want, c.label() + " det " + det.get_str() + " != " + want.get_str());
      double g = gradient_fd(ctx).cwiseAbs().maxCoeff();
      log.expect(g < 1e-8, c.label() + " gradient " + std::to_string(g));
   }
   mpz_class d = 1;
   Eigen::MatrixXd h = hessian_closed_form(DualPairCase::make_a(2, 2, 1, 1));
   for (Eigen::Index i = 0; i < h.rows(); ++i)
      d *= static_cast<long>(h(i, i));
   log.expect(d == 16384, "A(2,2,1,1) det is not 4^7");
   log.note = "A(2,2,1,1) det " + d.get_str();
}

// ---------------------------------------------------------------- 8

void fiber(Log& log)
{
   std::vector<DualPairCase> sweep = {DualPairCase::make_a(2, 1, 1, 1), DualPairCase::make_a(2, 2, 1, 1),
                                      DualPairCase::make_a(3, 1, 2, 1), DualPairCase::make_b(2, 1),
                                      DualPairCase::make_b(3, 1),       DualPairCase::make_c(3, 1)};
   int matched = 0;
   for (auto const& c : sweep)
   {
      LeadingTerm closed = fiber_leading_closed_form(c);
      LeadingTerm derived = fiber_assembly(c).term;
      log.expect(std::abs(closed.coefficient()) > 0, c.label() + " closed-form coefficient vanishes");
      log.expect(std::abs(derived.coefficient()) > 0, c.label() + " re-derived coefficient vanishes");
      bool eq = closed == derived;
      matched += eq;
      log.expect(eq, c.label() + ": printed " + closed.str() + ", re-derived " + derived.str());
   }
   log.note = std::to_string(matched) + "/" + std::to_string(sweep.size()) + " match";
}

// ---------------------------------------------------------------- 9

LaplaceProblem toy(int n, std::function<std::complex<double>(Eigen::VectorXd const&)> f)
{
   LaplaceProblem p;
   p.n = n;
   p.f = std::move(f);
   p.h = [](Eigen::VectorXd const& x) { return x.squaredNorm(); };
   return p;
}

void toys(Log& log)
{
   auto one = toy(1, [](Eigen::VectorXd const& x) { return std::complex<double>(1 + x(0) * x(0)); });
   double r1 = quadrature(one, 50).value.real() / laplace_leading(one, 50).real();
   // exact ratio 1 + 1/(2t) = 1.01 sits on the boundary
   log.expect(std::abs(r1 - 1) <= 0.01 + 1e-9, "1D ratio " + std::to_string(r1));
   auto two = toy(2, [](Eigen::VectorXd const& x) {
      return std::complex<double>((1 + x(0) * x(0)) * (1 + x(1) * x(1)));
   });
   double r2 = quadrature(two, 100).value.real() / laplace_leading(two, 100).real();
   log.expect(std::abs(r2 - 1) <= 0.02, "2D ratio " + std::to_string(r2));
   auto moment = toy(2, [](Eigen::VectorXd const& x) { return std::complex<double>(x(0) * x(0) * x(1) * x(1)); });
   double mom = quadrature(moment, 100).value.real();
   double want = std::numbers::pi / (4e6);
   log.expect(std::abs(mom / want - 1) < 1e-8, "x^2 y^2 moment " + std::to_string(mom));
   double prev = 1;
   for (double t : {10.0, 30.0, 100.0})
   {
      double err = std::abs(quadrature(one, t).value.real() / laplace_leading(one, t).real() - 1);
      log.expect(err < prev, "ratio does not improve at t = " + std::to_string(t));
      prev = err;
   }
   std::ostringstream os;
   os.precision(6);
   os << "1D " << r1 << ", 2D " << r2;
   log.note = os.str();
}

// ---------------------------------------------------------------- 10

void majorant_decay(Log& log)
{
   int rows = 0;
   for (auto const& c : desk_cases())
   {
      auto ctx = MajorantContext::standard(c);
      try
      {
         auto dc = decay_constants(ctx, 2000, 1, 200, 5.0, 0.5);
         log.expect(dc.grid.size() == 200u * 11u, c.label() + " grid size");
         for (auto const& row : dc.grid)
         {
            ++rows;
            log.expect(row.m >= row.bound, c.label() + " violation at normal " + std::to_string(row.id));
         }
      }
      catch (CertificateError const& e)
      {
         log.expect(false, c.label() + " " + e.what());
      }
   }
   // rank one along a single normal generator: M = m - k + k (cosh^2 t + sinh^2 t)
   for (auto const& c : {DualPairCase::make_a(1, 1, 1, 0), DualPairCase::make_a(2, 1, 1, 1),
                         DualPairCase::make_a(2, 2, 1, 1)})
   {
      auto ctx = MajorantContext::standard(c);
      auto idx = c.index_set();
      for (std::size_t s = 0; s < idx.size(); ++s)
      {
         auto [a, mu] = idx[s];
         int hits = (a <= c.r ? 1 : 0) + (mu <= c.p + c.s ? 1 : 0);
         for (bool imag : {false, true})
         {
            TangentVector x = TangentVector::zero(c);
            (imag ? x.y : x.x)[s] = 1.0;
            for (double t : {0.0, 0.5, 1.0, 2.0, 3.0})
            {
               double ch = std::cosh(t), sh = std::sinh(t);
               double want = c.cols() - hits + hits * (ch * ch + sh * sh);
               double got = majorant(ctx, x, t);
               log.expect(std::abs(got - want) <= 1e-9 * want, c.label() + " sphericality");
            }
         }
      }
   }
   log.note = std::to_string(rows) + " grid points";
}

// ---------------------------------------------------------------- 11

void numeric_fiber(Log& log)
{
   auto c = DualPairCase::make_a(1, 1, 1, 0);
   double t = 3.0;
   LaplaceProblem p = fiber_problem(c, t);
   QuadratureOptions opt;
   opt.scheme = Scheme::MonteCarlo;
   opt.samples = 1000000;
   opt.seed = 1;
   auto mc = quadrature(p, t * t, opt);
   std::complex<double> closed = fiber_leading_closed_form(c).value(t);
   std::complex<double> ratio = mc.value / closed;
   log.expect(std::abs(ratio - 1.0) <= 0.15, "ratio to the closed form " + std::to_string(ratio.real()) + " + " +
                                                  std::to_string(ratio.imag()) + " i");
   std::complex<double> rd = mc.value / fiber_assembly(c).term.value(t);
   std::ostringstream os;
   os.precision(4);
   os << "MC/closed " << ratio.real() << (ratio.imag() < 0 ? "" : "+") << ratio.imag() << "i, MC/re-derived "
      << rd.real() << (rd.imag() < 0 ? "" : "+") << rd.imag() << "i, stderr/|value| " << mc.error / std::abs(mc.value);
   log.note = os.str();
}

struct Criterion
{
   int id;
   std::string name;
   std::function<void(Log&)> run;
};

} // namespace

int main(int argc, char** argv)
{
   std::vector<Criterion> all = {
       {1, "normalization lock", normalization_lock},
       {2, "weights", weights},
       {3, "highest weight and annihilation", annihilation},
       {4, "closedness", closedness},
       {5, "restriction to the fiber", restriction},
       {6, "intertwiner and highest term", intertwiner},
       {7, "hessian", hessian},
       {8, "fiber asymptotics", fiber},
       {9, "laplace toys", toys},
       {10, "majorant decay", majorant_decay},
       {11, "numeric fiber integral", numeric_fiber},
   };
   std::set<int> wanted;
   for (int i = 1; i < argc; ++i)
      wanted.insert(std::stoi(argv[i]));
   int failed = 0;
   for (auto const& cr : all)
   {
      if (!wanted.empty() && !wanted.count(cr.id))
         continue;
      Log log;
      auto t0 = Clock::now();
      try
      {
         cr.run(log);
      }
      catch (std::exception const& e)
      {
         log.expect(false, std::string("exception: ") + e.what());
      }
      double el = seconds_since(t0);
      bool ok = log.ok();
      failed += !ok;
      std::printf("%s %2d %-32s (%d checks, %.2f s)%s%s\n", ok ? "PASS" : "FAIL", cr.id, cr.name.c_str(), log.checks,
                  el, log.note.empty() ? "" : "  ", log.note.c_str());
      for (std::size_t k = 0; k < log.failures.size() && k < 8; ++k)
         std::printf("       - %s\n", log.failures[k].c_str());
      if (log.failures.size() > 8)
         std::printf("       - ... %zu more\n", log.failures.size() - 8);
      std::fflush(stdout);
   }
   return failed == 0 ? 0 : 1;
}
