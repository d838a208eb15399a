// SPDX-License-Identifier: MIT
//
// tools/weilcheck.cpp
//
// Command line front end.  Every subcommand takes the dual pair case
// (--case A --p --q --r --s, or --case B|C --n --r) and writes JSON to
// stdout or --out.  Exit status: 0 when all requested checks pass, 1 when a
// check fails, 2 for usage errors.  When WEILCHECK_REPORT_DIR is set, the
// verify commands also write one report per check and a summary there.
//

#include "weil/cocycle.hpp"
#include "weil/geometry.hpp"
#include "weil/io.hpp"
#include "weil/laplace.hpp"
#include "weil/schrodinger.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace weil;

namespace
{

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error
{
   using std::runtime_error::runtime_error;
};

struct CaseOptions
{
   std::string tag = "A";
   int p = 1, q = 1, r = 1, s = 0, n = 1;
   bool force = false;
   std::uint64_t seed = 1;
   std::string out;
   bool no_timing = false;

   void attach(CLI::App* app)
   {
      app->add_option("--case", tag, "dual pair case")->check(CLI::IsMember({"A", "B", "C"}));
      app->add_option("--p", p, "case A: p");
      app->add_option("--q", q, "case A: q");
      app->add_option("--r", r, "r");
      app->add_option("--s", s, "case A: s");
      app->add_option("--n", n, "cases B and C: n");
      app->add_flag("--force", force, "allow parameters above the desk-scale ceiling");
      app->add_option("--seed", seed, "random seed");
      app->add_option("--out", out, "output file (default stdout)");
      app->add_flag("--no-timing", no_timing, "write elapsed_ms as 0 for byte-identical reports");
   }

   // Validates the parameters and the desk-scale ceiling.
   DualPairCase make() const
   {
      DualPairCase c;
      try
      {
         c = tag == "A" ? DualPairCase::make_a(p, q, r, s) : tag == "B" ? DualPairCase::make_b(n, r)
                                                                         : DualPairCase::make_c(n, r);
         c.validate();
      }
      catch (std::invalid_argument const& e)
      {
         throw UsageError(e.what());
      }
      bool big = c.codim() > 4 || (c.tag == DualPairCase::A ? p + q > 4 : n > 3);
      if (big && !force)
         throw UsageError(c.label() + " is above the desk-scale ceiling (d' <= 4, p+q <= 4, n <= 3); use --force");
      if (big)
         std::cerr << "warning: " << c.label() << " is above the desk-scale ceiling; this may be slow\n";
      return c;
   }
};

void emit(CaseOptions const& o, std::string const& text)
{
   if (o.out.empty())
   {
      std::cout << text << "\n";
      return;
   }
   std::ofstream f(o.out);
   if (!f)
      throw UsageError("cannot write " + o.out);
   f << text << "\n";
}

std::string clip(std::string s)
{
   if (s.size() > 400)
      s = s.substr(0, 400) + " ...";
   return s;
}

std::string first_term(Cochain const& x)
{
   if (x.is_zero())
      return "";
   auto const& [key, poly] = *x.terms().begin();
   Cochain t;
   t.add_term(key, poly);
   return clip(t.str());
}

// ---------------------------------------------------------------- checks

struct CheckOutcome
{
   bool ok = true;
   std::string witness;
};

using CheckFn = std::function<CheckOutcome(DualPairCase const&, std::uint64_t)>;

struct CheckDef
{
   std::string anchor;
   CheckFn run;
};

CheckOutcome check_build(DualPairCase const& c, std::uint64_t seed)
{
   int d = c.codim();
   auto plus = build_phi(c, PhiKind::Plus, seed);
   auto minus = build_phi(c, PhiKind::Minus, seed);
   auto full = build_phi(c, PhiKind::Full, seed);
   if (plus.bidegree() != std::make_pair(d, 0))
      return {false, "phi+ is not of bidegree (d', 0)"};
   if (minus.bidegree() != std::make_pair(0, d))
      return {false, "phi- is not of bidegree (0, d')"};
   if (full.bidegree() != std::make_pair(d, d))
      return {false, "phi is not of bidegree (d', d')"};
   if (build_phi(c, PhiKind::Plus, seed + 1) != plus)
      return {false, "phi+ depends on the traversal order"};
   return {};
}

CheckOutcome check_closed(DualPairCase const& c, std::uint64_t seed)
{
   auto dp = rel_differential(c, build_phi(c, PhiKind::Plus, seed), Sector::Minus);
   if (!dp.is_zero())
      return {false, "d phi+ has term " + first_term(dp)};
   auto dm = rel_differential(c, build_phi(c, PhiKind::Minus, seed), Sector::Plus);
   if (!dm.is_zero())
      return {false, "d phi- has term " + first_term(dm)};
   auto df = rel_differential(c, build_phi(c, PhiKind::Full, seed));
   if (!df.is_zero())
      return {false, "d phi has term " + first_term(df)};
   return {};
}

CheckOutcome check_invariance_all(DualPairCase const& c, std::uint64_t seed)
{
   for (auto [kind, side] : {std::pair{PhiKind::Plus, std::optional<Side>(Side::Plus)},
                             std::pair{PhiKind::Minus, std::optional<Side>(Side::Minus)},
                             std::pair{PhiKind::Full, std::optional<Side>()}})
   {
      auto rep = check_invariance(c, build_phi(c, kind, seed), side);
      if (!rep.ok)
         return {false, clip(rep.witness)};
   }
   return {};
}

CheckOutcome check_annihilation(DualPairCase const& c, std::uint64_t seed)
{
   Poly f = special_harmonic(c, Side::Plus);
   for (auto alg : {Subalgebra::N, Subalgebra::KPrimeN})
   {
      auto res = annihilated_by(c, f, alg, Sector::Minus);
      if (!res.ok)
         return {false, "f_{D_U} under " + res.failing_generator + " gives " + clip(res.image.str())};
   }
   for (auto [kind, alg, sec] : {std::tuple{PhiKind::Plus, Subalgebra::PMinus, Sector::Minus},
                                 std::tuple{PhiKind::Minus, Subalgebra::PPlus, Sector::Plus}})
   {
      Cochain phi = build_phi(c, kind, seed);
      for (auto const& [key, poly] : phi.terms())
      {
         auto res = annihilated_by(c, poly, alg, sec);
         if (!res.ok)
            return {false, "value under " + res.failing_generator + " gives " + clip(res.image.str())};
      }
   }
   return {};
}

CheckOutcome check_restriction(DualPairCase const& c, std::uint64_t seed)
{
   for (auto [kind, ext, side] : {std::tuple{PhiKind::Plus, ExtIndex::XiPrime, Side::Plus},
                                  std::tuple{PhiKind::Minus, ExtIndex::XiDoublePrime, Side::Minus}})
   {
      ExtKey key;
      for (auto const& [a, b] : c.index_set())
         key.push_back({ext, a, b});
      Cochain expect;
      expect.add_term(key, special_harmonic(c, side));
      Cochain got = restrict_to_fiber(c, build_phi(c, kind, seed));
      if (got != expect)
         return {false, "restriction is " + clip(got.str())};
   }
   return {};
}

CheckOutcome check_weights(DualPairCase const& c, std::uint64_t)
{
   auto we = ext_weight(c, top_wedge(c, Side::Plus), Side::Plus);
   if (!we)
      return {false, "e_{D_U} is not a weight vector"};
   auto wf = weight_of(c, special_harmonic(c, Side::Plus), Torus::K, 0, Sector::Minus);
   if (!wf.ok)
      return {false, "f_{D_U} is not a weight vector for " + wf.failing_generator};
   Weight shifted = wf.weight;
   for (auto& x : shifted)
      x += det_shift(c, Side::Plus);
   if (shifted != *we)
      return {false, "weight of f_{D_U} plus the det shift differs from the weight of e_{D_U}"};
   auto n = annihilated_by(c, special_harmonic(c, Side::Plus), Subalgebra::N, Sector::Minus);
   if (!n.ok)
      return {false, "f_{D_U} is not annihilated by " + n.failing_generator};
   return {};
}

CheckOutcome check_intertwine(DualPairCase const& c, std::uint64_t)
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
         if (iota(c, apply(fock, p)).poly != apply(schr, iota(c, p).poly))
            return {false, std::string(role.creation ? "creation " : "annihilation ") + role.var.name() + " on " +
                               p.str()};
      }
   }
   return {};
}

CheckOutcome check_hessian(DualPairCase const& c, std::uint64_t)
{
   auto ctx = MajorantContext::standard(c);
   try
   {
      Eigen::MatrixXd h = hessian_of_h(ctx);
      if (c.tag == DualPairCase::A)
      {
         double want = std::pow(4.0, 2 * c.r * c.q + 2 * c.p * c.s - c.r * c.s);
         if (std::abs(h.determinant() / want - 1) > 1e-9)
            return {false, "det " + std::to_string(h.determinant()) + " != " + std::to_string(want)};
      }
   }
   catch (std::runtime_error const& e)
   {
      return {false, e.what()};
   }
   return {};
}

CheckOutcome check_fiber(DualPairCase const& c, std::uint64_t)
{
   auto closed = fiber_leading_closed_form(c);
   auto derived = fiber_assembly(c).term;
   if (closed != derived)
      return {false, "closed form " + closed.str() + ", re-derived " + derived.str()};
   return {};
}

CheckOutcome check_majorant(DualPairCase const& c, std::uint64_t seed)
{
   try
   {
      decay_constants(MajorantContext::standard(c), 2000, seed);
   }
   catch (CertificateError const& e)
   {
      return {false, std::string(e.what()) + " at normal " + std::to_string(e.witness.id) + ", t = " +
                         std::to_string(e.witness.t)};
   }
   return {};
}

std::map<std::string, CheckDef> const& checks()
{
   static std::map<std::string, CheckDef> const table = {
       {"build", {"construction of phi+, phi- and phi from the determinant harmonics", check_build}},
       {"closed", {"closedness of phi+, phi- and phi in the relative complex", check_closed}},
       {"invariance", {"K-invariance with the det twist", check_invariance_all}},
       {"annihilation", {"highest weight vector and annihilation by p-", check_annihilation}},
       {"restriction", {"only one term left after restriction to the fiber", check_restriction}},
       {"weights", {"weights of e_{D_U} and f_{D_U} differ by the det shift", check_weights}},
       {"intertwine", {"intertwiner from the Fock to the Schrodinger model", check_intertwine}},
       {"hessian", {"Hessian of the phase function at the minimum", check_hessian}},
       {"fiber", {"leading asymptotics of the fiber integral", check_fiber}},
       {"majorant", {"exponential growth estimate of the majorant", check_majorant}},
   };
   return table;
}

json run_check(std::string const& name, DualPairCase const& c, CaseOptions const& o)
{
   auto const& def = checks().at(name);
   auto t0 = std::chrono::steady_clock::now();
   CheckOutcome res = def.run(c, o.seed);
   auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
   return {{"schema", kSchemaVersion},
           {"check", name},
           {"case", c.label()},
           {"status", res.ok ? "pass" : "fail"},
           {"witness", res.witness},
           {"anchor", def.anchor},
           {"elapsed_ms", o.no_timing ? 0 : ms}};
}

// Runs the checks, writes reports to the report directory when set and
// returns the exit status.
int run_suite(CaseOptions const& o, std::vector<std::string> names)
{
   DualPairCase c = o.make();
   if (names.empty())
      for (auto const& [k, v] : checks())
         names.push_back(k);
   json reports = json::array();
   bool all_ok = true;
   for (auto const& name : names)
   {
      json r = run_check(name, c, o);
      all_ok = all_ok && r["status"] == "pass";
      reports.push_back(r);
   }
   json summary = {{"schema", kSchemaVersion},
                   {"case", c.label()},
                   {"seed", o.seed},
                   {"status", all_ok ? "pass" : "fail"},
                   {"checks", reports}};
   if (char const* dir = std::getenv("WEILCHECK_REPORT_DIR"); dir && *dir)
   {
      std::filesystem::path base(dir);
      std::filesystem::create_directories(base);
      for (auto const& r : reports)
         std::ofstream(base / (r["check"].get<std::string>() + ".json")) << r.dump(2) << "\n";
      std::ofstream(base / "summary.json") << summary.dump(2) << "\n";
   }
   emit(o, names.size() == 1 ? reports[0].dump(2) : summary.dump(2));
   return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------- other verbs

LieElt const& find_element(DualPairCase const& c, std::string const& label)
{
   auto const& lb = lie_basis(c);
   for (auto const* v : {&lb.k, &lb.p_plus, &lb.p_minus, &lb.kp_minus, &lb.kp_plus})
      for (auto const& e : *v)
         if (e.label == label)
            return e;
   throw UsageError("unknown basis element " + label);
}

json labels(std::vector<LieElt> const& v)
{
   json a = json::array();
   for (auto const& e : v)
      a.push_back(e.label);
   return a;
}

json weight_or_null(WeightResult const& w) { return w.ok ? weight_to_json(w.weight) : json(nullptr); }

int fock_weights(CaseOptions const& o)
{
   DualPairCase c = o.make();
   auto const& lb = lie_basis(c);
   Poly f = special_harmonic(c, Side::Plus);
   auto we = ext_weight(c, top_wedge(c, Side::Plus), Side::Plus);
   json out = {{"schema", kSchemaVersion},
               {"case", c.label()},
               {"basis",
                {{"k", labels(lb.k)},
                 {"k_torus", labels(lb.k_torus)},
                 {"k_raising", labels(lb.k_raising)},
                 {"p_plus", labels(lb.p_plus)},
                 {"p_minus", labels(lb.p_minus)},
                 {"kprime_minus", labels(lb.kp_minus)},
                 {"kprime_plus", labels(lb.kp_plus)}}},
               {"det_shift", to_json(det_shift(c, Side::Plus))},
               {"e_DU", we ? weight_to_json(*we) : json(nullptr)},
               {"f_DU", weight_or_null(weight_of(c, f, Torus::K, 0, Sector::Minus))},
               {"f_DU_kprime", weight_or_null(weight_of(c, f, Torus::KPrimeMinus, 0, Sector::Minus))},
               {"phi_minus_kprime_lowest",
                weight_or_null(weight_of(c, special_harmonic(c, Side::Minus), Torus::KPrimePlus, 0, Sector::Plus))}};
   emit(o, out.dump(2));
   return 0;
}

Poly parse_poly_arg(std::string const& text)
{
   try
   {
      return poly_from_json(json::parse(text));
   }
   catch (std::exception const& e)
   {
      throw UsageError(std::string("bad --poly: ") + e.what());
   }
}

int fock_action(CaseOptions const& o, std::string const& element, std::string const& poly, std::string const& sector)
{
   DualPairCase c = o.make();
   LieElt const& e = find_element(c, element);
   std::optional<Sector> sec;
   if (sector == "minus")
      sec = Sector::Minus;
   else if (sector == "plus")
      sec = Sector::Plus;
   Poly p = parse_poly_arg(poly);
   Poly img = apply(lie_action(c, e, sec), p);
   json out = {{"schema", kSchemaVersion},
               {"case", c.label()},
               {"element", element},
               {"sector", sector},
               {"input", to_json(p)},
               {"output", to_json(img)}};
   emit(o, out.dump(2));
   return 0;
}

int schrodinger_intertwine(CaseOptions const& o, std::string const& poly)
{
   DualPairCase c = o.make();
   Poly p = parse_poly_arg(poly);
   GaussPoly g = iota(c, p);
   json out = {{"schema", kSchemaVersion},
               {"case", c.label()},
               {"fock", to_json(p)},
               {"iota", to_json(g)},
               {"highest_term", to_json(highest_term(g))}};
   emit(o, out.dump(2));
   return 0;
}

struct MajorantOptions
{
   int samples = 2000;
   int normals = 200;
   double tmax = 5.0;
   double step = 0.5;
   std::string csv;
};

int geometry_majorant(CaseOptions const& o, MajorantOptions const& m)
{
   DualPairCase c = o.make();
   auto ctx = MajorantContext::standard(c);
   json cert = {{"schema", kSchemaVersion}, {"case", c.label()}, {"seed", o.seed}};
   std::ostringstream rows;
   rows << "X-id,t,M,bound\n";
   rows.precision(17);
   int status = 0;
   try
   {
      auto dc = decay_constants(ctx, m.samples, o.seed, m.normals, m.tmax, m.step);
      for (auto const& r : dc.grid)
         rows << r.id << "," << r.t << "," << r.m << "," << r.bound << "\n";
      cert["b"] = dc.b;
      cert["c"] = dc.c;
      cert["sphere_min"] = dc.sphere_min;
      cert["terms"] = dc.terms;
      cert["samples"] = dc.samples;
      cert["grid_points"] = dc.grid.size();
      cert["worst_ratio"] = dc.worst_ratio;
      cert["status"] = "pass";
   }
   catch (CertificateError const& e)
   {
      cert["status"] = "fail";
      cert["witness"] = {{"id", e.witness.id}, {"t", e.witness.t}, {"M", e.witness.m}, {"bound", e.witness.bound}};
      status = 1;
   }
   if (!m.csv.empty())
   {
      std::ofstream f(m.csv);
      if (!f)
         throw UsageError("cannot write " + m.csv);
      f << rows.str();
   }
   emit(o, cert.dump(2));
   return status;
}

int geometry_hessian(CaseOptions const& o)
{
   DualPairCase c = o.make();
   auto ctx = MajorantContext::standard(c);
   json out = {{"schema", kSchemaVersion}, {"case", c.label()}};
   Eigen::MatrixXd h = hessian_fd(ctx);
   int status = 0;
   try
   {
      h = hessian_of_h(ctx);
      out["status"] = "pass";
   }
   catch (std::runtime_error const& e)
   {
      out["status"] = "fail";
      out["witness"] = e.what();
      status = 1;
   }
   json rows = json::array();
   for (Eigen::Index i = 0; i < h.rows(); ++i)
   {
      json row = json::array();
      for (Eigen::Index j = 0; j < h.cols(); ++j)
         row.push_back(std::round(h(i, j) * 1e6) / 1e6);
      rows.push_back(row);
   }
   out["hessian"] = rows;
   out["det"] = h.determinant();
   out["gradient_max"] = gradient_fd(ctx).cwiseAbs().maxCoeff() < 1e-8 ? 0.0 : gradient_fd(ctx).cwiseAbs().maxCoeff();
   if (c.tag == DualPairCase::A)
      out["det_closed_form"] = std::pow(4.0, 2 * c.r * c.q + 2 * c.p * c.s - c.r * c.s);
   emit(o, out.dump(2));
   return status;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

int laplace_fiber(CaseOptions const& o, double t, bool numeric, long samples)
{
   DualPairCase c = o.make();
   if (!(t > 0))
      throw UsageError("--t must be positive");
   LeadingTerm closed = fiber_leading_closed_form(c);
   FiberAssembly fa = fiber_assembly(c);
   bool match = closed == fa.term;
   json out = {{"schema", kSchemaVersion},
               {"case", c.label()},
               {"t", t},
               {"closed_form", to_json(closed)},
               {"rederived", to_json(fa.term)},
               {"closed_form_value", complex_json(closed.value(t))},
               {"rederived_value", complex_json(fa.term.value(t))},
               {"match", match}};
   if (numeric)
   {
      LaplaceProblem p;
      try
      {
         p = fiber_problem(c, t);
      }
      catch (std::invalid_argument const& e)
      {
         throw UsageError(std::string("--numeric: ") + e.what());
      }
      QuadratureOptions q;
      q.scheme = Scheme::MonteCarlo;
      q.samples = samples;
      q.seed = o.seed;
      auto mc = quadrature(p, t * t, q);
      out["numeric"] = {{"value", complex_json(mc.value)},
                        {"ratio", complex_json(mc.value / closed.value(t))},
                        {"ratio_rederived", complex_json(mc.value / fa.term.value(t))},
                        {"stderr", mc.error},
                        {"samples", samples}};
   }
   emit(o, out.dump(2));
   return match ? 0 : 1;
}

int laplace_toy(CaseOptions const& o, int dim, double t, std::string const& scheme)
{
   if (dim != 1 && dim != 2)
      throw UsageError("--dim must be 1 or 2");
   if (!(t > 0))
      throw UsageError("--t must be positive");
   LaplaceProblem p;
   p.n = dim;
   p.h = [](Eigen::VectorXd const& x) { return x.squaredNorm(); };
   p.f = [](Eigen::VectorXd const& x) {
      double v = 1;
      for (Eigen::Index i = 0; i < x.size(); ++i)
         v *= 1 + x(i) * x(i);
      return std::complex<double>(v);
   };
   QuadratureOptions q;
   q.scheme = scheme == "mc" ? Scheme::MonteCarlo : Scheme::GaussHermite;
   q.seed = o.seed;
   auto res = quadrature(p, t, q);
   auto lead = laplace_leading(p, t);
   double ratio = res.value.real() / lead.real();
   double tol = dim == 1 ? 0.01 : 0.02;
   bool ok = std::abs(ratio - 1) <= tol + 1e-9;
   json out = {{"schema", kSchemaVersion},
               {"dim", dim},
               {"t", t},
               {"f", dim == 1 ? "1 + x^2" : "(1 + x^2)(1 + y^2)"},
               {"h", "|x|^2"},
               {"scheme", scheme},
               {"quadrature", res.value.real()},
               {"error", res.error},
               {"leading", lead.real()},
               {"ratio", ratio},
               {"tolerance", tol},
               {"status", ok ? "pass" : "fail"}};
   emit(o, out.dump(2));
   return ok ? 0 : 1;
}

int cocycle_build(CaseOptions const& o, std::string const& which)
{
   DualPairCase c = o.make();
   PhiKind k = which == "plus" ? PhiKind::Plus : which == "minus" ? PhiKind::Minus : PhiKind::Full;
   Cochain x = build_phi(c, k, o.seed);
   json out = {{"schema", kSchemaVersion}, {"case", c.label()}, {"which", which}, {"cochain", to_json(x)}};
   emit(o, out.dump(2));
   return 0;
}

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"weilcheck: special cocycles in the Fock model and their fiber integrals"};
   app.require_subcommand(1);

   CaseOptions opt;
   std::vector<std::string> check_names;
   std::vector<std::string> const check_keys = [] {
      std::vector<std::string> v;
      for (auto const& [k, d] : checks())
         v.push_back(k);
      return v;
   }();
   std::function<int()> action;

   auto* verify = app.add_subcommand("verify", "run checks and write reports");
   opt.attach(verify);
   verify->add_option("--check", check_names, "checks to run (default all)")->check(CLI::IsMember(check_keys));
   verify->callback([&] { action = [&] { return run_suite(opt, check_names); }; });

   auto* cocycle = app.add_subcommand("cocycle", "build or verify the cocycles");
   cocycle->require_subcommand(1);
   std::string which = "plus";
   auto* cbuild = cocycle->add_subcommand("build", "print phi+, phi- or phi as JSON");
   opt.attach(cbuild);
   cbuild->add_option("--which", which, "plus, minus or full")->check(CLI::IsMember({"plus", "minus", "full"}));
   cbuild->callback([&] { action = [&] { return cocycle_build(opt, which); }; });
   auto* cverify = cocycle->add_subcommand("verify", "verify the cocycles");
   opt.attach(cverify);
   cverify->add_option("--check", check_names, "closed, invariance, annihilation or restriction")
       ->check(CLI::IsMember({"closed", "invariance", "annihilation", "restriction"}));
   cverify->callback([&] {
      if (check_names.empty())
         check_names = {"annihilation", "closed", "invariance", "restriction"};
      action = [&] { return run_suite(opt, check_names); };
   });

   auto* fock = app.add_subcommand("fock", "basis, weights and actions in the Fock model");
   fock->require_subcommand(1);
   auto* fweights = fock->add_subcommand("weights", "basis labels and weights of the special vectors");
   opt.attach(fweights);
   fweights->callback([&] { action = [&] { return fock_weights(opt); }; });
   std::string element, poly = "[]", sector = "all";
   auto* faction = fock->add_subcommand("action", "apply a basis element to a polynomial");
   opt.attach(faction);
   faction->add_option("--element", element, "basis element label, e.g. e_1,1 or X_1,3")->required();
   faction->add_option("--poly", poly, "polynomial in the JSON format")->required();
   faction->add_option("--sector", sector, "minus, plus or all")->check(CLI::IsMember({"minus", "plus", "all"}));
   faction->callback([&] { action = [&] { return fock_action(opt, element, poly, sector); }; });

   auto* schr = app.add_subcommand("schrodinger", "the intertwiner to the Schrodinger model");
   schr->require_subcommand(1);
   auto* sint = schr->add_subcommand("intertwine", "image of a Fock polynomial and its highest term");
   opt.attach(sint);
   sint->add_option("--poly", poly, "polynomial in the JSON format")->required();
   sint->callback([&] { action = [&] { return schrodinger_intertwine(opt, poly); }; });

   auto* geo = app.add_subcommand("geometry", "majorant and Hessian");
   geo->require_subcommand(1);
   MajorantOptions mopt;
   auto* gmaj = geo->add_subcommand("majorant", "certificate M >= c exp(2bt) on random normals");
   opt.attach(gmaj);
   gmaj->add_option("--samples", mopt.samples, "sphere samples for the minimum of f");
   gmaj->add_option("--normals", mopt.normals, "fresh normals for validation");
   gmaj->add_option("--tmax", mopt.tmax, "largest t");
   gmaj->add_option("--step", mopt.step, "t step");
   gmaj->add_option("--csv", mopt.csv, "write the grid as CSV X-id,t,M,bound");
   gmaj->callback([&] { action = [&] { return geometry_majorant(opt, mopt); }; });
   auto* ghess = geo->add_subcommand("hessian", "Hessian of h / pi at the minimum");
   opt.attach(ghess);
   ghess->callback([&] { action = [&] { return geometry_hessian(opt); }; });

   auto* lap = app.add_subcommand("laplace", "leading asymptotics");
   lap->require_subcommand(1);
   double t = 3.0;
   bool numeric = false;
   long samples = 1000000;
   auto* lfib = lap->add_subcommand("fiber", "closed form against the re-derived leading term");
   opt.attach(lfib);
   lfib->add_option("--t", t, "t");
   lfib->add_flag("--numeric", numeric, "Monte Carlo integral (A(1,1,1,0) only)");
   lfib->add_option("--samples", samples, "Monte Carlo samples");
   lfib->callback([&] { action = [&] { return laplace_fiber(opt, t, numeric, samples); }; });
   int dim = 1;
   std::string scheme = "gh";
   auto* ltoy = lap->add_subcommand("toy", "quadrature against the leading term for (1 + x^2) e^{-t |x|^2}");
   opt.attach(ltoy);
   ltoy->add_option("--dim", dim, "1 or 2");
   ltoy->add_option("--t", t, "t");
   ltoy->add_option("--scheme", scheme, "gh or mc")->check(CLI::IsMember({"gh", "mc"}));
   ltoy->callback([&] { action = [&] { return laplace_toy(opt, dim, t, scheme); }; });

   try
   {
      app.parse(argc, argv);
   }
   catch (CLI::ParseError const& e)
   {
      int code = app.exit(e);
      return code == 0 ? 0 : 2;
   }
   try
   {
      return action();
   }
   catch (UsageError const& e)
   {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
   }
   catch (std::exception const& e)
   {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
   }
}
