// SPDX-License-Identifier: MIT
//
// src/io.cpp
//

#include "weil/io.hpp"

#include <limits>
#include <stdexcept>

namespace weil
{

namespace
{

json int_json(mpz_class const& z)
{
   if (z.fits_slong_p())
      return z.get_si();
   return z.get_str();
}

mpz_class int_from(json const& j)
{
   if (j.is_number_integer())
      return mpz_class(j.get<long>());
   if (j.is_string())
      return mpz_class(j.get<std::string>());
   throw std::invalid_argument("expected an integer, got " + j.dump());
}

Rational rational_from(json const& num, json const& den)
{
   mpz_class d = int_from(den);
   if (d == 0)
      throw std::invalid_argument("zero denominator");
   Rational q(int_from(num), d);
   q.canonicalize();
   return q;
}

} // namespace

json to_json(Rational const& q) { return json::array({int_json(q.get_num()), int_json(q.get_den())}); }

json to_json(GaussianRational const& q)
{
   return json::array({int_json(q.re.get_num()), int_json(q.re.get_den()), int_json(q.im.get_num()),
                       int_json(q.im.get_den())});
}

json to_json(Scalar const& s)
{
   json parts = json::array();
   for (auto const& [key, q] : s.parts())
   {
      json c = to_json(q);
      c.push_back(key.first);
      parts.push_back({{"c", c}, {"sqrt2", key.second}});
   }
   return parts;
}

Scalar scalar_from_json(json const& j)
{
   if (!j.is_array())
      throw std::invalid_argument("coefficient must be an array of parts");
   Scalar s;
   for (auto const& part : j)
   {
      json const& c = part.at("c");
      if (!c.is_array() || c.size() != 5)
         throw std::invalid_argument("coefficient part must be [re_num, re_den, im_num, im_den, pi_pow]");
      GaussianRational q(rational_from(c[0], c[1]), rational_from(c[2], c[3]));
      int sq = part.value("sqrt2", 0);
      if (sq != 0 && sq != 1)
         throw std::invalid_argument("sqrt2 flag must be 0 or 1");
      s += Scalar(q, c[4].get<int>(), sq);
   }
   return s;
}

json to_json(Poly const& p)
{
   json terms = json::array();
   for (auto const& [m, c] : p.terms())
   {
      json mono = json::object();
      for (auto const& [v, e] : m.entries())
         mono[v.name()] = e;
      terms.push_back({{"monomial", mono}, {"coeff", to_json(c)}});
   }
   return terms;
}

Poly poly_from_json(json const& j)
{
   if (!j.is_array())
      throw std::invalid_argument("polynomial must be an array of terms");
   Poly p;
   for (auto const& t : j)
   {
      Monomial m;
      for (auto const& [name, e] : t.at("monomial").items())
      {
         auto v = Var::parse(name);
         if (!v)
            throw std::invalid_argument("unknown variable " + name);
         int k = e.get<int>();
         if (k < 1)
            throw std::invalid_argument("exponents must be positive");
         m = m * Monomial(*v, k);
      }
      p += Poly(m, scalar_from_json(t.at("coeff")));
   }
   return p;
}

std::optional<ExtIndex> parse_ext_index(std::string const& s)
{
   ExtIndex x;
   std::string rest;
   if (s.rfind("xpp_", 0) == 0)
   {
      x.kind = ExtIndex::XiDoublePrime;
      rest = s.substr(4);
   }
   else if (s.rfind("xp_", 0) == 0)
   {
      x.kind = ExtIndex::XiPrime;
      rest = s.substr(3);
   }
   else
      return std::nullopt;
   auto us = rest.find('_');
   if (us == std::string::npos)
      return std::nullopt;
   try
   {
      x.a = std::stoi(rest.substr(0, us));
      x.b = std::stoi(rest.substr(us + 1));
   }
   catch (...)
   {
      return std::nullopt;
   }
   if (x.name() != s)
      return std::nullopt;
   return x;
}

json to_json(Cochain const& c)
{
   json terms = json::array();
   for (auto const& [k, p] : c.terms())
   {
      json xi = json::array();
      for (auto const& x : k)
         xi.push_back(x.name());
      terms.push_back({{"xi", xi}, {"poly", to_json(p)}});
   }
   return terms;
}

Cochain cochain_from_json(json const& j)
{
   if (!j.is_array())
      throw std::invalid_argument("cochain must be an array of terms");
   Cochain c;
   for (auto const& t : j)
   {
      std::vector<ExtIndex> xs;
      for (auto const& s : t.at("xi"))
      {
         auto x = parse_ext_index(s.get<std::string>());
         if (!x)
            throw std::invalid_argument("unknown cotangent index " + s.dump());
         xs.push_back(*x);
      }
      c += Cochain::from_wedge(xs, poly_from_json(t.at("poly")));
   }
   return c;
}

json to_json(GaussPoly const& g) { return {{"gaussian", true}, {"poly", to_json(g.poly)}}; }

GaussPoly gauss_poly_from_json(json const& j)
{
   if (!j.value("gaussian", false))
      throw std::invalid_argument("missing \"gaussian\": true marker");
   GaussPoly g{poly_from_json(j.at("poly"))};
   for (auto const& [m, c] : g.poly.terms())
      for (auto const& [v, e] : m.entries())
         if (v.kind != Var::Z && v.kind != Var::ZBar)
            throw std::invalid_argument("Gaussian polynomial uses Fock variable " + v.name());
   return g;
}

json weight_to_json(Weight const& w)
{
   json out = json::array();
   for (auto const& x : w)
   {
      Rational twice = 2 * x;
      if (twice.get_den() != 1)
         throw std::invalid_argument("weight entry is not a half-integer: " + x.get_str());
      out.push_back(json::array({int_json(twice.get_num()), 2}));
   }
   return out;
}

json to_json(LeadingTerm const& t)
{
   return {{"unit", to_json(t.unit)}, {"two_power", to_json(t.two_power)}, {"pi_power", t.pi_power},
           {"t_power", t.t_power},    {"rate", to_json(t.rate)},           {"text", t.str()}};
}

} // namespace weil
