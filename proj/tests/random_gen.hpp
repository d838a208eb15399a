// SPDX-License-Identifier: MIT
//
// tests/random_gen.hpp
//
// Seeded generators of random exact objects for property tests.
//

#ifndef WEIL_TESTS_RANDOM_GEN_HPP
#define WEIL_TESTS_RANDOM_GEN_HPP

#include "weil/exactalg.hpp"

#include <random>

namespace weil::gen
{

inline GaussianRational gaussian(std::mt19937& rng, int range = 5)
{
   std::uniform_int_distribution<long> num(-range, range), den(1, 4);
   return {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
}

inline Scalar scalar(std::mt19937& rng)
{
   std::uniform_int_distribution<int> pi_pow(-1, 1);
   return Scalar(gaussian(rng), pi_pow(rng));
}

inline Monomial monomial(std::mt19937& rng, std::vector<Var> const& vars, int max_deg)
{
   std::uniform_int_distribution<int> deg(0, max_deg);
   std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
   Monomial m;
   int d = deg(rng);
   for (int i = 0; i < d; ++i)
      m = m * Monomial(vars[pick(rng)]);
   return m;
}

inline Poly poly(std::mt19937& rng, std::vector<Var> const& vars, int max_deg, int terms = 4)
{
   Poly p;
   for (int i = 0; i < terms; ++i)
      p += Poly(monomial(rng, vars, max_deg), scalar(rng));
   return p;
}

inline DiffOperator diff_operator(std::mt19937& rng, std::vector<Var> const& vars, int max_order, int max_deg, int terms = 3)
{
   DiffOperator d;
   for (int i = 0; i < terms; ++i)
      d.add_term(monomial(rng, vars, max_order), poly(rng, vars, max_deg, 2));
   return d;
}

inline std::vector<Var> sample_vars()
{
   return {Var::um(1, 1), Var::um(2, 1), Var::up(1, 1), Var::up(2, 2)};
}

} // namespace weil::gen

#endif
