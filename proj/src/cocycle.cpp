// SPDX-License-Identifier: MIT
//
// src/cocycle.cpp
//

#include "weil/cocycle.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace weil
{

ExtVec ext_add(ExtVec a, ExtVec const& b, GaussianRational const& c)
{
   for (auto const& [k, v] : b)
   {
      auto& slot = a[k];
      slot += c * v;
      if (slot.is_zero())
         a.erase(k);
   }
   return a;
}

std::string ext_str(ExtVec const& v)
{
   if (v.empty())
      return "0";
   std::string s;
   for (auto const& [k, c] : v)
   {
      if (!s.empty())
         s += " + ";
      s += "(" + c.str() + ")";
      for (std::size_t i = 0; i < k.size(); ++i)
         s += (i ? "^" : " ") + std::string(k[i].kind == ExtIndex::XiPrime ? "X" : "Y") + std::to_string(k[i].a) + "," + std::to_string(k[i].b);
   }
   return s;
}

namespace
{

ExtIndex::Kind kind_of(Side s) { return s == Side::Plus ? ExtIndex::XiPrime : ExtIndex::XiDoublePrime; }

std::vector<LieElt> const& p_basis(DualPairCase const& c, Side s)
{
   auto const& lb = lie_basis(c);
   return s == Side::Plus ? lb.p_plus : lb.p_minus;
}

int p_position(DualPairCase const& c, ExtIndex const& x)
{
   auto const& idx = lie_basis(c).p_index;
   for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i].first == x.a && idx[i].second == x.b)
         return static_cast<int>(i);
   throw std::invalid_argument("index " + x.name() + " outside the case");
}

ExtIndex p_label(DualPairCase const& c, int pos, ExtIndex::Kind kind)
{
   auto const& idx = lie_basis(c).p_index;
   return {kind, idx[pos].first, idx[pos].second};
}

std::vector<GaussianRational> flatten(GMatrix const& z)
{
   std::vector<GaussianRational> v;
   for (auto const& row : z)
      for (auto const& x : row)
         v.push_back(x);
   return v;
}

GaussianRational det_small(GMatrix m)
{
   std::size_t n = m.size();
   GaussianRational det(1);
   for (std::size_t col = 0; col < n; ++col)
   {
      std::size_t piv = col;
      while (piv < n && m[piv][col].is_zero())
         ++piv;
      if (piv == n)
         return GaussianRational(0);
      if (piv != col)
      {
         std::swap(m[piv], m[col]);
         det = -det;
      }
      det *= m[col][col];
      for (std::size_t r = col + 1; r < n; ++r)
      {
         if (m[r][col].is_zero())
            continue;
         GaussianRational f = m[r][col] / m[col][col];
         for (std::size_t k = col; k < n; ++k)
            m[r][k] -= f * m[col][k];
      }
   }
   return det;
}

// Gram matrix tr(Z_i Z_j^*) of the p+- basis.
GMatrix p_gram(DualPairCase const& c, Side s)
{
   auto const& b = p_basis(c, s);
   GMatrix g(b.size(), std::vector<GaussianRational>(b.size()));
   for (std::size_t i = 0; i < b.size(); ++i)
   {
      auto fi = flatten(*b[i].vmat);
      for (std::size_t j = 0; j < b.size(); ++j)
      {
         auto fj = flatten(*b[j].vmat);
         for (std::size_t k = 0; k < fi.size(); ++k)
            g[i][j] += fi[k] * fj[k].conj();
      }
   }
   return g;
}

// Poly coordinates keyed by (monomial, pi power, sqrt2 power).
using PolyCoord = std::tuple<Monomial, int, int>;

struct PolyCoordLess
{
   bool operator()(PolyCoord const& a, PolyCoord const& b) const
   {
      if (std::get<0>(a) == std::get<0>(b))
         return std::make_pair(std::get<1>(a), std::get<2>(a)) < std::make_pair(std::get<1>(b), std::get<2>(b));
      return std::get<0>(a) < std::get<0>(b);
   }
};

template <typename F>
void for_each_coord(Poly const& p, F&& f)
{
   for (auto const& [m, s] : p.terms())
      for (auto const& [key, q] : s.parts())
         f(PolyCoord{m, key.first, key.second}, q);
}

int poly_rank(std::vector<Poly> const& ps)
{
   std::map<PolyCoord, int, PolyCoordLess> rows;
   for (auto const& p : ps)
      for_each_coord(p, [&](PolyCoord const& k, GaussianRational const&) { rows.emplace(k, 0); });
   int r = 0;
   for (auto& [k, v] : rows)
      v = r++;
   GMatrix m(rows.size(), std::vector<GaussianRational>(ps.size()));
   for (std::size_t j = 0; j < ps.size(); ++j)
      for_each_coord(ps[j], [&](PolyCoord const& k, GaussianRational const& q) { m[rows[k]][j] = q; });
   if (rows.empty())
      return 0;
   return rank_exact(m);
}

std::size_t k_index_of(DualPairCase const& c, std::string const& label)
{
   auto const& k = lie_basis(c).k;
   for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i].label == label)
         return i;
   throw std::logic_error("unknown k element " + label);
}

// Per-case cache of sector-restricted operators.
struct OpCache
{
   std::map<std::pair<std::string, int>, DiffOperator> ops;
   std::mutex mtx;
};

DiffOperator const& cached_action(DualPairCase const& c, LieElt const& e, std::optional<Sector> sector)
{
   static OpCache cache;
   std::lock_guard<std::mutex> lock(cache.mtx);
   int sk = sector ? static_cast<int>(*sector) : -1;
   auto key = std::make_pair(c.label() + "|" + e.label, sk);
   auto it = cache.ops.find(key);
   if (it != cache.ops.end())
      return it->second;
   return cache.ops.emplace(key, lie_action(c, e, sector)).first->second;
}

} // namespace

std::optional<std::vector<GaussianRational>> coordinates(GMatrix const& z, std::vector<LieElt> const& basis)
{
   auto target = flatten(z);
   GMatrix m(target.size(), std::vector<GaussianRational>(basis.size()));
   for (std::size_t j = 0; j < basis.size(); ++j)
   {
      auto f = flatten(*basis[j].vmat);
      for (std::size_t i = 0; i < f.size(); ++i)
         m[i][j] = f[i];
   }
   auto res = solve_exact(m, {target});
   if (!res.column_consistent[0])
      return std::nullopt;
   return res.solutions[0];
}

AdData const& ad_data(DualPairCase const& c)
{
   static std::mutex mtx;
   static std::map<std::string, AdData> cache;
   std::lock_guard<std::mutex> lock(mtx);
   auto it = cache.find(c.label());
   if (it != cache.end())
      return it->second;
   auto const& lb = lie_basis(c);
   AdData ad;
   for (auto const& k : lb.k)
   {
      for (Side s : {Side::Plus, Side::Minus})
      {
         auto const& pb = p_basis(c, s);
         GMatrix m(pb.size(), std::vector<GaussianRational>(pb.size()));
         for (std::size_t b = 0; b < pb.size(); ++b)
         {
            auto co = coordinates(*bracket(k, pb[b]).vmat, pb);
            if (!co)
               throw std::logic_error("[k, p] is not in p for " + k.label);
            for (std::size_t cc = 0; cc < pb.size(); ++cc)
               m[cc][b] = (*co)[cc];
         }
         (s == Side::Plus ? ad.ad_plus : ad.ad_minus).push_back(m);
      }
      GaussianRational tr;
      for (std::size_t i = 0; i < k.vmat->size(); ++i)
         tr += (*k.vmat)[i][i];
      ad.trace.push_back(tr);
   }
   return cache.emplace(c.label(), std::move(ad)).first->second;
}

ExtVec ad_ext(DualPairCase const& c, GMatrix const& ad, ExtVec const& v, Side side)
{
   ExtVec out;
   for (auto const& [key, coef] : v)
   {
      for (std::size_t i = 0; i < key.size(); ++i)
      {
         int b = p_position(c, key[i]);
         for (std::size_t cc = 0; cc < ad.size(); ++cc)
         {
            if (ad[cc][b].is_zero())
               continue;
            ExtKey nk = key;
            nk[i] = p_label(c, static_cast<int>(cc), kind_of(side));
            int sign = sort_with_sign(nk);
            if (sign == 0)
               continue;
            out = ext_add(out, ExtVec{{nk, coef * ad[cc][b]}}, GaussianRational(sign));
         }
      }
   }
   return out;
}

ExtVec ad_ext(DualPairCase const& c, std::size_t k_index, ExtVec const& v, Side side)
{
   auto const& ad = ad_data(c);
   return ad_ext(c, side == Side::Plus ? ad.ad_plus[k_index] : ad.ad_minus[k_index], v, side);
}

std::optional<Weight> ext_weight(DualPairCase const& c, ExtVec const& v, Side side)
{
   if (v.empty())
      throw std::invalid_argument("ext_weight: zero vector");
   LieBasis const& lb = lie_basis(c);
   Weight w;
   for (auto const& h : lb.k_torus)
   {
      auto it = std::find_if(lb.k.begin(), lb.k.end(), [&](LieElt const& e) { return e.label == h.label; });
      ExtVec img = ad_ext(c, static_cast<std::size_t>(it - lb.k.begin()), v, side);
      auto const& [key, c0] = *v.begin();
      auto f = img.find(key);
      GaussianRational lam = f == img.end() ? GaussianRational(0) : f->second / c0;
      if (sgn(lam.im) != 0 || ext_add(img, v, -lam) != ExtVec{})
         return std::nullopt;
      w.push_back(lam.re);
   }
   return w;
}

GaussianRational ext_inner(DualPairCase const& c, ExtVec const& a, ExtVec const& b, Side side)
{
   GMatrix g = p_gram(c, side);
   GaussianRational s;
   for (auto const& [ka, ca] : a)
   {
      for (auto const& [kb, cb] : b)
      {
         if (ka.size() != kb.size())
            continue;
         GMatrix sub(ka.size(), std::vector<GaussianRational>(kb.size()));
         for (std::size_t i = 0; i < ka.size(); ++i)
            for (std::size_t j = 0; j < kb.size(); ++j)
               sub[i][j] = g[p_position(c, ka[i])][p_position(c, kb[j])];
         GaussianRational d = det_small(sub);
         if (!d.is_zero())
            s += ca * cb.conj() * d;
      }
   }
   return s;
}

Rational det_shift(DualPairCase const& c, Side side)
{
   if (c.tag != DualPairCase::A)
      return Rational(0);
   Rational h = make_rational(c.r - c.s, 2);
   return side == Side::Plus ? Rational(-h) : h;
}

Poly special_harmonic(DualPairCase const& c, Side side)
{
   auto var = [&](int i, int k) { return side == Side::Plus ? Poly(Var::um(i, k)) : Poly(Var::up(i, k)); };
   auto block_det = [&](int row0, int col0, int size) {
      PolyMatrix m(size, std::vector<Poly>(size));
      for (int j = 0; j < size; ++j)
         for (int k = 0; k < size; ++k)
            m[j][k] = var(row0 + j, col0 + k);
      return poly_det(m);
   };
   c.validate();
   switch (c.tag)
   {
   case DualPairCase::A:
      return block_det(1, 1, c.r).pow(c.q - c.s) * block_det(c.p + 1, c.r + 1, c.s).pow(c.p - c.r);
   case DualPairCase::B:
      return block_det(1, 1, c.r).pow(c.n - c.r + 1);
   case DualPairCase::C:
      return block_det(1, 1, c.r).pow(c.n - c.r - 1);
   }
   return Poly();
}

ExtVec top_wedge(DualPairCase const& c, Side side)
{
   ExtKey key;
   for (auto const& [a, b] : c.index_set())
      key.push_back({kind_of(side), a, b});
   int sign = sort_with_sign(key);
   return ExtVec{{key, GaussianRational(sign)}};
}

HighestWeightPair seed_pair(DualPairCase const& c, Side side)
{
   return {c, side, top_wedge(c, side), special_harmonic(c, side)};
}

PairedModule generate_paired_module(HighestWeightPair const& seed, std::uint64_t traversal_seed)
{
   DualPairCase const& c = seed.c;
   auto const& lb = lie_basis(c);
   auto const& ops_src = seed.side == Side::Plus ? lb.k_lowering : lb.k_raising;
   std::vector<std::size_t> order(ops_src.size());
   std::iota(order.begin(), order.end(), 0);
   if (traversal_seed != 0)
   {
      std::mt19937_64 rng(traversal_seed);
      std::shuffle(order.begin(), order.end(), rng);
   }
   Sector vs = value_sector(seed.side);
   std::vector<std::size_t> kidx;
   std::vector<DiffOperator const*> omegas;
   for (std::size_t o : order)
   {
      kidx.push_back(k_index_of(c, ops_src[o].label));
      omegas.push_back(&cached_action(c, ops_src[o], vs));
   }

   PairedModule mod;
   std::map<ExtKey, std::size_t> rows;
   auto coords_of = [&](ExtVec const& v) {
      for (auto const& [k, x] : v)
         rows.emplace(k, rows.size());
   };
   auto solve_in_span = [&](ExtVec const& v) -> std::optional<std::vector<GaussianRational>> {
      coords_of(v);
      GMatrix m(rows.size(), std::vector<GaussianRational>(mod.eps.size()));
      for (std::size_t j = 0; j < mod.eps.size(); ++j)
         for (auto const& [k, x] : mod.eps[j])
            m[rows[k]][j] = x;
      std::vector<GaussianRational> rhs(rows.size());
      for (auto const& [k, x] : v)
         rhs[rows[k]] = x;
      if (mod.eps.empty())
      {
         if (v.empty())
            return std::vector<GaussianRational>{};
         return std::nullopt;
      }
      auto res = solve_exact(m, {rhs});
      if (!res.column_consistent[0])
         return std::nullopt;
      return res.solutions[0];
   };

   std::vector<std::size_t> queue;
   mod.eps.push_back(seed.top_ext);
   mod.psi.push_back(seed.top_poly);
   coords_of(seed.top_ext);
   queue.push_back(0);
   for (std::size_t head = 0; head < queue.size(); ++head)
   {
      std::size_t cur = queue[head];
      for (std::size_t o = 0; o < kidx.size(); ++o)
      {
         ExtVec e2 = ad_ext(c, kidx[o], mod.eps[cur], seed.side);
         Poly p2 = apply(*omegas[o], mod.psi[cur]);
         auto sol = solve_in_span(e2);
         if (sol)
         {
            Poly comb;
            for (std::size_t j = 0; j < sol->size(); ++j)
               if (!(*sol)[j].is_zero())
                  comb += Scalar((*sol)[j]) * mod.psi[j];
            if (comb != p2)
               throw std::runtime_error("paired module: the polynomial slot is not compatible with the exterior slot under " +
                                        ops_src[order[o]].label);
            continue;
         }
         mod.eps.push_back(e2);
         mod.psi.push_back(p2);
         queue.push_back(mod.eps.size() - 1);
      }
   }
   mod.eps_rank = static_cast<int>(mod.eps.size());
   mod.psi_rank = poly_rank(mod.psi);
   if (mod.eps_rank != mod.psi_rank)
      throw std::runtime_error("paired module: exterior span has dimension " + std::to_string(mod.eps_rank) +
                               " but polynomial span has dimension " + std::to_string(mod.psi_rank));
   return mod;
}

namespace
{

void subsets_rec(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
   if (static_cast<int>(cur.size()) == k)
   {
      out.push_back(cur);
      return;
   }
   for (int i = start; i < n; ++i)
   {
      cur.push_back(i);
      subsets_rec(n, k, i + 1, cur, out);
      cur.pop_back();
   }
}

std::vector<std::vector<int>> subsets(int n, int k)
{
   std::vector<std::vector<int>> out;
   std::vector<int> cur;
   subsets_rec(n, k, 0, cur, out);
   return out;
}

Cochain build_half(DualPairCase const& c, Side side, std::uint64_t traversal_seed)
{
   PairedModule mod = generate_paired_module(seed_pair(c, side), traversal_seed);
   std::size_t d = mod.eps.size();
   GMatrix gram(d, std::vector<GaussianRational>(d));
   for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
         gram[i][j] = ext_inner(c, mod.eps[j], mod.eps[i], side);
   int np = static_cast<int>(p_basis(c, side).size());
   auto subs = subsets(np, c.codim());
   std::vector<ExtKey> keys;
   std::vector<std::vector<GaussianRational>> rhs;
   for (auto const& s : subs)
   {
      ExtKey key;
      for (int pos : s)
         key.push_back(p_label(c, pos, kind_of(side)));
      ExtVec x{{key, GaussianRational(1)}};
      std::vector<GaussianRational> b(d);
      for (std::size_t i = 0; i < d; ++i)
         b[i] = ext_inner(c, x, mod.eps[i], side);
      keys.push_back(key);
      rhs.push_back(b);
   }
   auto sol = solve_exact(gram, rhs);
   if (sol.rank != static_cast<int>(d))
      throw std::logic_error("build_phi: Gram matrix of V(U) is singular");
   Cochain out;
   for (std::size_t t = 0; t < keys.size(); ++t)
   {
      Poly val;
      for (std::size_t j = 0; j < d; ++j)
         if (!sol.solutions[t][j].is_zero())
            val += Scalar(sol.solutions[t][j]) * mod.psi[j];
      out.add_term(keys[t], val);
   }
   return out;
}

} // namespace

Cochain build_phi(DualPairCase const& c, PhiKind which, std::uint64_t traversal_seed)
{
   switch (which)
   {
   case PhiKind::Plus:
      return build_half(c, Side::Plus, traversal_seed);
   case PhiKind::Minus:
      return build_half(c, Side::Minus, traversal_seed);
   case PhiKind::Full:
      return wedge(build_half(c, Side::Plus, traversal_seed), build_half(c, Side::Minus, traversal_seed));
   }
   return Cochain();
}

Cochain rel_differential(DualPairCase const& c, Cochain const& x, std::optional<Sector> sector)
{
   auto const& lb = lie_basis(c);
   Cochain out;
   for (Side s : {Side::Plus, Side::Minus})
   {
      auto const& basis = s == Side::Plus ? lb.p_plus : lb.p_minus;
      for (std::size_t b = 0; b < basis.size(); ++b)
      {
         DiffOperator const& op = cached_action(c, basis[b], sector);
         Cochain img = x.map_coefficients([&](Poly const& p) { return apply(op, p); });
         if (img.is_zero())
            continue;
         out += wedge(Cochain::single(p_label(c, static_cast<int>(b), kind_of(s))), img);
      }
   }
   return out;
}

Cochain k_action(DualPairCase const& c, std::size_t k_index, Cochain const& x, std::optional<Sector> sector,
                 Rational const& shift)
{
   auto const& lb = lie_basis(c);
   auto const& ad = ad_data(c);
   Cochain out;
   for (auto const& [key, p] : x.terms())
   {
      for (std::size_t i = 0; i < key.size(); ++i)
      {
         Side s = key[i].kind == ExtIndex::XiPrime ? Side::Plus : Side::Minus;
         GMatrix const& m = s == Side::Plus ? ad.ad_plus[k_index] : ad.ad_minus[k_index];
         int t = p_position(c, key[i]);
         for (std::size_t b = 0; b < m.size(); ++b)
         {
            if (m[t][b].is_zero())
               continue;
            ExtKey nk = key;
            nk[i] = p_label(c, static_cast<int>(b), key[i].kind);
            int sign = sort_with_sign(nk);
            if (sign == 0)
               continue;
            out.add_term(nk, Scalar(-m[t][b] * GaussianRational(sign)) * p);
         }
      }
   }
   DiffOperator const& op = cached_action(c, lb.k[k_index], sector);
   GaussianRational sh = GaussianRational(shift) * ad.trace[k_index];
   out += x.map_coefficients([&](Poly const& p) { return apply(op, p) + Scalar(sh) * p; });
   return out;
}

CheckReport check_invariance(DualPairCase const& c, Cochain const& x, std::optional<Side> side)
{
   auto const& lb = lie_basis(c);
   std::optional<Sector> sector;
   Rational shift(0);
   if (side)
   {
      sector = value_sector(*side);
      shift = det_shift(c, *side);
   }
   CheckReport rep;
   for (std::size_t i = 0; i < lb.k.size(); ++i)
   {
      Cochain r = k_action(c, i, x, sector, shift);
      if (!r.is_zero())
      {
         rep.ok = false;
         rep.witness = "k generator " + lb.k[i].label + ": residual " + r.str();
         return rep;
      }
   }
   if (side)
   {
      Subalgebra alg = *side == Side::Plus ? Subalgebra::PMinus : Subalgebra::PPlus;
      for (auto const& [key, p] : x.terms())
      {
         auto a = annihilated_by(c, p, alg, sector);
         if (!a.ok)
         {
            rep.ok = false;
            rep.witness = "value not annihilated by " + a.failing_generator + ": image " + a.image.str();
            return rep;
         }
      }
   }
   return rep;
}

Cochain restrict_to_fiber(DualPairCase const& c, Cochain const& x)
{
   auto idx = c.index_set();
   std::set<std::pair<int, int>> in(idx.begin(), idx.end());
   Cochain out;
   for (auto const& [key, p] : x.terms())
   {
      bool keep = std::all_of(key.begin(), key.end(), [&](ExtIndex const& e) { return in.count({e.a, e.b}) > 0; });
      if (keep)
         out.add_term(key, p);
   }
   return out;
}

bool brackets_of_p_lie_in_k(DualPairCase const& c)
{
   auto const& lb = lie_basis(c);
   std::vector<LieElt const*> p;
   for (auto const& e : lb.p_plus)
      p.push_back(&e);
   for (auto const& e : lb.p_minus)
      p.push_back(&e);
   for (auto const* x : p)
      for (auto const* y : p)
         if (!coordinates(*bracket(*x, *y).vmat, lb.k))
            return false;
   return true;
}

std::vector<Cochain> invariant_cochains(DualPairCase const& c, int n_prime, int n_second, int max_deg, std::optional<Sector> sector)
{
   auto const& lb = lie_basis(c);
   int np = static_cast<int>(lb.p_index.size());
   std::vector<ExtKey> keys;
   for (auto const& s1 : subsets(np, n_prime))
   {
      for (auto const& s2 : subsets(np, n_second))
      {
         ExtKey key;
         for (int i : s1)
            key.push_back(p_label(c, i, ExtIndex::XiPrime));
         for (int i : s2)
            key.push_back(p_label(c, i, ExtIndex::XiDoublePrime));
         keys.push_back(key);
      }
   }
   auto monos = monomials_up_to(fock_variables(c, sector), max_deg);
   std::vector<Cochain> unknowns;
   for (auto const& k : keys)
      for (auto const& m : monos)
      {
         Cochain u;
         u.add_term(k, Poly(m, Scalar(1)));
         unknowns.push_back(u);
      }
   using Row = std::tuple<std::size_t, ExtKey, PolyCoord>;
   struct RowLess
   {
      bool operator()(Row const& a, Row const& b) const
      {
         if (std::get<0>(a) != std::get<0>(b))
            return std::get<0>(a) < std::get<0>(b);
         if (std::get<1>(a) != std::get<1>(b))
            return std::get<1>(a) < std::get<1>(b);
         return PolyCoordLess{}(std::get<2>(a), std::get<2>(b));
      }
   };
   std::map<Row, std::size_t, RowLess> rows;
   std::vector<std::vector<std::pair<std::size_t, GaussianRational>>> cols(unknowns.size());
   for (std::size_t j = 0; j < unknowns.size(); ++j)
   {
      for (std::size_t i = 0; i < lb.k.size(); ++i)
      {
         Cochain img = k_action(c, i, unknowns[j], sector, Rational(0));
         for (auto const& [key, p] : img.terms())
            for_each_coord(p, [&](PolyCoord const& pc, GaussianRational const& q) {
               auto it = rows.emplace(Row{i, key, pc}, rows.size()).first;
               cols[j].push_back({it->second, q});
            });
      }
   }
   if (rows.empty())
      return unknowns;
   GMatrix m(rows.size(), std::vector<GaussianRational>(unknowns.size()));
   for (std::size_t j = 0; j < cols.size(); ++j)
      for (auto const& [r, q] : cols[j])
         m[r][j] += q;
   auto res = solve_exact(m);
   std::vector<Cochain> out;
   for (auto const& kv : res.kernel)
   {
      Cochain x;
      for (std::size_t j = 0; j < kv.size(); ++j)
         if (!kv[j].is_zero())
            x += unknowns[j].map_coefficients([&](Poly const& p) { return Scalar(kv[j]) * p; });
      out.push_back(x);
   }
   return out;
}

} // namespace weil
