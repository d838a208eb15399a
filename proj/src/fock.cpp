// SPDX-License-Identifier: MIT
//
// src/fock.cpp
//

#include "weil/fock.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace weil
{

// ---------------------------------------------------------------- DualPairCase

DualPairCase DualPairCase::make_a(int p, int q, int r, int s)
{
   DualPairCase c;
   c.tag = A;
   c.p = p;
   c.q = q;
   c.r = r;
   c.s = s;
   c.n = 0;
   return c;
}

DualPairCase DualPairCase::make_b(int n, int r)
{
   DualPairCase c;
   c.tag = B;
   c.n = n;
   c.r = r;
   c.p = c.q = n;
   c.s = 0;
   return c;
}

DualPairCase DualPairCase::make_c(int n, int r)
{
   DualPairCase c = make_b(n, r);
   c.tag = C;
   return c;
}

void DualPairCase::validate() const
{
   if (tag == A)
   {
      if (p < 1 || q < 1)
         throw std::invalid_argument("case A needs p >= 1 and q >= 1");
      if (r < 0 || r > p)
         throw std::invalid_argument("case A needs 0 <= r <= p");
      if (s < 0 || s > q)
         throw std::invalid_argument("case A needs 0 <= s <= q");
      if (r + s < 1)
         throw std::invalid_argument("case A needs r + s >= 1");
   }
   else if (tag == B)
   {
      if (n < 1 || r < 1 || r > n)
         throw std::invalid_argument("case B needs 1 <= r <= n");
   }
   else
   {
      if (n < 2 || r < 1 || r > n - 1)
         throw std::invalid_argument("case C needs 1 <= r <= n - 1");
   }
}

int DualPairCase::codim() const
{
   switch (tag)
   {
   case A:
      return r * q + p * s - r * s;
   case B:
      return n * (n + 1) / 2 - (n - r) * (n - r + 1) / 2;
   case C:
      return n * (n - 1) / 2 - (n - r) * (n - r - 1) / 2;
   }
   return 0;
}

std::vector<std::pair<int, int>> DualPairCase::index_set() const
{
   std::vector<std::pair<int, int>> idx;
   if (tag == A)
   {
      for (int a = 1; a <= p; ++a)
      {
         int mu_hi = a <= r ? p + q : p + s;
         for (int mu = p + 1; mu <= mu_hi; ++mu)
            idx.emplace_back(a, mu);
      }
   }
   else
   {
      for (int a = 1; a <= r; ++a)
         for (int b = (tag == B ? a : a + 1); b <= n; ++b)
            idx.emplace_back(a, b);
   }
   return idx;
}

std::string DualPairCase::label() const
{
   if (tag == A)
      return "A(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "," + std::to_string(s) + ")";
   return std::string(1, tag_char()) + "(" + std::to_string(n) + "," + std::to_string(r) + ")";
}

// ---------------------------------------------------------------- Weyl algebra

WeylRole weyl_role(DualPairCase const& c, WVec const& w)
{
   bool creation = w.plus_type;
   if (!c.is_alpha(w.row))
      creation = !creation;
   if (w.sec == Sector::Plus)
      creation = !creation;
   Var v = w.sec == Sector::Plus ? Var::up(w.row, w.col) : Var::um(w.row, w.col);
   return {v, creation};
}

DiffOperator weyl_action(DualPairCase const& c, WVec const& w)
{
   if (w.row < 1 || w.row > c.rows() || w.col < 1 || w.col > c.cols())
      throw std::invalid_argument("weyl_action: index outside the case");
   WeylRole role = weyl_role(c, w);
   if (role.creation)
      return DiffOperator::multiply(Poly(role.var));
   return DiffOperator::partial(role.var, Scalar(-4) * Scalar::pi());
}

std::vector<WVec> weyl_basis(DualPairCase const& c)
{
   std::vector<WVec> b;
   for (Sector sec : {Sector::Plus, Sector::Minus})
      for (int i = 1; i <= c.rows(); ++i)
         for (int a = 1; a <= c.cols(); ++a)
            for (bool t : {true, false})
               b.push_back({sec, i, a, t});
   return b;
}

std::vector<Var> fock_variables(DualPairCase const& c, std::optional<Sector> only)
{
   std::vector<Var> v;
   for (Sector sec : {Sector::Plus, Sector::Minus})
   {
      if (only && *only != sec)
         continue;
      for (int i = 1; i <= c.rows(); ++i)
         for (int a = 1; a <= c.cols(); ++a)
            v.push_back(sec == Sector::Plus ? Var::up(i, a) : Var::um(i, a));
   }
   return v;
}

// ---------------------------------------------------------------- LinMap

void LinMap::add(WVec const& from, WVec const& to, GaussianRational const& c)
{
   if (c.is_zero())
      return;
   auto& col = cols_[from];
   auto it = col.find(to);
   if (it == col.end())
      col.emplace(to, c);
   else
   {
      it->second += c;
      if (it->second.is_zero())
         col.erase(it);
   }
   if (col.empty())
      cols_.erase(from);
}

LinMap::Column LinMap::image(WVec const& w) const
{
   auto it = cols_.find(w);
   return it == cols_.end() ? Column{} : it->second;
}

LinMap& LinMap::operator+=(LinMap const& o)
{
   for (auto const& [from, col] : o.cols_)
      for (auto const& [to, c] : col)
         add(from, to, c);
   return *this;
}

LinMap& LinMap::operator*=(GaussianRational const& c)
{
   if (c.is_zero())
   {
      cols_.clear();
      return *this;
   }
   for (auto& [from, col] : cols_)
      for (auto& [to, v] : col)
         v *= c;
   return *this;
}

LinMap operator+(LinMap a, LinMap const& b) { return a += b; }

LinMap operator-(LinMap a, LinMap const& b)
{
   LinMap nb = b;
   nb *= GaussianRational(-1);
   return a += nb;
}

LinMap compose(LinMap const& a, LinMap const& b)
{
   LinMap r;
   for (auto const& [from, col] : b.columns())
      for (auto const& [mid, c1] : col)
         for (auto const& [to, c2] : a.image(mid))
            r.add(from, to, c1 * c2);
   return r;
}

LieElt bracket(LieElt const& a, LieElt const& b)
{
   LieElt r;
   r.label = "[" + a.label + "," + b.label + "]";
   r.action = compose(a.action, b.action) - compose(b.action, a.action);
   if (a.vmat && b.vmat)
   {
      GMatrix ab = mat_mul(*a.vmat, *b.vmat);
      GMatrix ba = mat_mul(*b.vmat, *a.vmat);
      for (std::size_t i = 0; i < ab.size(); ++i)
         for (std::size_t j = 0; j < ab.size(); ++j)
            ab[i][j] -= ba[i][j];
      r.vmat = ab;
   }
   else if (a.vmat || b.vmat)
   {
      // g and k' commute; the bracket has no V-part
      std::size_t n = a.vmat ? a.vmat->size() : b.vmat->size();
      r.vmat = GMatrix(n, std::vector<GaussianRational>(n));
   }
   return r;
}

LieElt lin_comb(std::vector<std::pair<GaussianRational, LieElt const*>> const& terms, std::string label)
{
   LieElt r;
   r.label = std::move(label);
   bool all_v = !terms.empty();
   for (auto const& [c, e] : terms)
      all_v = all_v && e->vmat.has_value();
   if (all_v)
   {
      std::size_t n = terms.front().second->vmat->size();
      r.vmat = GMatrix(n, std::vector<GaussianRational>(n));
   }
   for (auto const& [c, e] : terms)
   {
      LinMap m = e->action;
      m *= c;
      r.action += m;
      if (all_v)
         for (std::size_t i = 0; i < r.vmat->size(); ++i)
            for (std::size_t j = 0; j < r.vmat->size(); ++j)
               (*r.vmat)[i][j] += c * (*e->vmat)[i][j];
   }
   return r;
}

// ---------------------------------------------------------------- builders

namespace
{

GMatrix zeros(int n, int m) { return GMatrix(n, std::vector<GaussianRational>(m)); }

GMatrix unit(int n, int i, int j, GaussianRational v = GaussianRational(1))
{
   GMatrix z = zeros(n, n);
   z[i][j] = v;
   return z;
}

// Row conjugation of V used by the antilinear part of k' in cases B and C:
// sigma(v_i) = sign * v_{sigma i}.
std::pair<int, int> v_conjugation(DualPairCase const& c, int row)
{
   int n = c.n;
   if (row <= n)
      return {row + n, 1};
   return {row - n, c.tag == DualPairCase::C ? -1 : 1};
}

} // namespace

LieElt lie_from_v_matrix(DualPairCase const& c, GMatrix const& z, std::string label)
{
   int nr = c.rows();
   // on minus-type vectors the matrix acts by conj(Z) = -H Z^T H, H = diag(1_npos, -1)
   auto h = [&](int i) { return c.is_alpha(i + 1) ? 1 : -1; };
   LieElt e;
   e.label = std::move(label);
   e.vmat = z;
   for (Sector sec : {Sector::Plus, Sector::Minus})
   {
      for (int col = 1; col <= c.cols(); ++col)
      {
         for (int j = 0; j < nr; ++j)
         {
            for (int i = 0; i < nr; ++i)
            {
               e.action.add({sec, j + 1, col, true}, {sec, i + 1, col, true}, z[i][j]);
               GaussianRational zm = z[j][i];
               if (h(i) * h(j) > 0)
                  zm = -zm;
               e.action.add({sec, j + 1, col, false}, {sec, i + 1, col, false}, zm);
            }
         }
      }
   }
   return e;
}

LieElt lie_from_w_linear(DualPairCase const& c, Sector sec, GMatrix const& z, std::string label)
{
   // the form is definite on each sector, so conj(Z) = -Z^T there
   int m = c.cols();
   LieElt e;
   e.label = std::move(label);
   for (int row = 1; row <= c.rows(); ++row)
   {
      for (int b = 0; b < m; ++b)
      {
         for (int a = 0; a < m; ++a)
         {
            e.action.add({sec, row, b + 1, true}, {sec, row, a + 1, true}, z[a][b]);
            e.action.add({sec, row, b + 1, false}, {sec, row, a + 1, false}, -z[b][a]);
         }
      }
   }
   return e;
}

LieElt lie_from_w_orthogonal(DualPairCase const& c, Sector sec, GMatrix const& l, std::string label)
{
   int m = c.cols();
   LieElt e;
   e.label = std::move(label);
   for (int row = 1; row <= c.rows(); ++row)
   {
      auto [srow, sign] = v_conjugation(c, row);
      GaussianRational sg(sign);
      for (int col = 0; col < m; ++col)
      {
         for (int d = 0; d < m; ++d)
         {
            e.action.add({sec, row, col + 1, true}, {sec, row, d + 1, true}, l[d][col]);
            e.action.add({sec, row, col + 1, true}, {sec, srow, d + 1, false}, sg * l[m + d][col]);
            e.action.add({sec, row, col + 1, false}, {sec, row, d + 1, false}, l[m + d][m + col]);
            e.action.add({sec, row, col + 1, false}, {sec, srow, d + 1, true}, sg * l[d][m + col]);
         }
      }
   }
   return e;
}

LieElt lie_from_w_quaternionic(DualPairCase const& c, Sector sec, GMatrix const& mtx, std::string label)
{
   int m = c.cols();
   LieElt e;
   e.label = std::move(label);
   for (int row = 1; row <= c.rows(); ++row)
   {
      auto [srow, sign] = v_conjugation(c, row);
      GaussianRational sg(sign);
      for (int l = 0; l < m; ++l)
      {
         for (int k = 0; k < m; ++k)
         {
            e.action.add({sec, row, l + 1, true}, {sec, row, k + 1, true}, mtx[k][l]);
            e.action.add({sec, row, l + 1, true}, {sec, srow, k + 1, false}, sg * mtx[m + k][l]);
            e.action.add({sec, row, l + 1, false}, {sec, row, k + 1, false}, mtx[m + k][m + l]);
            e.action.add({sec, row, l + 1, false}, {sec, srow, k + 1, true}, -sg * mtx[k][m + l]);
         }
      }
   }
   return e;
}

namespace
{

// <<x, y>> on basis vectors: <<a_v, c_v>> = 2i, <<c_v, a_v>> = -2i.
GaussianRational pairing(DualPairCase const& c, WVec const& x, WVec const& y)
{
   if (x.sec != y.sec || x.row != y.row || x.col != y.col || x.plus_type == y.plus_type)
      return GaussianRational(0);
   bool x_creation = weyl_role(c, x).creation;
   return x_creation ? GaussianRational(0, -2) : GaussianRational(0, 2);
}

} // namespace

bool is_symplectic(DualPairCase const& c, LieElt const& t)
{
   auto basis = weyl_basis(c);
   for (auto const& x : basis)
   {
      auto tx = t.action.image(x);
      for (auto const& y : basis)
      {
         GaussianRational s;
         for (auto const& [z, v] : tx)
            s += v * pairing(c, z, y);
         for (auto const& [z, v] : t.action.image(y))
            s += v * pairing(c, x, z);
         if (!s.is_zero())
            return false;
      }
   }
   return true;
}

DiffOperator lie_action(DualPairCase const& c, LieElt const& t, std::optional<Sector> only)
{
   if (t.omega && !only)
      return *t.omega;
   DiffOperator r;
   Scalar half = Scalar(GaussianRational(make_rational(1, 2)));
   for (auto const& [b, col] : t.action.columns())
   {
      if (only && b.sec != *only)
         continue;
      WVec partner = b;
      partner.plus_type = !b.plus_type;
      DiffOperator rp = weyl_action(c, partner);
      bool annihilation = !weyl_role(c, b).creation;
      for (auto const& [bp, coef] : col)
      {
         DiffOperator x = weyl_action(c, bp);
         DiffOperator sym = half * (compose(x, rp) + compose(rp, x));
         GaussianRational k = annihilation ? coef : -coef;
         r += Scalar(k) * sym;
      }
   }
   r *= Scalar(GaussianRational(make_rational(1, 8))) * Scalar::pi(-1);
   return r;
}

// ---------------------------------------------------------------- Lie bases

namespace
{

std::string idx2(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

void finish(DualPairCase const& c, std::vector<LieElt>& v)
{
   for (auto& e : v)
      e.omega = lie_action(c, e);
}

LieBasis build_basis_a(DualPairCase const& c)
{
   LieBasis lb;
   int p = c.p, q = c.q, N = p + q, m = c.cols();
   for (int i = 0; i < N; ++i)
   {
      for (int j = 0; j < N; ++j)
      {
         bool same_block = (i < p) == (j < p);
         if (!same_block)
            continue;
         LieElt e = lie_from_v_matrix(c, unit(N, i, j), "e_" + idx2(i + 1, j + 1));
         lb.k.push_back(e);
         if (i == j)
            lb.k_torus.push_back(e);
         // b: e_{ab} with a <= b in the first block, e_{mu nu} with nu <= mu in the second
         bool raising = i < p ? i < j : j < i;
         if (i != j)
            (raising ? lb.k_raising : lb.k_lowering).push_back(e);
      }
   }
   for (int a = 1; a <= p; ++a)
   {
      for (int mu = p + 1; mu <= N; ++mu)
      {
         lb.p_index.emplace_back(a, mu);
         lb.p_plus.push_back(lie_from_v_matrix(c, unit(N, a - 1, mu - 1, 2), "X_" + idx2(a, mu)));
         lb.p_minus.push_back(lie_from_v_matrix(c, unit(N, mu - 1, a - 1, 2), "Y_" + idx2(a, mu)));
      }
   }
   for (Sector sec : {Sector::Minus, Sector::Plus})
   {
      bool minus = sec == Sector::Minus;
      for (int a = 0; a < m; ++a)
      {
         for (int b = 0; b < m; ++b)
         {
            LieElt e = lie_from_w_linear(c, sec, unit(m, a, b), std::string(minus ? "kp-" : "kp+") + "e_" + idx2(a + 1, b + 1));
            (minus ? lb.kp_minus : lb.kp_plus).push_back(e);
            if (a == b)
               (minus ? lb.kp_minus_torus : lb.kp_plus_torus).push_back(e);
            if (minus && a < b)
               lb.kp_minus_n.push_back(e);
            if (!minus && a > b)
               lb.kp_plus_n.push_back(e);
         }
      }
   }
   return lb;
}

// k = gl(n) embedded as e_{ab} - e_{b+n, a+n}; shared by cases B and C.
void build_k_bc(DualPairCase const& c, LieBasis& lb)
{
   int n = c.n, N = 2 * n;
   for (int a = 0; a < n; ++a)
   {
      for (int b = 0; b < n; ++b)
      {
         GMatrix z = unit(N, a, b);
         z[b + n][a + n] -= GaussianRational(1);
         LieElt e = lie_from_v_matrix(c, z, "k_" + idx2(a + 1, b + 1));
         lb.k.push_back(e);
         if (a == b)
            lb.k_torus.push_back(e);
         else
            (a < b ? lb.k_raising : lb.k_lowering).push_back(e);
      }
   }
}

// x ^ y acting on the 2m-dimensional space with symmetric Gram matrix g:
// (x ^ y)(z) = <x,z> y - <y,z> x.
GMatrix wedge_op(GMatrix const& g, int x, int y)
{
   int d = static_cast<int>(g.size());
   GMatrix l = zeros(d, d);
   for (int z = 0; z < d; ++z)
   {
      l[y][z] += g[x][z];
      l[x][z] -= g[y][z];
   }
   return l;
}

LieBasis build_basis_b(DualPairCase const& c)
{
   LieBasis lb;
   build_k_bc(c, lb);
   int n = c.n, N = 2 * n, m = c.cols();
   for (int a = 1; a <= n; ++a)
   {
      for (int b = a; b <= n; ++b)
      {
         lb.p_index.emplace_back(a, b);
         GMatrix x = zeros(N, N);
         x[b - 1][a - 1 + n] += GaussianRational(1);
         x[a - 1][b - 1 + n] += GaussianRational(1);
         GMatrix y = zeros(N, N);
         y[a - 1 + n][b - 1] += GaussianRational(1);
         y[b - 1 + n][a - 1] += GaussianRational(1);
         lb.p_plus.push_back(lie_from_v_matrix(c, x, "X_" + idx2(a, b)));
         lb.p_minus.push_back(lie_from_v_matrix(c, y, "Y_" + idx2(a, b)));
      }
   }
   // k': o(W_sec (x) C) in the basis (y+_1..y+_m, y-_1..y-_m).  On the minus
   // sector y+ = w'', y- = w' and <w'_k, w''_l> = -2 delta; on the plus sector
   // y+ = w', y- = w'' and <w'_a, w''_b> = 2 delta.
   for (Sector sec : {Sector::Minus, Sector::Plus})
   {
      bool minus = sec == Sector::Minus;
      GMatrix g = zeros(2 * m, 2 * m);
      for (int k = 0; k < m; ++k)
         g[k][m + k] = g[m + k][k] = GaussianRational(minus ? -2 : 2);
      auto wp = [&](int k) { return minus ? m + k : k; };   // index of w'_k
      auto wpp = [&](int k) { return minus ? k : m + k; };  // index of w''_k
      std::string pre = minus ? "kp-" : "kp+";
      auto& all = minus ? lb.kp_minus : lb.kp_plus;
      auto& nil = minus ? lb.kp_minus_n : lb.kp_plus_n;
      auto& tor = minus ? lb.kp_minus_torus : lb.kp_plus_torus;
      for (int k = 0; k < m; ++k)
      {
         for (int l = 0; l < m; ++l)
         {
            LieElt e = lie_from_w_orthogonal(c, sec, wedge_op(g, wp(k), wpp(l)), pre + "w'" + std::to_string(k + 1) + "^w''" + std::to_string(l + 1));
            all.push_back(e);
            if (k < l)
               nil.push_back(e);
         }
      }
      for (int k = 0; k < m; ++k)
      {
         for (int l = k + 1; l < m; ++l)
         {
            LieElt e1 = lie_from_w_orthogonal(c, sec, wedge_op(g, wp(k), wp(l)), pre + "w'" + std::to_string(k + 1) + "^w'" + std::to_string(l + 1));
            LieElt e2 = lie_from_w_orthogonal(c, sec, wedge_op(g, wpp(k), wpp(l)), pre + "w''" + std::to_string(k + 1) + "^w''" + std::to_string(l + 1));
            all.push_back(e1);
            all.push_back(e2);
            nil.push_back(e2);
         }
      }
      // torus: +1 on y+_k, -1 on y-_k
      for (int k = 0; k < m; ++k)
      {
         GMatrix h = zeros(2 * m, 2 * m);
         h[k][k] = GaussianRational(1);
         h[m + k][m + k] = GaussianRational(-1);
         tor.push_back(lie_from_w_orthogonal(c, sec, h, pre + "H_" + std::to_string(k + 1)));
      }
   }
   return lb;
}

LieBasis build_basis_c(DualPairCase const& c)
{
   LieBasis lb;
   build_k_bc(c, lb);
   int n = c.n, N = 2 * n, m = c.cols();
   for (int a = 1; a <= n; ++a)
   {
      for (int b = a + 1; b <= n; ++b)
      {
         lb.p_index.emplace_back(a, b);
         GMatrix x = zeros(N, N);
         x[a - 1][b - 1 + n] += GaussianRational(1);
         x[b - 1][a - 1 + n] -= GaussianRational(1);
         GMatrix y = zeros(N, N);
         y[b - 1 + n][a - 1] += GaussianRational(1);
         y[a - 1 + n][b - 1] -= GaussianRational(1);
         lb.p_plus.push_back(lie_from_v_matrix(c, x, "X_" + idx2(a, b)));
         lb.p_minus.push_back(lie_from_v_matrix(c, y, "Y_" + idx2(a, b)));
      }
   }
   // k': sp(2m, C) in the basis (w_1..w_m, j w_1..j w_m) of each sector.
   for (Sector sec : {Sector::Minus, Sector::Plus})
   {
      bool minus = sec == Sector::Minus;
      std::string pre = minus ? "kp-" : "kp+";
      auto& all = minus ? lb.kp_minus : lb.kp_plus;
      auto& nil = minus ? lb.kp_minus_n : lb.kp_plus_n;
      auto& tor = minus ? lb.kp_minus_torus : lb.kp_plus_torus;
      for (int k = 0; k < m; ++k)
      {
         for (int l = 0; l < m; ++l)
         {
            GMatrix z = unit(2 * m, k, l);
            z[m + l][m + k] -= GaussianRational(1);
            LieElt e = lie_from_w_quaternionic(c, sec, z, pre + "a_" + idx2(k + 1, l + 1));
            all.push_back(e);
            if (k == l)
               tor.push_back(e);
            if (minus && k < l)
            {
               GMatrix zn = unit(2 * m, m + l, m + k);
               zn[k][l] -= GaussianRational(1);
               nil.push_back(lie_from_w_quaternionic(c, sec, zn, pre + "n_" + idx2(k + 1, l + 1)));
            }
            if (!minus && k > l)
               nil.push_back(e);
         }
      }
      for (int k = 0; k < m; ++k)
      {
         for (int l = k; l < m; ++l)
         {
            GMatrix up = zeros(2 * m, 2 * m);
            up[k][m + l] += GaussianRational(1);
            up[l][m + k] += GaussianRational(1);
            GMatrix lo = zeros(2 * m, 2 * m);
            lo[m + k][l] += GaussianRational(1);
            lo[m + l][k] += GaussianRational(1);
            LieElt eu = lie_from_w_quaternionic(c, sec, up, pre + "b_" + idx2(k + 1, l + 1));
            LieElt el = lie_from_w_quaternionic(c, sec, lo, pre + "c_" + idx2(k + 1, l + 1));
            all.push_back(eu);
            all.push_back(el);
            nil.push_back(minus ? eu : el);
         }
      }
   }
   return lb;
}

} // namespace

LieBasis const& lie_basis(DualPairCase const& c)
{
   static std::mutex mtx;
   static std::map<std::string, LieBasis> cache;
   std::lock_guard<std::mutex> lock(mtx);
   auto key = c.label();
   auto it = cache.find(key);
   if (it != cache.end())
      return it->second;
   c.validate();
   LieBasis lb = c.tag == DualPairCase::A ? build_basis_a(c) : c.tag == DualPairCase::B ? build_basis_b(c) : build_basis_c(c);
   for (auto* v : {&lb.k, &lb.k_torus, &lb.k_raising, &lb.k_lowering, &lb.p_plus, &lb.p_minus, &lb.kp_minus,
                   &lb.kp_minus_torus, &lb.kp_minus_n, &lb.kp_plus, &lb.kp_plus_torus, &lb.kp_plus_n})
      finish(c, *v);
   return cache.emplace(key, std::move(lb)).first->second;
}

// ---------------------------------------------------------------- weights

WeightResult weight_of(DualPairCase const& c, Poly const& p, Torus torus, Rational const& shift,
                       std::optional<Sector> sector)
{
   if (p.is_zero())
      throw std::invalid_argument("weight_of: zero polynomial");
   LieBasis const& lb = lie_basis(c);
   auto const& gens = torus == Torus::K ? lb.k_torus : torus == Torus::KPrimeMinus ? lb.kp_minus_torus : lb.kp_plus_torus;
   WeightResult res;
   res.ok = true;
   auto const& [m0, c0] = *p.terms().begin();
   for (auto const& h : gens)
   {
      Poly img = apply(sector ? lie_action(c, h, sector) : *h.omega, p);
      Scalar ci = img.coefficient(m0);
      // eigenvalue candidate: ci / c0, computed componentwise
      GaussianRational q0, qi;
      int pi0 = 0, s0 = 0, pii = 0, si = 0;
      std::optional<GaussianRational> lam;
      if (ci.is_zero())
         lam = GaussianRational(0);
      else if (c0.is_monomial(&q0, &pi0, &s0) && ci.is_monomial(&qi, &pii, &si) && pi0 == pii && s0 == si)
         lam = qi / q0;
      if (!lam || sgn(lam->im) != 0 || img != Scalar(*lam) * p)
      {
         res.ok = false;
         res.failing_generator = h.label;
         res.weight.clear();
         return res;
      }
      res.weight.push_back(Rational(lam->re + shift));
   }
   return res;
}

AnnihilationResult annihilated_by(DualPairCase const& c, Poly const& p, Subalgebra alg, std::optional<Sector> sector)
{
   if (p.is_zero())
      throw std::invalid_argument("annihilated_by: zero polynomial");
   LieBasis const& lb = lie_basis(c);
   std::vector<LieElt const*> gens;
   switch (alg)
   {
   case Subalgebra::N:
      for (auto const& e : lb.k_raising)
         gens.push_back(&e);
      break;
   case Subalgebra::KPrimeN:
      for (auto const& e : lb.kp_minus_n)
         gens.push_back(&e);
      break;
   case Subalgebra::PMinus:
      for (auto const& e : lb.p_minus)
         gens.push_back(&e);
      break;
   case Subalgebra::PPlus:
      for (auto const& e : lb.p_plus)
         gens.push_back(&e);
      break;
   }
   AnnihilationResult res;
   for (auto const* g : gens)
   {
      Poly img = apply(sector ? lie_action(c, *g, sector) : *g->omega, p);
      if (!img.is_zero())
      {
         res.ok = false;
         res.failing_generator = g->label;
         res.image = img;
         return res;
      }
   }
   return res;
}

namespace
{

void monos_rec(std::vector<Var> const& vars, std::size_t i, int left, Monomial cur, std::vector<Monomial>& out)
{
   if (i == vars.size())
   {
      out.push_back(cur);
      return;
   }
   for (int e = 0; e <= left; ++e)
      monos_rec(vars, i + 1, left - e, e ? cur * Monomial(vars[i], e) : cur, out);
}

} // namespace

std::vector<Monomial> monomials_up_to(std::vector<Var> const& vars, int d)
{
   std::vector<Monomial> out;
   monos_rec(vars, 0, d, Monomial(), out);
   std::sort(out.begin(), out.end());
   return out;
}

} // namespace weil
