// SPDX-License-Identifier: MIT
//
// src/exactalg.cpp
//

#include "weil/exactalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace weil
{

Rational make_rational(long num, long den)
{
   Rational r(num, den);
   r.canonicalize();
   return r;
}

// ---------------------------------------------------------------- Q(i)

std::string GaussianRational::str() const
{
   std::ostringstream s;
   if (sgn(im) == 0)
      s << re.get_str();
   else if (sgn(re) == 0)
      s << im.get_str() << "i";
   else
      s << "(" << re.get_str() << (sgn(im) > 0 ? "+" : "") << im.get_str() << "i)";
   return s.str();
}

GaussianRational& GaussianRational::operator+=(GaussianRational const& o)
{
   re += o.re;
   im += o.im;
   return *this;
}

GaussianRational& GaussianRational::operator-=(GaussianRational const& o)
{
   re -= o.re;
   im -= o.im;
   return *this;
}

GaussianRational& GaussianRational::operator*=(GaussianRational const& o)
{
   Rational r = re * o.re - im * o.im;
   Rational i = re * o.im + im * o.re;
   re = std::move(r);
   im = std::move(i);
   return *this;
}

GaussianRational& GaussianRational::operator/=(GaussianRational const& o)
{
   Rational n = o.norm2();
   if (sgn(n) == 0)
      throw std::domain_error("GaussianRational: division by zero");
   *this *= o.conj();
   re /= n;
   im /= n;
   return *this;
}

GaussianRational operator+(GaussianRational a, GaussianRational const& b) { return a += b; }
GaussianRational operator-(GaussianRational a, GaussianRational const& b) { return a -= b; }
GaussianRational operator-(GaussianRational const& a) { return {-a.re, -a.im}; }
GaussianRational operator*(GaussianRational a, GaussianRational const& b) { return a *= b; }
GaussianRational operator/(GaussianRational a, GaussianRational const& b) { return a /= b; }
bool operator==(GaussianRational const& a, GaussianRational const& b) { return a.re == b.re && a.im == b.im; }

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(GaussianRational const& q, int pi_pow, int sqrt2_pow)
{
   GaussianRational c = q;
   // fold even powers of sqrt 2 into the rational part
   int half = sqrt2_pow >= 0 ? sqrt2_pow / 2 : -((-sqrt2_pow + 1) / 2);
   int rem = sqrt2_pow - 2 * half;
   Rational two(1);
   if (half >= 0)
      mpz_mul_2exp(two.get_num_mpz_t(), two.get_num_mpz_t(), half);
   else
      mpz_mul_2exp(two.get_den_mpz_t(), two.get_den_mpz_t(), -half);
   c *= GaussianRational(two);
   add_part({pi_pow, rem}, c);
}

void Scalar::add_part(Key k, GaussianRational const& q)
{
   if (q.is_zero())
      return;
   auto it = parts_.find(k);
   if (it == parts_.end())
      parts_.emplace(k, q);
   else
   {
      it->second += q;
      if (it->second.is_zero())
         parts_.erase(it);
   }
}

bool Scalar::is_monomial(GaussianRational* q, int* pi_pow, int* sqrt2_pow) const
{
   if (parts_.size() != 1)
      return false;
   auto const& [k, v] = *parts_.begin();
   if (q)
      *q = v;
   if (pi_pow)
      *pi_pow = k.first;
   if (sqrt2_pow)
      *sqrt2_pow = k.second;
   return true;
}

std::optional<GaussianRational> Scalar::as_gaussian() const
{
   if (parts_.empty())
      return GaussianRational(0);
   if (parts_.size() == 1 && parts_.begin()->first == Key{0, 0})
      return parts_.begin()->second;
   return std::nullopt;
}

Scalar Scalar::conj() const
{
   Scalar r;
   for (auto const& [k, v] : parts_)
      r.parts_.emplace(k, v.conj());
   return r;
}

std::complex<double> Scalar::to_complex() const
{
   std::complex<double> s = 0.0;
   for (auto const& [k, v] : parts_)
      s += v.to_complex() * std::pow(std::numbers::pi, k.first) * (k.second ? std::numbers::sqrt2 : 1.0);
   return s;
}

std::string Scalar::str() const
{
   if (parts_.empty())
      return "0";
   std::ostringstream s;
   bool first = true;
   for (auto const& [k, v] : parts_)
   {
      if (!first)
         s << " + ";
      first = false;
      s << v.str();
      if (k.first != 0)
         s << "*pi^" << k.first;
      if (k.second != 0)
         s << "*sqrt2";
   }
   return s.str();
}

Scalar& Scalar::operator+=(Scalar const& o)
{
   for (auto const& [k, v] : o.parts_)
      add_part(k, v);
   return *this;
}

Scalar& Scalar::operator-=(Scalar const& o)
{
   for (auto const& [k, v] : o.parts_)
      add_part(k, -v);
   return *this;
}

Scalar& Scalar::operator*=(Scalar const& o)
{
   Scalar r;
   for (auto const& [k1, v1] : parts_)
   {
      for (auto const& [k2, v2] : o.parts_)
      {
         GaussianRational c = v1 * v2;
         int s = k1.second + k2.second;
         if (s == 2)
         {
            c *= GaussianRational(2);
            s = 0;
         }
         r.add_part({k1.first + k2.first, s}, c);
      }
   }
   *this = std::move(r);
   return *this;
}

Scalar operator+(Scalar a, Scalar const& b) { return a += b; }
Scalar operator-(Scalar a, Scalar const& b) { return a -= b; }
Scalar operator-(Scalar const& a) { return Scalar(GaussianRational(-1)) * a; }
Scalar operator*(Scalar a, Scalar const& b) { return a *= b; }

// ---------------------------------------------------------------- Var

std::string Var::name() const
{
   static char const* const prefix[] = {"up", "um", "z", "zb"};
   return std::string(prefix[kind]) + "_" + std::to_string(row) + "_" + std::to_string(col);
}

std::optional<Var> Var::parse(std::string const& s)
{
   auto p1 = s.find('_');
   if (p1 == std::string::npos)
      return std::nullopt;
   auto p2 = s.find('_', p1 + 1);
   if (p2 == std::string::npos)
      return std::nullopt;
   std::string pre = s.substr(0, p1);
   Var v;
   if (pre == "up")
      v.kind = UPlus;
   else if (pre == "um")
      v.kind = UMinus;
   else if (pre == "z")
      v.kind = Z;
   else if (pre == "zb")
      v.kind = ZBar;
   else
      return std::nullopt;
   try
   {
      v.row = std::stoi(s.substr(p1 + 1, p2 - p1 - 1));
      v.col = std::stoi(s.substr(p2 + 1));
   }
   catch (...)
   {
      return std::nullopt;
   }
   if (v.row < 1 || v.col < 1)
      return std::nullopt;
   return v;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, int e)
{
   if (e < 0)
      throw std::invalid_argument("Monomial: negative exponent");
   if (e > 0)
   {
      e_.emplace_back(v, e);
      deg_ = e;
   }
}

int Monomial::exponent(Var v) const
{
   for (auto const& [w, e] : e_)
      if (w == v)
         return e;
   return 0;
}

std::string Monomial::str() const
{
   if (e_.empty())
      return "1";
   std::string s;
   for (auto const& [v, e] : e_)
   {
      if (!s.empty())
         s += "*";
      s += v.name();
      if (e != 1)
         s += "^" + std::to_string(e);
   }
   return s;
}

Monomial Monomial::operator*(Monomial const& o) const
{
   Monomial r;
   r.e_.reserve(e_.size() + o.e_.size());
   auto a = e_.begin();
   auto b = o.e_.begin();
   while (a != e_.end() || b != o.e_.end())
   {
      if (b == o.e_.end() || (a != e_.end() && a->first < b->first))
         r.e_.push_back(*a++);
      else if (a == e_.end() || b->first < a->first)
         r.e_.push_back(*b++);
      else
      {
         r.e_.emplace_back(a->first, a->second + b->second);
         ++a;
         ++b;
      }
   }
   r.deg_ = deg_ + o.deg_;
   return r;
}

std::optional<Monomial> Monomial::divide(Monomial const& o) const
{
   Monomial r;
   auto a = e_.begin();
   for (auto const& [v, e] : o.e_)
   {
      while (a != e_.end() && a->first < v)
         r.e_.push_back(*a++);
      if (a == e_.end() || a->first != v || a->second < e)
         return std::nullopt;
      if (a->second > e)
         r.e_.emplace_back(v, a->second - e);
      ++a;
   }
   while (a != e_.end())
      r.e_.push_back(*a++);
   r.deg_ = deg_ - o.deg_;
   return r;
}

bool operator<(Monomial const& a, Monomial const& b)
{
   if (a.deg_ != b.deg_)
      return a.deg_ < b.deg_;
   return a.e_ < b.e_;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Scalar const& c) { add_term(Monomial(), c); }

Poly::Poly(Var v) { add_term(Monomial(v), Scalar(1)); }

Poly::Poly(Monomial const& m, Scalar const& c) { add_term(m, c); }

void Poly::add_term(Monomial const& m, Scalar const& c)
{
   if (c.is_zero())
      return;
   auto it = t_.find(m);
   if (it == t_.end())
      t_.emplace(m, c);
   else
   {
      it->second += c;
      if (it->second.is_zero())
         t_.erase(it);
   }
}

int Poly::degree() const { return t_.empty() ? -1 : t_.rbegin()->first.degree(); }

bool Poly::is_homogeneous(int* d) const
{
   if (t_.empty())
      return true;
   int lo = t_.begin()->first.degree();
   int hi = t_.rbegin()->first.degree();
   if (d)
      *d = hi;
   return lo == hi;
}

Scalar Poly::coefficient(Monomial const& m) const
{
   auto it = t_.find(m);
   return it == t_.end() ? Scalar() : it->second;
}

std::string Poly::str() const
{
   if (t_.empty())
      return "0";
   std::string s;
   for (auto const& [m, c] : t_)
   {
      if (!s.empty())
         s += " + ";
      s += "(" + c.str() + ")";
      if (!m.is_one())
         s += "*" + m.str();
   }
   return s;
}

Poly Poly::conj() const
{
   Poly r;
   for (auto const& [m, c] : t_)
   {
      Monomial mm;
      for (auto const& [v, e] : m.entries())
      {
         Var w = v;
         if (w.kind == Var::Z)
            w.kind = Var::ZBar;
         else if (w.kind == Var::ZBar)
            w.kind = Var::Z;
         mm = mm * Monomial(w, e);
      }
      r.add_term(mm, c.conj());
   }
   return r;
}

Poly Poly::diff(Var v) const { return diff(Monomial(v)); }

Poly Poly::diff(Monomial const& d) const
{
   Poly r;
   for (auto const& [m, c] : t_)
   {
      auto q = m.divide(d);
      if (!q)
         continue;
      // falling factorials  e (e-1) ... (e-k+1)
      mpz_class f = 1;
      for (auto const& [v, k] : d.entries())
      {
         int e = m.exponent(v);
         for (int j = 0; j < k; ++j)
            f *= (e - j);
      }
      r.add_term(*q, c * Scalar(GaussianRational(Rational(f))));
   }
   return r;
}

Poly Poly::pow(int k) const
{
   if (k < 0)
      throw std::invalid_argument("Poly::pow: negative exponent");
   Poly r(1);
   Poly b = *this;
   while (k > 0)
   {
      if (k & 1)
         r *= b;
      k >>= 1;
      if (k)
         b *= b;
   }
   return r;
}

Poly& Poly::operator+=(Poly const& o)
{
   for (auto const& [m, c] : o.t_)
      add_term(m, c);
   return *this;
}

Poly& Poly::operator-=(Poly const& o)
{
   for (auto const& [m, c] : o.t_)
      add_term(m, -c);
   return *this;
}

Poly& Poly::operator*=(Poly const& o)
{
   Poly r;
   for (auto const& [m1, c1] : t_)
      for (auto const& [m2, c2] : o.t_)
         r.add_term(m1 * m2, c1 * c2);
   *this = std::move(r);
   return *this;
}

Poly& Poly::operator*=(Scalar const& s)
{
   if (s.is_zero())
   {
      t_.clear();
      return *this;
   }
   for (auto& [m, c] : t_)
      c *= s;
   std::erase_if(t_, [](auto const& kv) { return kv.second.is_zero(); });
   return *this;
}

Poly operator+(Poly a, Poly const& b) { return a += b; }
Poly operator-(Poly a, Poly const& b) { return a -= b; }
Poly operator-(Poly const& a) { return Scalar(-1) * a; }
Poly operator*(Poly a, Poly const& b) { return a *= b; }
Poly operator*(Scalar const& s, Poly a) { return a *= s; }

namespace
{

Poly det_rec(PolyMatrix const& m, std::vector<int>& cols, std::size_t row)
{
   std::size_t n = m.size();
   if (row == n)
      return Poly(1);
   Poly r;
   int sign = 1;
   for (std::size_t j = 0; j < cols.size(); ++j)
   {
      int c = cols[j];
      if (!m[row][c].is_zero())
      {
         cols.erase(cols.begin() + j);
         Poly minor = det_rec(m, cols, row + 1);
         cols.insert(cols.begin() + j, c);
         Poly term = m[row][c] * minor;
         if (sign > 0)
            r += term;
         else
            r -= term;
      }
      sign = -sign;
   }
   return r;
}

} // namespace

Poly poly_det(PolyMatrix const& m)
{
   for (auto const& row : m)
      if (row.size() != m.size())
         throw std::invalid_argument("poly_det: matrix is not square");
   std::vector<int> cols(m.size());
   for (std::size_t j = 0; j < m.size(); ++j)
      cols[j] = static_cast<int>(j);
   return det_rec(m, cols, 0);
}

// ---------------------------------------------------------------- DiffOperator

DiffOperator DiffOperator::multiply(Poly const& p)
{
   DiffOperator d;
   d.add_term(Monomial(), p);
   return d;
}

DiffOperator DiffOperator::partial(Var v, Scalar const& c)
{
   DiffOperator d;
   d.add_term(Monomial(v), Poly(c));
   return d;
}

void DiffOperator::add_term(Monomial const& d, Poly const& c)
{
   if (c.is_zero())
      return;
   auto it = t_.find(d);
   if (it == t_.end())
      t_.emplace(d, c);
   else
   {
      it->second += c;
      if (it->second.is_zero())
         t_.erase(it);
   }
}

int DiffOperator::order() const { return t_.empty() ? -1 : t_.rbegin()->first.degree(); }

std::string DiffOperator::str() const
{
   if (t_.empty())
      return "0";
   std::string s;
   for (auto const& [d, c] : t_)
   {
      if (!s.empty())
         s += " + ";
      s += "[" + c.str() + "]";
      if (!d.is_one())
         s += "*D(" + d.str() + ")";
   }
   return s;
}

DiffOperator& DiffOperator::operator+=(DiffOperator const& o)
{
   for (auto const& [d, c] : o.t_)
      add_term(d, c);
   return *this;
}

DiffOperator& DiffOperator::operator-=(DiffOperator const& o)
{
   for (auto const& [d, c] : o.t_)
      add_term(d, -c);
   return *this;
}

DiffOperator& DiffOperator::operator*=(Scalar const& s)
{
   for (auto& [d, c] : t_)
      c *= s;
   std::erase_if(t_, [](auto const& kv) { return kv.second.is_zero(); });
   return *this;
}

DiffOperator operator+(DiffOperator a, DiffOperator const& b) { return a += b; }
DiffOperator operator-(DiffOperator a, DiffOperator const& b) { return a -= b; }
DiffOperator operator*(Scalar const& s, DiffOperator a) { return a *= s; }

Poly apply(DiffOperator const& op, Poly const& p)
{
   Poly r;
   for (auto const& [d, c] : op.terms())
   {
      Poly q = p.diff(d);
      if (!q.is_zero())
         r += c * q;
   }
   return r;
}

namespace
{

// All sub-monomials g <= d together with the product of binomials C(d, g).
void enumerate_submonomials(std::vector<Monomial::Entry> const& e, std::size_t i, Monomial cur, mpz_class coef,
                            std::vector<std::pair<Monomial, mpz_class>>& out)
{
   if (i == e.size())
   {
      out.emplace_back(cur, coef);
      return;
   }
   auto const& [v, k] = e[i];
   mpz_class b = 1;
   for (int j = 0; j <= k; ++j)
   {
      enumerate_submonomials(e, i + 1, j ? cur * Monomial(v, j) : cur, coef * b, out);
      b = b * (k - j) / (j + 1);
   }
}

} // namespace

DiffOperator compose(DiffOperator const& a, DiffOperator const& b)
{
   // (c D^al)(e D^be) = c sum_{g <= al} C(al, g) (D^g e) D^(al - g + be)
   DiffOperator r;
   for (auto const& [al, c] : a.terms())
   {
      std::vector<std::pair<Monomial, mpz_class>> subs;
      enumerate_submonomials(al.entries(), 0, Monomial(), 1, subs);
      for (auto const& [g, binom] : subs)
      {
         Monomial rest = *al.divide(g);
         for (auto const& [be, e] : b.terms())
         {
            Poly de = e.diff(g);
            if (de.is_zero())
               continue;
            Poly coef = Scalar(GaussianRational(Rational(binom))) * (c * de);
            DiffOperator t;
            t.add_term(rest * be, coef);
            r += t;
         }
      }
   }
   return r;
}

DiffOperator commutator(DiffOperator const& a, DiffOperator const& b) { return compose(a, b) - compose(b, a); }

// ---------------------------------------------------------------- Cochain

std::string ExtIndex::name() const
{
   return std::string(kind == XiPrime ? "xp_" : "xpp_") + std::to_string(a) + "_" + std::to_string(b);
}

Cochain Cochain::scalar(Poly const& p)
{
   Cochain c;
   c.add_term({}, p);
   return c;
}

Cochain Cochain::single(ExtIndex x, Poly const& p)
{
   Cochain c;
   c.add_term({x}, p);
   return c;
}

Cochain Cochain::from_wedge(std::vector<ExtIndex> xs, Poly const& p)
{
   int s = sort_with_sign(xs);
   Cochain c;
   if (s != 0)
      c.add_term(xs, s > 0 ? p : -p);
   return c;
}

void Cochain::add_term(ExtKey const& k, Poly const& p)
{
   if (p.is_zero())
      return;
   auto it = t_.find(k);
   if (it == t_.end())
      t_.emplace(k, p);
   else
   {
      it->second += p;
      if (it->second.is_zero())
         t_.erase(it);
   }
}

std::optional<std::pair<int, int>> Cochain::bidegree() const
{
   std::optional<std::pair<int, int>> bd;
   for (auto const& [k, p] : t_)
   {
      int a = 0;
      for (auto const& x : k)
         a += x.kind == ExtIndex::XiPrime;
      std::pair<int, int> cur{a, static_cast<int>(k.size()) - a};
      if (bd && *bd != cur)
         return std::nullopt;
      bd = cur;
   }
   if (!bd)
      return std::pair<int, int>{0, 0};
   return bd;
}

Poly Cochain::coefficient(ExtKey const& k) const
{
   auto it = t_.find(k);
   return it == t_.end() ? Poly() : it->second;
}

std::string Cochain::str() const
{
   if (t_.empty())
      return "0";
   std::string s;
   for (auto const& [k, p] : t_)
   {
      if (!s.empty())
         s += "\n + ";
      s += "{" + p.str() + "}";
      for (auto const& x : k)
         s += "^" + x.name();
   }
   return s;
}

Cochain& Cochain::operator+=(Cochain const& o)
{
   for (auto const& [k, p] : o.t_)
      add_term(k, p);
   return *this;
}

Cochain& Cochain::operator-=(Cochain const& o)
{
   for (auto const& [k, p] : o.t_)
      add_term(k, -p);
   return *this;
}

Cochain& Cochain::operator*=(Poly const& p)
{
   Cochain r;
   for (auto const& [k, q] : t_)
      r.add_term(k, q * p);
   *this = std::move(r);
   return *this;
}

Cochain operator+(Cochain a, Cochain const& b) { return a += b; }
Cochain operator-(Cochain a, Cochain const& b) { return a -= b; }

Cochain wedge(Cochain const& a, Cochain const& b)
{
   Cochain r;
   for (auto const& [ka, pa] : a.terms())
   {
      for (auto const& [kb, pb] : b.terms())
      {
         std::vector<ExtIndex> xs = ka;
         xs.insert(xs.end(), kb.begin(), kb.end());
         int s = sort_with_sign(xs);
         if (s == 0)
            continue;
         Poly c = pa * pb;
         r.add_term(xs, s > 0 ? c : -c);
      }
   }
   return r;
}

// ---------------------------------------------------------------- linear algebra

SolveResult solve_exact(GMatrix const& mat, std::vector<std::vector<GaussianRational>> const& rhs)
{
   std::size_t rows = mat.size();
   std::size_t cols = rows ? mat[0].size() : 0;
   std::size_t nr = rhs.size();
   for (auto const& r : mat)
      if (r.size() != cols)
         throw std::invalid_argument("solve_exact: ragged matrix");
   for (auto const& c : rhs)
      if (c.size() != rows)
         throw std::invalid_argument("solve_exact: right-hand side has wrong length");

   // augmented matrix [mat | rhs]
   GMatrix a(rows, std::vector<GaussianRational>(cols + nr));
   for (std::size_t i = 0; i < rows; ++i)
   {
      for (std::size_t j = 0; j < cols; ++j)
         a[i][j] = mat[i][j];
      for (std::size_t k = 0; k < nr; ++k)
         a[i][cols + k] = rhs[k][i];
   }

   SolveResult res;
   std::size_t prow = 0;
   for (std::size_t j = 0; j < cols && prow < rows; ++j)
   {
      std::size_t piv = prow;
      while (piv < rows && a[piv][j].is_zero())
         ++piv;
      if (piv == rows)
         continue;
      std::swap(a[piv], a[prow]);
      GaussianRational inv = GaussianRational(1) / a[prow][j];
      for (auto& x : a[prow])
         if (!x.is_zero())
            x *= inv;
      for (std::size_t i = 0; i < rows; ++i)
      {
         if (i == prow || a[i][j].is_zero())
            continue;
         GaussianRational f = a[i][j];
         for (std::size_t k = j; k < cols + nr; ++k)
            if (!a[prow][k].is_zero())
               a[i][k] -= f * a[prow][k];
      }
      res.pivot_columns.push_back(static_cast<int>(j));
      ++prow;
   }
   res.rank = static_cast<int>(prow);

   for (std::size_t k = 0; k < nr; ++k)
   {
      bool ok = true;
      for (std::size_t i = prow; i < rows; ++i)
         if (!a[i][cols + k].is_zero())
            ok = false;
      res.column_consistent.push_back(ok);
      if (!ok)
      {
         res.consistent = false;
         res.solutions.emplace_back();
         continue;
      }
      std::vector<GaussianRational> x(cols);
      for (std::size_t r = 0; r < prow; ++r)
         x[res.pivot_columns[r]] = a[r][cols + k];
      res.solutions.push_back(std::move(x));
   }

   std::vector<bool> is_pivot(cols, false);
   for (int c : res.pivot_columns)
      is_pivot[c] = true;
   for (std::size_t f = 0; f < cols; ++f)
   {
      if (is_pivot[f])
         continue;
      std::vector<GaussianRational> v(cols);
      v[f] = GaussianRational(1);
      for (std::size_t r = 0; r < prow; ++r)
         v[res.pivot_columns[r]] = -a[r][f];
      res.kernel.push_back(std::move(v));
   }
   return res;
}

int rank_exact(GMatrix const& mat) { return solve_exact(mat).rank; }

GMatrix mat_mul(GMatrix const& a, GMatrix const& b)
{
   std::size_t n = a.size();
   std::size_t k = b.size();
   std::size_t m = k ? b[0].size() : 0;
   GMatrix c(n, std::vector<GaussianRational>(m));
   for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < k; ++l)
         if (!a[i][l].is_zero())
            for (std::size_t j = 0; j < m; ++j)
               if (!b[l][j].is_zero())
                  c[i][j] += a[i][l] * b[l][j];
   return c;
}

std::vector<GaussianRational> mat_vec(GMatrix const& a, std::vector<GaussianRational> const& x)
{
   std::vector<GaussianRational> y(a.size());
   for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
         if (!a[i][j].is_zero() && !x[j].is_zero())
            y[i] += a[i][j] * x[j];
   return y;
}

} // namespace weil
