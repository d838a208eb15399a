// SPDX-License-Identifier: MIT
//
// weil/exactalg.hpp
//
// Exact scalars, sparse multivariate polynomials, differential operators,
// exterior-algebra cochains and exact linear solving over Q(i).
//

#ifndef WEIL_EXACTALG_HPP
#define WEIL_EXACTALG_HPP

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weil
{

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// a + b i with a, b rational.
struct GaussianRational
{
   Rational re;
   Rational im;

   GaussianRational() : re(0), im(0) {}
   GaussianRational(long a) : re(a), im(0) {}
   GaussianRational(Rational a) : re(std::move(a)), im(0) {}
   GaussianRational(Rational a, Rational b) : re(std::move(a)), im(std::move(b)) {}

   static GaussianRational i() { return {Rational(0), Rational(1)}; }

   bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
   GaussianRational conj() const { return {re, -im}; }
   Rational norm2() const { return re * re + im * im; }
   std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
   std::string str() const;

   GaussianRational& operator+=(GaussianRational const& o);
   GaussianRational& operator-=(GaussianRational const& o);
   GaussianRational& operator*=(GaussianRational const& o);
   GaussianRational& operator/=(GaussianRational const& o);
};

GaussianRational operator+(GaussianRational a, GaussianRational const& b);
GaussianRational operator-(GaussianRational a, GaussianRational const& b);
GaussianRational operator-(GaussianRational const& a);
GaussianRational operator*(GaussianRational a, GaussianRational const& b);
GaussianRational operator/(GaussianRational a, GaussianRational const& b);
bool operator==(GaussianRational const& a, GaussianRational const& b);
inline bool operator!=(GaussianRational const& a, GaussianRational const& b) { return !(a == b); }

// Exact element of Q(i)[pi, 1/pi, sqrt 2].  Each component is keyed by
// (power of pi, power of sqrt 2 in {0, 1}); even powers of sqrt 2 are folded
// into the rational part.  pi is treated as transcendental, so equality is
// componentwise.
class Scalar
{
public:
   using Key = std::pair<int, int>;

   Scalar() = default;
   Scalar(long a) : Scalar(GaussianRational(a)) {}
   Scalar(GaussianRational const& q, int pi_pow = 0, int sqrt2_pow = 0);

   static Scalar pi(int k = 1) { return Scalar(GaussianRational(1), k, 0); }
   static Scalar sqrt2(int k = 1) { return Scalar(GaussianRational(1), 0, k); }
   static Scalar i() { return Scalar(GaussianRational::i()); }

   bool is_zero() const { return parts_.empty(); }
   std::map<Key, GaussianRational> const& parts() const { return parts_; }

   // True if the scalar is a single component; fills the decomposition.
   bool is_monomial(GaussianRational* q = nullptr, int* pi_pow = nullptr, int* sqrt2_pow = nullptr) const;
   // The rational Gaussian value if the scalar has no pi or sqrt 2 content.
   std::optional<GaussianRational> as_gaussian() const;

   Scalar conj() const;
   std::complex<double> to_complex() const;
   std::string str() const;

   Scalar& operator+=(Scalar const& o);
   Scalar& operator-=(Scalar const& o);
   Scalar& operator*=(Scalar const& o);

   friend bool operator==(Scalar const& a, Scalar const& b) { return a.parts_ == b.parts_; }
   friend bool operator!=(Scalar const& a, Scalar const& b) { return !(a == b); }

private:
   void add_part(Key k, GaussianRational const& q);
   std::map<Key, GaussianRational> parts_;
};

Scalar operator+(Scalar a, Scalar const& b);
Scalar operator-(Scalar a, Scalar const& b);
Scalar operator-(Scalar const& a);
Scalar operator*(Scalar a, Scalar const& b);

// Polynomial variables.  UPlus(i,a) is u+_{i a}; UMinus(i,k) is u-_{i k} with
// the column index already shifted to 1..m; Z / ZBar are the Schrodinger
// coordinates z_{k a}, conj(z_{k a}).  Rows and columns are 1-based.
struct Var
{
   enum Kind : std::uint8_t { UPlus = 0, UMinus = 1, Z = 2, ZBar = 3 };
   Kind kind = UPlus;
   int row = 1;
   int col = 1;

   static Var up(int i, int a) { return {UPlus, i, a}; }
   static Var um(int i, int k) { return {UMinus, i, k}; }
   static Var z(int k, int a) { return {Z, k, a}; }
   static Var zb(int k, int a) { return {ZBar, k, a}; }

   std::string name() const;
   static std::optional<Var> parse(std::string const& s);

   friend auto operator<=>(Var const&, Var const&) = default;
};

// Monomial: sorted (variable, positive exponent) list.  Ordered graded
// lexicographically (total degree first, then the variable list).
class Monomial
{
public:
   using Entry = std::pair<Var, int>;

   Monomial() = default;
   explicit Monomial(Var v, int e = 1);

   std::vector<Entry> const& entries() const { return e_; }
   int degree() const { return deg_; }
   int exponent(Var v) const;
   bool is_one() const { return e_.empty(); }
   std::string str() const;

   Monomial operator*(Monomial const& o) const;
   // Divisibility and quotient (this / o); nullopt if o does not divide.
   std::optional<Monomial> divide(Monomial const& o) const;

   friend bool operator==(Monomial const& a, Monomial const& b) { return a.e_ == b.e_; }
   friend bool operator<(Monomial const& a, Monomial const& b);

private:
   std::vector<Entry> e_;
   int deg_ = 0;
};

class Poly
{
public:
   Poly() = default;
   Poly(Scalar const& c);
   Poly(long c) : Poly(Scalar(c)) {}
   explicit Poly(Var v);
   Poly(Monomial const& m, Scalar const& c);

   std::map<Monomial, Scalar> const& terms() const { return t_; }
   bool is_zero() const { return t_.empty(); }
   int degree() const;      // -1 for zero
   bool is_homogeneous(int* d = nullptr) const;
   Scalar coefficient(Monomial const& m) const;
   std::string str() const;

   Poly conj() const;   // conjugates coefficients and swaps z <-> zbar
   Poly diff(Var v) const;
   Poly diff(Monomial const& m) const;   // higher partial derivative
   Poly pow(int k) const;

   Poly& operator+=(Poly const& o);
   Poly& operator-=(Poly const& o);
   Poly& operator*=(Poly const& o);
   Poly& operator*=(Scalar const& s);

   friend bool operator==(Poly const& a, Poly const& b) { return a.t_ == b.t_; }
   friend bool operator!=(Poly const& a, Poly const& b) { return !(a == b); }

private:
   void add_term(Monomial const& m, Scalar const& c);
   std::map<Monomial, Scalar> t_;
};

Poly operator+(Poly a, Poly const& b);
Poly operator-(Poly a, Poly const& b);
Poly operator-(Poly const& a);
Poly operator*(Poly a, Poly const& b);
Poly operator*(Scalar const& s, Poly a);

using PolyMatrix = std::vector<std::vector<Poly>>;

// Exact determinant by cofactor expansion.  Throws std::invalid_argument on a
// non-square input.
Poly poly_det(PolyMatrix const& m);

// Sum of (coefficient polynomial) * (partial derivative monomial), stored in
// normal order: coefficients to the left of derivatives.
class DiffOperator
{
public:
   DiffOperator() = default;
   static DiffOperator multiply(Poly const& p);
   static DiffOperator partial(Var v, Scalar const& c = Scalar(1));
   static DiffOperator identity() { return multiply(Poly(1)); }

   std::map<Monomial, Poly> const& terms() const { return t_; }
   bool is_zero() const { return t_.empty(); }
   int order() const;
   std::string str() const;

   DiffOperator& operator+=(DiffOperator const& o);
   DiffOperator& operator-=(DiffOperator const& o);
   DiffOperator& operator*=(Scalar const& s);

   friend bool operator==(DiffOperator const& a, DiffOperator const& b) { return a.t_ == b.t_; }

   // Adds c * d/du^d.
   void add_term(Monomial const& d, Poly const& c);

private:
   std::map<Monomial, Poly> t_;
};

DiffOperator operator+(DiffOperator a, DiffOperator const& b);
DiffOperator operator-(DiffOperator a, DiffOperator const& b);
DiffOperator operator*(Scalar const& s, DiffOperator a);

Poly apply(DiffOperator const& op, Poly const& p);
// Operator product a.b (apply b first).
DiffOperator compose(DiffOperator const& a, DiffOperator const& b);
DiffOperator commutator(DiffOperator const& a, DiffOperator const& b);

// Cotangent index xi'_{ab} (holomorphic) or xi''_{ab} (antiholomorphic).
struct ExtIndex
{
   enum Kind : std::uint8_t { XiPrime = 0, XiDoublePrime = 1 };
   Kind kind = XiPrime;
   int a = 1;
   int b = 1;

   std::string name() const;
   friend auto operator<=>(ExtIndex const&, ExtIndex const&) = default;
};

using ExtKey = std::vector<ExtIndex>;   // strictly increasing

// Element of the exterior algebra over the xi', xi'' with Poly coefficients.
class Cochain
{
public:
   Cochain() = default;
   static Cochain scalar(Poly const& p);
   static Cochain single(ExtIndex x, Poly const& p = Poly(1));
   // Coefficient times x_1 ^ ... ^ x_k for an arbitrary ordering; the key is
   // normalized with the permutation sign.
   static Cochain from_wedge(std::vector<ExtIndex> xs, Poly const& p);

   std::map<ExtKey, Poly> const& terms() const { return t_; }
   bool is_zero() const { return t_.empty(); }
   // (number of xi', number of xi''); nullopt if not of pure bidegree.
   std::optional<std::pair<int, int>> bidegree() const;
   Poly coefficient(ExtKey const& k) const;
   std::string str() const;

   Cochain& operator+=(Cochain const& o);
   Cochain& operator-=(Cochain const& o);
   Cochain& operator*=(Poly const& p);

   // Apply a map to every Poly coefficient.
   template <typename F>
   Cochain map_coefficients(F&& f) const
   {
      Cochain r;
      for (auto const& [k, p] : t_)
         r.add_term(k, f(p));
      return r;
   }

   friend bool operator==(Cochain const& a, Cochain const& b) { return a.t_ == b.t_; }

   void add_term(ExtKey const& k, Poly const& p);

private:
   std::map<ExtKey, Poly> t_;
};

Cochain operator+(Cochain a, Cochain const& b);
Cochain operator-(Cochain a, Cochain const& b);
Cochain wedge(Cochain const& a, Cochain const& b);

// Sort a list of indices by adjacent transpositions; returns the sign of the
// permutation, or 0 if an index repeats.
template <typename T>
int sort_with_sign(std::vector<T>& v)
{
   int sign = 1;
   for (std::size_t i = 1; i < v.size(); ++i)
   {
      for (std::size_t j = i; j > 0 && v[j] < v[j - 1]; --j)
      {
         std::swap(v[j], v[j - 1]);
         sign = -sign;
      }
   }
   for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i - 1] < v[i]))
         return 0;
   return sign;
}

using GMatrix = std::vector<std::vector<GaussianRational>>;

struct SolveResult
{
   int rank = 0;
   bool consistent = true;
   std::vector<int> pivot_columns;
   // One particular solution per right-hand-side column (empty if that
   // column is inconsistent).
   std::vector<std::vector<GaussianRational>> solutions;
   std::vector<bool> column_consistent;
   std::vector<std::vector<GaussianRational>> kernel;
};

// Exact Gauss-Jordan elimination of mat * x = rhs over Q(i).  rhs is given as
// a list of columns, each of length rows(mat).
SolveResult solve_exact(GMatrix const& mat, std::vector<std::vector<GaussianRational>> const& rhs = {});
int rank_exact(GMatrix const& mat);
GMatrix mat_mul(GMatrix const& a, GMatrix const& b);
std::vector<GaussianRational> mat_vec(GMatrix const& a, std::vector<GaussianRational> const& x);

} // namespace weil

#endif
