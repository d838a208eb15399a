// SPDX-License-Identifier: MIT
//
// weil/fock.hpp
//
// The infinitesimal Fock model for the dual pairs (U(p,q), U(m,m)),
// (Sp(2n,R), O(2r,2r)) and (O*(2n), Sp(r,r)).
//
// The Fock space is the polynomial ring in u+_{ia} (i <= rows, a <= m) and
// u-_{ik} (i <= rows, k <= m).  The complexified symplectic space W_C has the
// basis e+-(sector, i, c): the two I-eigenvectors built from v_i (x) w_c, where
// w_c runs over the positive (sector Plus) or negative (sector Minus) part of
// W.  Every basis vector is either a creation vector, acting by multiplication
// by a u variable, or an annihilation vector, acting by 2 i lambda d/du = -4 pi
// d/du with lambda = 2 pi i.  A Lie algebra element is stored as its linear
// action on W_C and is sent to the Weyl algebra by the quadratic embedding
//
//    j(T) = (1/(8 pi)) sum_v [ sym(T a_v . c_v) - sym(T c_v . a_v) ],
//
// where (c_v, a_v) are the creation / annihilation vectors of the variable v
// and sym(xy) = (xy + yx)/2.
//

#ifndef WEIL_FOCK_HPP
#define WEIL_FOCK_HPP

#include "weil/exactalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace weil
{

struct DualPairCase
{
   enum Tag { A, B, C };
   Tag tag = A;
   int p = 1, q = 1, r = 1, s = 0;   // case A
   int n = 1;                        // cases B and C (also r)

   static DualPairCase make_a(int p, int q, int r, int s);
   static DualPairCase make_b(int n, int r);
   static DualPairCase make_c(int n, int r);

   // Throws std::invalid_argument when the parameters are out of range.
   void validate() const;

   int rows() const { return tag == A ? p + q : 2 * n; }   // dim_C V
   int npos() const { return tag == A ? p : n; }           // rows 1..npos are the alpha rows
   int cols() const { return tag == A ? r + s : r; }       // m
   int codim() const;                                      // d'
   // Normal index set I, in canonical order.
   std::vector<std::pair<int, int>> index_set() const;
   std::string label() const;
   char tag_char() const { return "ABC"[tag]; }
   bool is_alpha(int row) const { return row <= npos(); }
};

enum class Sector : std::uint8_t { Plus = 0, Minus = 1 };

// Basis vector of W_C.
struct WVec
{
   Sector sec = Sector::Minus;
   int row = 1;
   int col = 1;
   bool plus_type = true;

   friend auto operator<=>(WVec const&, WVec const&) = default;
};

struct WeylRole
{
   Var var;
   bool creation = true;
};

WeylRole weyl_role(DualPairCase const& c, WVec const& w);
// rho(w): multiplication by u for creation vectors, -4 pi d/du otherwise.
DiffOperator weyl_action(DualPairCase const& c, WVec const& w);
std::vector<WVec> weyl_basis(DualPairCase const& c);
std::vector<Var> fock_variables(DualPairCase const& c, std::optional<Sector> only = std::nullopt);

// Sparse linear map on W_C.
class LinMap
{
public:
   using Column = std::map<WVec, GaussianRational>;

   void add(WVec const& from, WVec const& to, GaussianRational const& c);
   Column image(WVec const& w) const;
   std::map<WVec, Column> const& columns() const { return cols_; }
   bool is_zero() const { return cols_.empty(); }

   LinMap& operator+=(LinMap const& o);
   LinMap& operator*=(GaussianRational const& c);
   friend bool operator==(LinMap const& a, LinMap const& b) { return a.cols_ == b.cols_; }

private:
   std::map<WVec, Column> cols_;
};

LinMap operator+(LinMap a, LinMap const& b);
LinMap operator-(LinMap a, LinMap const& b);
LinMap compose(LinMap const& a, LinMap const& b);   // a after b

// Element of g + k' acting on W_C.  When the element comes from g it also
// carries its matrix on V (size rows x rows).
struct LieElt
{
   std::string label;
   LinMap action;
   std::optional<GMatrix> vmat;
   std::optional<DiffOperator> omega;   // cached j(action) for basis elements
};

LieElt bracket(LieElt const& a, LieElt const& b);
LieElt lin_comb(std::vector<std::pair<GaussianRational, LieElt const*>> const& terms, std::string label);

// Builders.  Matrices are 0-based; labels are free text.
LieElt lie_from_v_matrix(DualPairCase const& c, GMatrix const& z, std::string label);
// Complex-linear map on the sector's part of W (size m x m).
LieElt lie_from_w_linear(DualPairCase const& c, Sector sec, GMatrix const& z, std::string label);
// Case B: complexified orthogonal map of the sector's part of W_R (x) C in the
// basis (y+_1..y+_m, y-_1..y-_m), y+- = w -+ (i_W w) i.
LieElt lie_from_w_orthogonal(DualPairCase const& c, Sector sec, GMatrix const& l, std::string label);
// Case C: complexified quaternionic map in the complex basis (w_1..w_m,
// j w_1..j w_m) of the sector's part of W.
LieElt lie_from_w_quaternionic(DualPairCase const& c, Sector sec, GMatrix const& mtx, std::string label);

// True iff T preserves the symplectic pairing <<a_v, c_v>> = 2i infinitesimally.
bool is_symplectic(DualPairCase const& c, LieElt const& t);

// omega(T) = j(T) as a differential operator on the Fock space.  With a
// sector given, only the part of T acting on that sector is quantized: this is
// the action on P- (Minus) or P+ (Plus) alone, constants included.
DiffOperator lie_action(DualPairCase const& c, LieElt const& t, std::optional<Sector> only = std::nullopt);

struct LieBasis
{
   std::vector<LieElt> k;            // complexified k
   std::vector<LieElt> k_torus;      // t
   std::vector<LieElt> k_raising;    // positive root vectors for the Borel b
   std::vector<LieElt> k_lowering;   // negative root vectors
   std::vector<std::pair<int, int>> p_index;   // labels of X / Y
   std::vector<LieElt> p_plus;       // X
   std::vector<LieElt> p_minus;      // Y
   // k' split by sector: Minus acts on u-, Plus acts on u+.
   std::vector<LieElt> kp_minus, kp_minus_torus, kp_minus_n;
   std::vector<LieElt> kp_plus, kp_plus_torus, kp_plus_n;
};

LieBasis const& lie_basis(DualPairCase const& c);

using Weight = std::vector<Rational>;

struct WeightResult
{
   bool ok = false;
   Weight weight;
   std::string failing_generator;
};

enum class Torus { K, KPrimeMinus, KPrimePlus };

// Simultaneous eigenvalues of p under the torus generators, using the action
// restricted to one sector when given.  A scalar shift (the Lie algebra shadow
// of a det character) is added to every entry.
WeightResult weight_of(DualPairCase const& c, Poly const& p, Torus torus, Rational const& shift = 0,
                       std::optional<Sector> sector = std::nullopt);

enum class Subalgebra { N, KPrimeN, PMinus, PPlus };

struct AnnihilationResult
{
   bool ok = true;
   std::string failing_generator;
   Poly image;
};

// With a sector given the generators act through that sector only; this is
// how P- (resp. P+) is annihilated by p- (resp. p+) inside its own Fock space.
AnnihilationResult annihilated_by(DualPairCase const& c, Poly const& p, Subalgebra alg,
                                  std::optional<Sector> sector = std::nullopt);

// All monomials of total degree <= d in the given variables.
std::vector<Monomial> monomials_up_to(std::vector<Var> const& vars, int d);

} // namespace weil

#endif
