// SPDX-License-Identifier: MIT
//
// weil/cocycle.hpp
//
// The special cocycles phi+, phi- and phi = phi+ ^ phi- in the relative Lie
// algebra complex of (g, K) with coefficients in the Fock space.
//
// Exterior powers of p+ (resp. p-) are stored as ExtVec: maps from sorted
// index lists to Q(i) coefficients, where an ExtIndex of kind XiPrime with
// label (a, b) stands for X_{ab} and kind XiDoublePrime for Y_{ab}.  Cochains
// use the same labels for the dual basis xi'_{ab}, xi''_{ab}.
//

#ifndef WEIL_COCYCLE_HPP
#define WEIL_COCYCLE_HPP

#include "weil/fock.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weil
{

using ExtVec = std::map<ExtKey, GaussianRational>;

ExtVec ext_add(ExtVec a, ExtVec const& b, GaussianRational const& c = GaussianRational(1));
std::string ext_str(ExtVec const& v);

// Which half of the construction: Plus builds phi+ (p+ side, values in P-,
// highest weight data); Minus builds phi- (p- side, values in P+, lowest
// weight data).
enum class Side { Plus, Minus };

// Coordinates of ad(k) on p+ and p- for every element of the k basis, and the
// trace of each k element on V.  Computed once per case.
struct AdData
{
   // ad_plus[i][c][b]: coefficient of X_c in [k_i, X_b]
   std::vector<GMatrix> ad_plus;
   std::vector<GMatrix> ad_minus;
   std::vector<GaussianRational> trace;
};

AdData const& ad_data(DualPairCase const& c);

// Coordinates of a g element (given by its V matrix) in a list of basis
// elements; nullopt if it is not in their span.
std::optional<std::vector<GaussianRational>> coordinates(GMatrix const& z, std::vector<LieElt> const& basis);

// ad(k) applied to an element of the exterior algebra of p+ or p-.
ExtVec ad_ext(DualPairCase const& c, std::size_t k_index, ExtVec const& v, Side side);
ExtVec ad_ext(DualPairCase const& c, GMatrix const& ad, ExtVec const& v, Side side);

// Torus weight of an element of the exterior algebra of p+ or p- under the
// torus of k; nullopt if it is not a weight vector.
std::optional<Weight> ext_weight(DualPairCase const& c, ExtVec const& v, Side side);

// Hermitian product on the exterior algebra induced by tr(X Y^*) on p+-.
GaussianRational ext_inner(DualPairCase const& c, ExtVec const& a, ExtVec const& b, Side side);

// Sector that carries the values of the cochain on a given side.
inline Sector value_sector(Side s) { return s == Side::Plus ? Sector::Minus : Sector::Plus; }

// The case-A det character shift on the values: -1/2 (r - s) tr(k) on P-,
// +1/2 (r - s) tr(k) on P+, zero in cases B and C.
Rational det_shift(DualPairCase const& c, Side side);

struct HighestWeightPair
{
   DualPairCase c;
   Side side = Side::Plus;
   ExtVec top_ext;   // e_{D_U} (or the wedge of the Y over I)
   Poly top_poly;    // f_{D_U} (or its P+ counterpart)
};

// f_{D_U} (side Plus, u- variables) or its mirror in u+ (side Minus).
Poly special_harmonic(DualPairCase const& c, Side side = Side::Plus);
// Wedge of X_{ab} (Plus) or Y_{ab} (Minus) over the index set I.
ExtVec top_wedge(DualPairCase const& c, Side side = Side::Plus);
HighestWeightPair seed_pair(DualPairCase const& c, Side side = Side::Plus);

struct PairedModule
{
   std::vector<ExtVec> eps;
   std::vector<Poly> psi;
   int eps_rank = 0;
   int psi_rank = 0;
};

// Closure of the seed under the lowering (Plus) or raising (Minus) operators
// of k, applied to both slots simultaneously.  A traversal seed of 0 uses the
// canonical order; other values shuffle the operator order.  Throws
// std::runtime_error if the two slots stop being compatible.
PairedModule generate_paired_module(HighestWeightPair const& seed, std::uint64_t traversal_seed = 0);

enum class PhiKind { Plus, Minus, Full };

Cochain build_phi(DualPairCase const& c, PhiKind which, std::uint64_t traversal_seed = 0);

// d c = sum_b xi'_b ^ omega(X_b) c + sum_b xi''_b ^ omega(Y_b) c, with omega
// the action on the given sector's Fock space (or on all of P).
Cochain rel_differential(DualPairCase const& c, Cochain const& x, std::optional<Sector> sector = std::nullopt);

// (ad* (x) omega)(k) c for a k basis element, including a scalar shift times
// tr(k) on the values.
Cochain k_action(DualPairCase const& c, std::size_t k_index, Cochain const& x, std::optional<Sector> sector,
                 Rational const& shift);

struct CheckReport
{
   bool ok = true;
   std::string witness;   // violating generator and residual
};

// k-invariance (with the case-A det shift for phi+ / phi-) and, when a
// side is given, annihilation of all values by p- (Plus) or p+ (Minus).
CheckReport check_invariance(DualPairCase const& c, Cochain const& x, std::optional<Side> side);

// Drop every term containing an index outside I.
Cochain restrict_to_fiber(DualPairCase const& c, Cochain const& x);

// Brackets of p basis elements lie in k.
bool brackets_of_p_lie_in_k(DualPairCase const& c);

// Basis of the k-invariant cochains of the given bidegree whose coefficients
// are polynomials of degree <= max_deg in the sector's variables (all
// variables when no sector is given).
std::vector<Cochain> invariant_cochains(DualPairCase const& c, int n_prime, int n_second, int max_deg,
                                        std::optional<Sector> sector = std::nullopt);

} // namespace weil

#endif
