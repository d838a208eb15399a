// SPDX-License-Identifier: MIT
//
// weil/io.hpp
//
// JSON forms of the exact objects.  A coefficient part is
// [re_num, re_den, im_num, im_den, pi_pow] with a "sqrt2" flag (0 or 1);
// integers that do not fit in 64 bits are written as decimal strings.
// Terms are listed in the canonical graded-lexicographic order and object
// keys are sorted, so equal values serialize to identical text.
//

#ifndef WEIL_IO_HPP
#define WEIL_IO_HPP

#include "weil/fock.hpp"
#include "weil/laplace.hpp"
#include "weil/schrodinger.hpp"

#include <json.hpp>

namespace weil
{

using json = nlohmann::json;

json to_json(Scalar const& s);
Scalar scalar_from_json(json const& j);

// [{"monomial": {"up_1_1": 2, ...}, "coeff": [...]}, ...]
json to_json(Poly const& p);
Poly poly_from_json(json const& j);

// [{"xi": ["xp_1_3", "xpp_1_3"], "poly": ...}, ...]
json to_json(Cochain const& c);
Cochain cochain_from_json(json const& j);

// {"gaussian": true, "poly": ...} with variables z_k_a / zb_k_a.
json to_json(GaussPoly const& g);
GaussPoly gauss_poly_from_json(json const& j);

std::optional<ExtIndex> parse_ext_index(std::string const& s);

// Half-integer weight entries as [2 w, 2]; throws std::invalid_argument if an
// entry is not a half-integer.
json weight_to_json(Weight const& w);

json to_json(LeadingTerm const& t);
json to_json(GaussianRational const& q);
json to_json(Rational const& q);

} // namespace weil

#endif
