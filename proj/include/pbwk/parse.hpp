#pragma once

// Text forms accepted on the command line and in files.
//
//   series:  "1 - 1/2*t + 1/12*t^2", "phi(2)", "phi0", "theta(1/4) + t"
//   S(g):    "x*y + 1/2*z"
//   U(g):    "j(x)*j(y) - 1/2*j(z)"
//
// All three share one grammar: sums of products of atoms, unary minus,
// parentheses, integer powers "^k" and division by integer literals.
// Basis labels are matched longest first, so labels such as "[x,[x,y]]"
// can be typed as they print.

#include <string_view>

#include "pbwk/coeff.hpp"
#include "pbwk/envelope.hpp"
#include "pbwk/series.hpp"
#include "pbwk/superlie.hpp"
#include "pbwk/symcoalg.hpp"

namespace pbwk {

/// Series expression truncated at `cap`. Atoms: numbers, t, phi0, phi(c),
/// theta(c), where c is any expression with zero t-part.
TruncSeries parse_series(std::string_view text, const RingSpec& ring, int cap);

/// Element of S(g). Atoms: numbers and basis labels.
SymElement parse_sym(const AlgebraPtr& algebra, std::string_view text);

/// Element of U(g), returned in normal form. Atoms: numbers and j(label).
EnvElement parse_env(const AlgebraPtr& algebra, std::string_view text);

/// Element of g. Atoms: numbers (only as coefficients) and basis labels.
LieElement parse_lie(const AlgebraPtr& algebra, std::string_view text);

}  // namespace pbwk
