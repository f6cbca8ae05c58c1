#pragma once

#include <string_view>

#include "hasse/multipoly.hpp"

namespace hasse {

/// Res_var(f, g) = prod g(r) over the roots r of f, for f monic in `var`.
///
/// Computed as the determinant of multiplication-by-g on R[var]/(f) via
/// traces of powers of g and Newton's identities; every division is an
/// exact division by a small integer.  The result lives over the union of
/// both variable lists minus `var` (f's variables first).
///
/// Throws std::invalid_argument if `var` occurs in neither variable list
/// or f is not monic in `var`.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::string_view var);

/// Same value as resultant(), via fraction-free (Bareiss) elimination on
/// the Sylvester matrix.  Independent route, used to cross-check.
MultiPoly resultant_sylvester(const MultiPoly& f, const MultiPoly& g, std::string_view var);

}  // namespace hasse
