#pragma once

#include <cstdint>
#include <string>

#include "hasse/multipoly.hpp"

namespace hasse {

/// Which algebraic integer theta_m the norm form is built from.
enum class ThetaVariant {
  real_theta,      ///< theta_m = 2 - 2 cos(2 pi m / N), degree (N-1)/2
  one_minus_zeta,  ///< theta_m = 1 - exp(2 pi i m / N), degree N-1
};

std::string to_string(ThetaVariant v);
ThetaVariant theta_variant_from_string(const std::string& s);

/// Default ceiling on N for family builders; the cyclotomic routines
/// themselves accept any odd prime.
inline constexpr std::uint64_t kDefaultMaxN = 43;

struct CyclotomicBasis {
  std::uint64_t N = 0;
  ThetaVariant variant = ThetaVariant::real_theta;
  unsigned degree = 0;
  MultiPoly minpoly;  ///< monic, integer coefficients, in the variable "z"

  bool operator==(const CyclotomicBasis&) const = default;
};

/// Exact minimal polynomial of theta_1.  real_theta goes through the
/// z + 1/z fold of the cyclotomic polynomial followed by z -> 2 - z;
/// one_minus_zeta is Phi_N(1 - z).  Throws std::invalid_argument unless N
/// is an odd prime.
CyclotomicBasis minimal_polynomial(std::uint64_t N, ThetaVariant variant);

/// prod_m (x + sum_{i=1..gamma} theta_m^i y_i), expanded exactly as
/// Res_z(Psi(z), x + sum y_i z^i).  Variables: x, y1, ..., y<gamma>.
MultiPoly norm_form(const CyclotomicBasis& basis, unsigned gamma);

/// Variable list {"x", "y1", ..., "y<gamma>"}.
Variables norm_form_variables(unsigned gamma);

/// True iff every non-leading coefficient is divisible by p and the
/// constant term is not divisible by p^2.  Throws std::invalid_argument if
/// psi is not a monic univariate polynomial.
bool eisenstein_at(const MultiPoly& psi, const BigInt& p);

}  // namespace hasse
