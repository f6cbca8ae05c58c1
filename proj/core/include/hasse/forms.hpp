#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hasse/bigint.hpp"
#include "hasse/cyclotomic.hpp"
#include "hasse/multipoly.hpp"

namespace hasse {

/// Which parameter family a FormParams describes.
///  T1  t*A*B - norm form, N = 4n+3, brackets carry alpha_i*N and N^beta, 2 <= gamma <= 2n
///  G1  same shape with free middle coefficients, beta >= 0, gamma = 2n
///  G2  t^2*A*B - norm form with brackets of degree n-1, N = 4n+1, gamma = 2n-1
///  G3  as G2 with theta_m = 1 - zeta^m, N = 2n+1
///  L   t*A*B - norm form with A, B ending in alpha_n*N, beta_n*N; gamma = 2
enum class Variant { T1, G1, G2, G3, L };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);
ThetaVariant theta_variant_of(Variant v);

/// n determined by N for the variant (N = 4n+3, 4n+1 or 2n+1); throws if
/// N does not have the variant's shape.
unsigned n_for(Variant v, std::uint64_t N);

struct FormParams {
  Variant variant = Variant::T1;
  unsigned n = 1;
  std::uint64_t N = 7;
  BigInt alpha0;
  /// alpha0 * (alpha0 + 1) with the prime factors known from construction.
  FactoredInteger alpha0_product;
  /// T1: alpha_1..alpha_{n-1}; G1: tilde-alpha_1..n-1; G2/G3: tilde-alpha_1..n-2; L: alpha_1..alpha_n.
  std::vector<BigInt> alphas;
  /// L only: beta_1..beta_n.
  std::vector<BigInt> betas;
  /// Exponent of N on x^n (T1, G1-G3).
  unsigned beta = 1;
  unsigned gamma = 2;

  bool operator==(const FormParams&) const = default;
};

/// Fills alpha0_product by trial division with the primes condition (1)
/// names (all primes below 4n^2(2n-1)^2) plus N.
FormParams make_params(Variant v, std::uint64_t N, BigInt alpha0, std::vector<BigInt> alphas,
                       unsigned beta, unsigned gamma, std::vector<BigInt> betas = {});

/// 4 n^2 (2n - 1)^2.
std::uint64_t prime_bound(unsigned n);

struct ConditionEntry {
  std::string id;
  bool pass = false;
  nlohmann::json witness;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  /// +1 or -1 for the residue of alpha0(alpha0+1) mod N, 0 if neither.
  int sign = 0;

  bool passed() const;
  const ConditionEntry* find(const std::string& id) const;
};

/// Evaluates every hypothesis of the variant's theorem; failures are
/// report entries, never exceptions.
ConditionReport check_conditions(const FormParams& params);

struct BuiltForm {
  MultiPoly form;       ///< over t, x, y1..y<gamma>
  MultiPoly prefactor;  ///< t or t^2
  MultiPoly A;
  MultiPoly B;
};

/// Variables {"t", "x", "y1", ..., "y<gamma>"}.
Variables form_variables(unsigned gamma);

/// Builds prefactor*A*B - norm form.  Throws std::invalid_argument when the
/// basis does not match (N, theta variant) or the params are structurally
/// malformed (wrong alpha count, gamma < 1, N above max_N).
BuiltForm build_form(const FormParams& params, const CyclotomicBasis& basis,
                     std::uint64_t max_N = kDefaultMaxN);

/// The two bracket factors (A, B) over {t, x}.
std::pair<MultiPoly, MultiPoly> brackets(const FormParams& params);

/// B - A.  For T1/G1 this is t^n, for G2/G3 t^(n-1); for L it also carries
/// the (beta_i - alpha_i) N terms.
MultiPoly bracket_identity(const FormParams& params);

/// The same T1 instance in the L parameterization: alpha_n = beta_n = N^(beta-1),
/// beta_i = alpha_i for i < n, gamma = 2.
FormParams local_view(const FormParams& params);

/// The `count` admissible parameter sets with smallest alpha0 found by CRT
/// assembly (see README for the exact search order).  Throws
/// std::invalid_argument when N has the wrong shape, N exceeds max_N, or
/// no residue class satisfies the N-condition.
std::vector<FormParams> search_params(std::uint64_t N, Variant variant, std::size_t count,
                                      unsigned beta, unsigned gamma,
                                      std::uint64_t max_N = kDefaultMaxN);

nlohmann::json to_json(const FormParams& p);
FormParams params_from_json(const nlohmann::json& j);

}  // namespace hasse
