#include "hasse/cyclotomic.hpp"

#include <stdexcept>

#include "hasse/resultant.hpp"

namespace hasse {

std::string to_string(ThetaVariant v) {
  return v == ThetaVariant::real_theta ? "real_theta" : "one_minus_zeta";
}

ThetaVariant theta_variant_from_string(const std::string& s) {
  if (s == "real_theta" || s == "real") return ThetaVariant::real_theta;
  if (s == "one_minus_zeta" || s == "omz") return ThetaVariant::one_minus_zeta;
  throw std::invalid_argument("unknown theta variant: " + s);
}

CyclotomicBasis minimal_polynomial(std::uint64_t N, ThetaVariant variant) {
  if (N < 3 || N % 2 == 0 || !is_prime(N)) {
    throw std::invalid_argument("minimal_polynomial: N = " + std::to_string(N) + " is not an odd prime");
  }
  const Variables zv{"z"};
  const MultiPoly z = MultiPoly::variable(zv, "z");
  const MultiPoly one = MultiPoly::constant(zv, 1);
  const MultiPoly two = MultiPoly::constant(zv, 2);

  CyclotomicBasis basis;
  basis.N = N;
  basis.variant = variant;
  if (variant == ThetaVariant::one_minus_zeta) {
    // Phi_N(1 - z) = sum_{k<N} (1 - z)^k; leading coefficient (-1)^(N-1) = 1.
    const MultiPoly w = one - z;
    MultiPoly acc(zv);
    MultiPoly pw = one;
    for (std::uint64_t k = 0; k < N; ++k) {
      acc += pw;
      pw *= w;
    }
    basis.degree = static_cast<unsigned>(N - 1);
    basis.minpoly = std::move(acc);
  } else {
    // zeta^{-h} Phi_N(zeta) = 1 + sum_{k=1..h} C_k(w), w = zeta + 1/zeta,
    // with C_0 = 2, C_1 = w, C_{k+1} = w C_k - C_{k-1}.
    const std::uint64_t h = (N - 1) / 2;
    MultiPoly folded = one;
    MultiPoly prev = two;
    MultiPoly cur = z;
    for (std::uint64_t k = 1; k <= h; ++k) {
      folded += cur;
      MultiPoly next = z * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    // theta = 2 - w, so Psi(z) = (-1)^h * folded(2 - z).
    MultiPoly psi = folded.substitute(0, two - z);
    if (h % 2 == 1) psi = -psi;
    basis.degree = static_cast<unsigned>(h);
    basis.minpoly = std::move(psi);
  }
  return basis;
}

Variables norm_form_variables(unsigned gamma) {
  Variables v{"x"};
  for (unsigned i = 1; i <= gamma; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

MultiPoly norm_form(const CyclotomicBasis& basis, unsigned gamma) {
  if (gamma < 1) throw std::invalid_argument("norm_form: gamma must be >= 1");
  Variables vars = norm_form_variables(gamma);
  vars.push_back("z");
  MultiPoly linear = MultiPoly::variable(vars, "x");
  for (unsigned i = 1; i <= gamma; ++i) {
    Exponents e(vars.size(), 0);
    e[i] = 1;
    e.back() = i;
    linear += MultiPoly::monomial(vars, std::move(e), 1);
  }
  return resultant(basis.minpoly, linear, "z").with_variables(norm_form_variables(gamma));
}

bool eisenstein_at(const MultiPoly& psi, const BigInt& p) {
  if (psi.arity() != 1) throw std::invalid_argument("eisenstein_at: expected a univariate polynomial");
  const auto coeffs = psi.coefficients_in(0);
  const auto& lead = coeffs.back();
  if (lead.is_zero() || lead.terms().front().coeff != 1) {
    throw std::invalid_argument("eisenstein_at: polynomial is not monic");
  }
  auto coeff = [](const MultiPoly& c) { return c.is_zero() ? BigInt(0) : c.terms().front().coeff; };
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
    if (!mpz_divisible_p(coeff(coeffs[i]).get_mpz_t(), p.get_mpz_t())) return false;
  }
  const BigInt p2 = p * p;
  return coeffs.size() > 1 && !mpz_divisible_p(coeff(coeffs[0]).get_mpz_t(), p2.get_mpz_t());
}

}  // namespace hasse
