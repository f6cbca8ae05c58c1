#include "hasse/modular.hpp"

#include <numeric>
#include <stdexcept>

namespace hasse {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_order(const BigInt& q, std::uint64_t N, bool quotient_by_sign) {
  if (N < 2) throw std::invalid_argument("mod_order: modulus must be >= 2");
  const std::uint64_t r = mod_u64(q, N);
  if (std::gcd(r, N) != 1) {
    throw std::invalid_argument("mod_order: q is not invertible modulo N");
  }
  std::uint64_t acc = r;
  for (std::uint64_t f = 1; f <= N; ++f) {
    if (acc == 1 % N) return f;
    if (quotient_by_sign && acc == N - 1) return f;
    acc = mulmod(acc, r, N);
  }
  throw std::logic_error("mod_order: no order found");  // unreachable for gcd(q, N) = 1
}

Congruence crt_combine(const Congruence& a, const Congruence& b) {
  if (a.modulus <= 0 || b.modulus <= 0) {
    throw std::invalid_argument("crt_solve: moduli must be positive");
  }
  BigInt g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.modulus.get_mpz_t(),
             b.modulus.get_mpz_t());
  if (g != 1) {
    throw std::invalid_argument("crt_solve: moduli " + to_string(a.modulus) + " and " +
                                to_string(b.modulus) + " are not coprime");
  }
  // x = a.r + a.m * s * (b.r - a.r)  satisfies both since a.m * s == 1 (mod b.m).
  const BigInt m = a.modulus * b.modulus;
  BigInt x = a.residue + a.modulus * s * (b.residue - a.residue);
  return {mod_floor(x, m), m};
}

Congruence crt_solve(std::span<const Congruence> congruences) {
  Congruence acc{0, 1};
  for (const auto& c : congruences) {
    acc = crt_combine(acc, {mod_floor(c.residue, c.modulus > 0 ? c.modulus : BigInt(1)), c.modulus});
  }
  return acc;
}

}  // namespace hasse
