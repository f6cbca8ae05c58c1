#pragma once

#include <cstdint>
#include <span>

#include "hasse/bigint.hpp"

namespace hasse {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least f >= 1 with q^f == 1 (mod N), or q^f == +-1 (mod N) when
/// `quotient_by_sign` is set (the residual degree of q in the real subfield
/// of the N-th cyclotomic field).  Throws std::invalid_argument when
/// gcd(q, N) != 1 or N < 2.
std::uint64_t mod_order(const BigInt& q, std::uint64_t N, bool quotient_by_sign);

struct Congruence {
  BigInt residue;
  BigInt modulus;

  bool operator==(const Congruence&) const = default;
};

/// Combines pairwise coprime congruences into x == residue (mod prod of
/// moduli), residue in [0, modulus).  An empty list yields 0 (mod 1).
/// Throws std::invalid_argument on non-coprime or non-positive moduli.
Congruence crt_solve(std::span<const Congruence> congruences);

/// Two-congruence step of crt_solve.
Congruence crt_combine(const Congruence& a, const Congruence& b);

}  // namespace hasse
