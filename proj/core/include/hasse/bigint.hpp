#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hasse {

/// Arbitrary-precision signed integer (GMP).
using BigInt = mpz_class;

BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& v);

/// Probabilistic for large inputs (GMP, 40 rounds), exact below 2^64.
bool is_prime(const BigInt& v);
bool is_prime(std::uint64_t v);

/// All primes p with p < bound, ascending.
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const BigInt& v, const BigInt& p);

/// Least non-negative residue.
BigInt mod_floor(const BigInt& v, const BigInt& m);
std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);

BigInt pow_big(const BigInt& base, unsigned exp);

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

/// An integer together with the prime factors that are known from how it
/// was constructed.  value == prod(prime^exponent) * cofactor always holds.
/// Nothing is ever factored after the fact; factors come from trial
/// division by primes the caller names.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  /// Divides out each listed prime completely.  Primes that do not divide
  /// `value` are not recorded.  Throws std::invalid_argument if a listed
  /// number is not prime or is repeated.
  static FactoredInteger from_known_primes(const BigInt& value, std::span<const BigInt> primes);

  /// Rebuild from serialized parts; validates every invariant.
  static FactoredInteger from_parts(BigInt value, std::vector<PrimePower> factors, BigInt cofactor);

  const BigInt& value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  const BigInt& cofactor() const { return cofactor_; }

  /// Exponent of p among the known factors (0 if absent).
  unsigned exponent_of(const BigInt& p) const;

  bool operator==(const FactoredInteger&) const = default;

 private:
  BigInt value_{0};
  std::vector<PrimePower> factors_;
  BigInt cofactor_{0};
};

}  // namespace hasse
