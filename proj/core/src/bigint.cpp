#include "hasse/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace hasse {

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("malformed integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

bool is_prime(const BigInt& v) {
  if (v < 2) return false;
  return mpz_probab_prime_p(v.get_mpz_t(), 40) != 0;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (v % d == 0) return v == d;
  }
  if (v < 289) return true;
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return is_prime(b);
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound <= 2) return out;
  std::vector<bool> composite(bound, false);
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

unsigned valuation(const BigInt& v, const BigInt& p) {
  if (v == 0) throw std::invalid_argument("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation base must be >= 2");
  BigInt x = v;
  unsigned k = 0;
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

BigInt mod_floor(const BigInt& v, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
  return r.get_ui();
}

BigInt pow_big(const BigInt& base, unsigned exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

FactoredInteger FactoredInteger::from_known_primes(const BigInt& value,
                                                   std::span<const BigInt> primes) {
  FactoredInteger out;
  out.value_ = value;
  out.cofactor_ = value;
  std::vector<BigInt> seen;
  for (const BigInt& p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + to_string(p));
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) {
      throw std::invalid_argument("repeated prime: " + to_string(p));
    }
    seen.push_back(p);
    if (value == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_p(out.cofactor_.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(out.cofactor_.get_mpz_t(), out.cofactor_.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e > 0) out.factors_.push_back({p, e});
  }
  return out;
}

FactoredInteger FactoredInteger::from_parts(BigInt value, std::vector<PrimePower> factors,
                                            BigInt cofactor) {
  BigInt product = cofactor;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!is_prime(factors[i].prime)) {
      throw std::invalid_argument("listed factor is not prime: " + to_string(factors[i].prime));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors[j].prime == factors[i].prime) {
        throw std::invalid_argument("repeated prime factor: " + to_string(factors[i].prime));
      }
    }
    product *= pow_big(factors[i].prime, factors[i].exponent);
  }
  if (product != value) throw std::invalid_argument("factorization does not multiply to value");
  FactoredInteger out;
  out.value_ = std::move(value);
  out.factors_ = std::move(factors);
  out.cofactor_ = std::move(cofactor);
  return out;
}

unsigned FactoredInteger::exponent_of(const BigInt& p) const {
  for (const auto& f : factors_) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

}  // namespace hasse
