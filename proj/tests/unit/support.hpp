#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cstdint>
#include <random>
#include <vector>

#include "hasse/cyclotomic.hpp"
#include "hasse/multipoly.hpp"

namespace hasse::testing {

using Dec = boost::multiprecision::cpp_dec_float_50;

// Term-by-term evaluation mod p with no shared code with ModPoly.
inline std::uint64_t naive_eval_mod(const MultiPoly& f, const std::vector<std::uint64_t>& pt, std::uint64_t p) {
  unsigned __int128 sum = 0;
  for (const auto& t : f.terms()) {
    BigInt c = t.coeff % BigInt(static_cast<unsigned long>(p));
    if (c < 0) c += static_cast<unsigned long>(p);
    unsigned __int128 v = c.get_ui();
    for (std::size_t i = 0; i < pt.size(); ++i) {
      for (std::uint32_t e = 0; e < t.exponents[i]; ++e) v = v * pt[i] % p;
    }
    sum = (sum + v) % p;
  }
  return static_cast<std::uint64_t>(sum);
}

// Projective zero count: affine nonzero zeros divided by p - 1.
inline std::uint64_t naive_projective_count(const MultiPoly& f, std::uint64_t p) {
  const std::size_t n = f.arity();
  std::vector<std::pair<std::uint64_t, Exponents>> terms;
  for (const auto& t : f.terms()) {
    BigInt c = t.coeff % BigInt(static_cast<unsigned long>(p));
    if (c < 0) c += static_cast<unsigned long>(p);
    terms.emplace_back(c.get_ui(), t.exponents);
  }
  std::vector<std::uint64_t> pt(n, 0);
  std::uint64_t zeros = 0;
  while (true) {
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++pt[i] < p) break;
      pt[i] = 0;
    }
    if (i == n) break;
    std::uint64_t sum = 0;
    for (const auto& [c, ex] : terms) {
      std::uint64_t v = c;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::uint32_t e = 0; e < ex[k]; ++e) v = v * pt[k] % p;
      }
      sum = (sum + v) % p;
    }
    if (sum == 0) ++zeros;
  }
  return zeros / (p - 1);
}

inline MultiPoly random_poly(std::mt19937_64& rng, const Variables& vars, int terms, unsigned max_deg, int coeff) {
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<unsigned> e(0, max_deg);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Exponents ex(vars.size());
    for (auto& x : ex) x = e(rng);
    ts.push_back({ex, BigInt(c(rng))});
  }
  return MultiPoly(vars, ts);
}

struct DecComplex {
  Dec re, im;
};

inline DecComplex mul(const DecComplex& a, const DecComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// theta_m as a complex number (imaginary part zero for real_theta).
inline DecComplex theta(std::uint64_t N, ThetaVariant v, std::uint64_t m) {
  const Dec angle = 2 * boost::math::constants::pi<Dec>() * Dec(m) / Dec(N);
  if (v == ThetaVariant::real_theta) return {2 - 2 * cos(angle), Dec(0)};
  return {1 - cos(angle), -sin(angle)};
}

// prod over conjugates of (x + sum_i theta_m^i y_i) at an integer point.
inline Dec numeric_norm(std::uint64_t N, ThetaVariant v, const std::vector<long>& xy) {
  const std::uint64_t count = v == ThetaVariant::real_theta ? (N - 1) / 2 : N - 1;
  DecComplex prod{Dec(1), Dec(0)};
  for (std::uint64_t m = 1; m <= count; ++m) {
    const DecComplex th = theta(N, v, m);
    DecComplex power{Dec(1), Dec(0)};
    DecComplex sum{Dec(xy[0]), Dec(0)};
    for (std::size_t i = 1; i < xy.size(); ++i) {
      power = mul(power, th);
      sum.re += power.re * xy[i];
      sum.im += power.im * xy[i];
    }
    prod = mul(prod, sum);
  }
  return prod.re;
}

inline Dec to_dec(const BigInt& v) { return Dec(v.get_str()); }

}  // namespace hasse::testing
