#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hasse/multipoly.hpp"

namespace hasse {

/// A MultiPoly with coefficients reduced modulo a word-sized prime, laid
/// out for enumeration: terms are grouped by the exponent of the last
/// variable so a whole line of points (last coordinate 0..p-1) costs one
/// pass over the terms plus p Horner evaluations.
class ModPoly {
 public:
  ModPoly(const MultiPoly& f, std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::size_t arity() const { return arity_; }

  std::uint64_t eval(std::span<const std::uint64_t> point) const;

  /// out[v] = f(prefix, v) for v in [0, p).  prefix has arity-1 entries.
  void eval_line(std::span<const std::uint64_t> prefix, std::vector<std::uint64_t>& out) const;

 private:
  std::uint64_t pow_of(std::uint64_t value, std::uint32_t e) const {
    return powers_[value * (max_exp_ + 1) + e];
  }

  struct PrefixTerm {
    std::vector<std::uint32_t> exps;  // prefix exponents
    std::uint64_t coeff;
    std::uint32_t last_exp;
  };
  std::uint64_t p_;
  std::size_t arity_;
  std::uint32_t max_exp_ = 0;
  std::uint32_t last_degree_ = 0;
  std::vector<PrefixTerm> terms_;
  std::vector<std::uint64_t> powers_;
};

}  // namespace hasse
