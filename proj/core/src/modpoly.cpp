#include "hasse/modpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "hasse/modular.hpp"

namespace hasse {

ModPoly::ModPoly(const MultiPoly& f, std::uint64_t p) : p_(p), arity_(f.arity()) {
  if (p < 2 || p > (1ull << 31)) throw std::invalid_argument("ModPoly: modulus out of range");
  if (arity_ == 0) throw std::invalid_argument("ModPoly: polynomial has no variables");
  for (const auto& t : f.terms()) {
    const std::uint64_t c = mod_u64(t.coeff, p);
    if (c == 0) continue;
    PrefixTerm pt;
    pt.exps.assign(t.exponents.begin(), t.exponents.end() - 1);
    pt.coeff = c;
    pt.last_exp = t.exponents.back();
    for (auto e : t.exponents) max_exp_ = std::max(max_exp_, e);
    last_degree_ = std::max(last_degree_, pt.last_exp);
    terms_.push_back(std::move(pt));
  }
  powers_.resize(p * (max_exp_ + 1));
  for (std::uint64_t v = 0; v < p; ++v) {
    std::uint64_t acc = 1;
    for (std::uint32_t e = 0; e <= max_exp_; ++e) {
      powers_[v * (max_exp_ + 1) + e] = acc;
      acc = acc * v % p;
    }
  }
}

std::uint64_t ModPoly::eval(std::span<const std::uint64_t> point) const {
  if (point.size() != arity_) throw std::invalid_argument("ModPoly::eval: arity mismatch");
  std::uint64_t sum = 0;
  for (const auto& t : terms_) {
    std::uint64_t v = t.coeff;
    for (std::size_t i = 0; i + 1 < arity_; ++i) {
      if (t.exps[i]) v = v * pow_of(point[i] % p_, t.exps[i]) % p_;
    }
    if (t.last_exp) v = v * pow_of(point.back() % p_, t.last_exp) % p_;
    sum += v;
    if (sum >= p_) sum -= p_;
  }
  return sum;
}

void ModPoly::eval_line(std::span<const std::uint64_t> prefix, std::vector<std::uint64_t>& out) const {
  std::vector<std::uint64_t> c(last_degree_ + 1, 0);
  for (const auto& t : terms_) {
    std::uint64_t v = t.coeff;
    for (std::size_t i = 0; i + 1 < arity_; ++i) {
      if (t.exps[i]) v = v * pow_of(prefix[i], t.exps[i]) % p_;
    }
    c[t.last_exp] += v;
    if (c[t.last_exp] >= p_) c[t.last_exp] -= p_;
  }
  out.resize(p_);
  for (std::uint64_t x = 0; x < p_; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t e = c.size(); e-- > 0;) acc = (acc * x + c[e]) % p_;
    out[x] = acc;
  }
}

}  // namespace hasse
