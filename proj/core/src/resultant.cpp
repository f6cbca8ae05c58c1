#include "hasse/resultant.hpp"

#include <stdexcept>
#include <utility>

namespace hasse {

namespace {

struct Prepared {
  std::vector<MultiPoly> f;  // ascending coefficients of f in var
  std::vector<MultiPoly> g;
  Variables rest;
};

Prepared prepare(const MultiPoly& f_in, const MultiPoly& g_in, std::string_view var) {
  Variables all = merge_variables(f_in.variables(), g_in.variables());
  std::size_t vi = all.size();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == var) vi = i;
  }
  if (vi == all.size()) {
    throw std::invalid_argument("resultant: variable " + std::string(var) + " absent from both inputs");
  }
  Prepared p;
  p.f = f_in.with_variables(all).coefficients_in(vi);
  p.g = g_in.with_variables(all).coefficients_in(vi);
  p.rest = p.f.front().variables();
  const MultiPoly one = MultiPoly::constant(p.rest, 1);
  if (p.f.back() != one) {
    throw std::invalid_argument("resultant: first argument is not monic in " + std::string(var));
  }
  while (p.g.size() > 1 && p.g.back().is_zero()) p.g.pop_back();
  return p;
}

// Element of R[z]/(f), f monic of degree d: d coefficient slots.
class QuotientRing {
 public:
  explicit QuotientRing(const std::vector<MultiPoly>& f) : d_(f.size() - 1), rest_(f.front().variables()) {
    for (std::size_t i = 1; i <= d_; ++i) a_.push_back(f[d_ - i]);
    // Newton: s_k = -(a_1 s_{k-1} + ... + a_{k-1} s_1) - k a_k.
    power_sums_.push_back(MultiPoly::constant(rest_, static_cast<long>(d_)));
    for (std::size_t k = 1; k < d_; ++k) {
      MultiPoly s = a_[k - 1].scaled(-static_cast<long>(k));
      for (std::size_t i = 1; i < k; ++i) s -= a_[i - 1] * power_sums_[k - i];
      power_sums_.push_back(std::move(s));
    }
  }

  std::vector<MultiPoly> reduce(std::vector<MultiPoly> h) const {
    for (std::size_t k = h.size(); k-- > d_;) {
      if (h[k].is_zero()) continue;
      const MultiPoly c = std::move(h[k]);
      for (std::size_t i = 1; i <= d_; ++i) h[k - i] -= c * a_[i - 1];
    }
    h.resize(d_, MultiPoly(rest_));
    return h;
  }

  std::vector<MultiPoly> mul(const std::vector<MultiPoly>& x, const std::vector<MultiPoly>& y) const {
    std::vector<MultiPoly> prod(x.size() + y.size() - 1, MultiPoly(rest_));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (!y[j].is_zero()) prod[i + j] += x[i] * y[j];
      }
    }
    return reduce(std::move(prod));
  }

  MultiPoly trace(const std::vector<MultiPoly>& h) const {
    MultiPoly t(rest_);
    for (std::size_t j = 0; j < d_; ++j) {
      if (!h[j].is_zero()) t += h[j] * power_sums_[j];
    }
    return t;
  }

 private:
  std::size_t d_;
  Variables rest_;
  std::vector<MultiPoly> a_;
  std::vector<MultiPoly> power_sums_;
};

}  // namespace

MultiPoly resultant(const MultiPoly& f_in, const MultiPoly& g_in, std::string_view var) {
  Prepared p = prepare(f_in, g_in, var);
  const std::size_t d = p.f.size() - 1;
  if (d == 0) return MultiPoly::constant(p.rest, 1);

  const QuotientRing ring(p.f);
  const std::vector<MultiPoly> g = ring.reduce(p.g);

  // p_k = Tr(g^k); e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i; Res = e_d.
  std::vector<MultiPoly> traces;
  std::vector<MultiPoly> power = g;
  for (std::size_t k = 1; k <= d; ++k) {
    if (k > 1) power = ring.mul(power, g);
    traces.push_back(ring.trace(power));
  }
  std::vector<MultiPoly> e{MultiPoly::constant(p.rest, 1)};
  for (std::size_t k = 1; k <= d; ++k) {
    MultiPoly acc(p.rest);
    for (std::size_t i = 1; i <= k; ++i) {
      if (e[k - i].is_zero() || traces[i - 1].is_zero()) continue;
      MultiPoly term = e[k - i] * traces[i - 1];
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    e.push_back(acc.exact_div(BigInt(static_cast<long>(k))));
  }
  return e[d];
}

MultiPoly resultant_sylvester(const MultiPoly& f_in, const MultiPoly& g_in, std::string_view var) {
  Prepared p = prepare(f_in, g_in, var);
  const std::size_t d = p.f.size() - 1;
  const std::size_t m = p.g.size() - 1;
  if (d == 0) return MultiPoly::constant(p.rest, 1);
  if (m == 0) return p.g.front().pow(static_cast<unsigned>(d));

  const std::size_t n = d + m;
  std::vector<std::vector<MultiPoly>> M(n, std::vector<MultiPoly>(n, MultiPoly(p.rest)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= d; ++j) M[i][i + j] = p.f[d - j];
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= m; ++j) M[m + i][i + j] = p.g[m - j];
  }

  MultiPoly prev = MultiPoly::constant(p.rest, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && M[r][k].is_zero()) ++r;
      if (r == n) return MultiPoly(p.rest);
      std::swap(M[k], M[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = num.exact_div(prev);
      }
      M[i][k] = MultiPoly(p.rest);
    }
    prev = M[k][k];
  }
  return negate ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

}  // namespace hasse
