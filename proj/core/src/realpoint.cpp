#include <gmpxx.h>

#include <cmath>

#include "hasse/localsolve.hpp"

namespace hasse {

namespace {

mpq_class eval_univariate(const std::vector<BigInt>& coeffs, const mpq_class& x) {
  // coeffs[i] multiplies x^i
  mpq_class acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * x + mpq_class(coeffs[i]);
  }
  return acc;
}

mpq_class eval_rational(const MultiPoly& f, const std::vector<mpq_class>& point) {
  mpq_class total = 0;
  for (const auto& term : f.terms()) {
    mpq_class t(term.coeff);
    for (std::size_t i = 0; i < term.exponents.size(); ++i) {
      for (std::uint32_t e = 0; e < term.exponents[i]; ++e) t *= point[i];
    }
    total += t;
  }
  return total;
}

int sign(const mpq_class& q) { return sgn(q); }

std::string decimal(const mpq_class& q) {
  mpf_class f(q, 256);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, 30);
  if (digits.empty() || digits == "0") return "0";
  std::string out;
  bool negative = digits[0] == '-';
  if (negative) digits.erase(0, 1);
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
  } else if (static_cast<std::size_t>(exp) >= digits.size()) {
    out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
  }
  return negative ? "-" + out : out;
}

std::vector<mpq_class> embed(std::size_t arity, std::size_t free_var, std::size_t unit_var, const mpq_class& x) {
  std::vector<mpq_class> pt(arity, mpq_class(0));
  pt[unit_var] = 1;
  pt[free_var] = x;
  return pt;
}

const mpq_class kResidualStop("1/1000000000000000");

}  // namespace

RealPoint real_point(const MultiPoly& f) {
  RealPoint rp;
  const std::size_t n = f.arity();
  if (n < 2) {
    rp.reason = "need at least two variables";
    return rp;
  }
  for (std::size_t free_var = 0; free_var < n; ++free_var) {
    for (std::size_t unit_var = 0; unit_var < n; ++unit_var) {
      if (unit_var == free_var) continue;
      std::vector<std::pair<std::string, BigInt>> fix;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != free_var) fix.emplace_back(f.variables()[i], i == unit_var ? BigInt(1) : BigInt(0));
      }
      const MultiPoly g = f.specialize(fix);
      if (g.is_zero()) continue;
      std::vector<BigInt> coeffs(g.total_degree() + 1, 0);
      for (const auto& term : g.terms()) coeffs[term.exponents.empty() ? 0 : term.exponents[0]] = term.coeff;
      const std::size_t deg = coeffs.size() - 1;
      if (deg == 0) continue;

      mpq_class bound = 0;
      for (std::size_t i = 0; i < deg; ++i) {
        mpq_class r(coeffs[i], coeffs[deg]);
        r.canonicalize();
        bound = std::max(bound, mpq_class(abs(r)));
      }
      bound += 1;
      mpq_class lo = -bound, hi = bound;
      if (deg % 2 == 0) {
        // even degree: look for a sign change on a grid inside the root bound
        constexpr int kSteps = 64;
        bool bracketed = false;
        mpq_class prev = -bound;
        int s_prev = sign(eval_univariate(coeffs, prev));
        for (int k = -kSteps + 1; k <= kSteps && !bracketed; ++k) {
          const mpq_class x = bound * mpq_class(k, kSteps);
          const int s_x = sign(eval_univariate(coeffs, x));
          if (s_prev == 0) {
            lo = hi = prev;
            bracketed = true;
          } else if (s_x == 0) {
            lo = hi = x;
            bracketed = true;
          } else if (s_prev != s_x) {
            lo = prev;
            hi = x;
            bracketed = true;
          }
          prev = x;
          s_prev = s_x;
        }
        if (!bracketed) continue;
      }
      const int s_lo = sign(eval_univariate(coeffs, lo));
      mpq_class mid = (lo + hi) / 2;
      mpq_class value = eval_univariate(coeffs, mid);
      for (int iter = 0; iter < 4000; ++iter) {
        if (value == 0) {
          lo = hi = mid;
          break;
        }
        if (abs(value) < kResidualStop && hi - lo < kResidualStop) break;
        if (sign(value) == s_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
        mid = (lo + hi) / 2;
        value = eval_univariate(coeffs, mid);
      }
      rp.found = true;
      rp.free_var = free_var;
      rp.unit_var = unit_var;
      rp.lo = lo.get_str();
      rp.hi = hi.get_str();
      rp.point.assign(n, "0");
      rp.point[unit_var] = "1";
      rp.point[free_var] = decimal(mid);
      rp.residual = std::fabs(mpq_class(abs(value)).get_d());
      return rp;
    }
  }
  rp.reason = "no one-variable slice (one coordinate 1, the rest 0) changes sign: even degree without a bracket";
  return rp;
}

CheckResult verify_real_point(const MultiPoly& f, const RealPoint& rp, double tolerance) {
  if (!rp.found) return {false, "no real point recorded"};
  const std::size_t n = f.arity();
  if (rp.free_var >= n || rp.unit_var >= n || rp.free_var == rp.unit_var) {
    return {false, "real point variable indices are invalid"};
  }
  mpq_class lo, hi;
  try {
    lo = mpq_class(rp.lo);
    hi = mpq_class(rp.hi);
  } catch (const std::invalid_argument&) {
    return {false, "real point bracket is not a rational number"};
  }
  lo.canonicalize();
  hi.canonicalize();
  if (lo > hi) return {false, "real point bracket has lo > hi"};
  const mpq_class f_lo = eval_rational(f, embed(n, rp.free_var, rp.unit_var, lo));
  const mpq_class f_hi = eval_rational(f, embed(n, rp.free_var, rp.unit_var, hi));
  if (sign(f_lo) * sign(f_hi) > 0) return {false, "no sign change on the real point bracket"};
  const mpq_class mid = (lo + hi) / 2;
  const double residual = std::fabs(eval_rational(f, embed(n, rp.free_var, rp.unit_var, mid)).get_d());
  if (!(residual < tolerance)) return {false, "real point residual " + std::to_string(residual) + " above tolerance"};
  return {true, ""};
}

}  // namespace hasse
