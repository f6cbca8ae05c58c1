#include "hasse/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hasse {

namespace {

std::uint32_t degree_of(const Exponents& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : e) {
      h ^= x + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_before(a, b); }
};

// Express both operands over a common variable list.
std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
  if (a.variables() == b.variables()) return {a, b};
  Variables u = merge_variables(a.variables(), b.variables());
  return {a.with_variables(u), b.with_variables(u)};
}

std::vector<std::vector<BigInt>> power_table(const MultiPoly& p, std::span<const BigInt> point) {
  std::vector<std::vector<BigInt>> table(p.arity());
  for (std::size_t v = 0; v < p.arity(); ++v) {
    const auto deg = p.degree_in(v);
    table[v].resize(deg + 1);
    table[v][0] = 1;
    for (std::uint32_t e = 1; e <= deg; ++e) table[v][e] = table[v][e - 1] * point[v];
  }
  return table;
}

}  // namespace

bool grlex_before(const Exponents& a, const Exponents& b) {
  const auto da = degree_of(a);
  const auto db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Variables merge_variables(const Variables& a, const Variables& b) {
  Variables out = a;
  for (const auto& name : b) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

MultiPoly::MultiPoly(Variables vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable name: " + vars_[i]);
    }
  }
}

MultiPoly::MultiPoly(Variables vars, std::vector<Term> terms) : MultiPoly(std::move(vars)) {
  terms_ = std::move(terms);
  for (const auto& t : terms_) {
    if (t.exponents.size() != vars_.size()) {
      throw std::invalid_argument("exponent vector length does not match variable count");
    }
  }
  canonicalize();
}

void MultiPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_before(a.exponents, b.exponents); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(merged);
}

MultiPoly MultiPoly::constant(Variables vars, const BigInt& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.push_back({Exponents(p.vars_.size(), 0), c});
  return p;
}

MultiPoly MultiPoly::variable(Variables vars, std::string_view name) {
  MultiPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  e[p.index_of(name)] = 1;
  p.terms_.push_back({std::move(e), 1});
  return p;
}

MultiPoly MultiPoly::monomial(Variables vars, Exponents exps, const BigInt& c) {
  std::vector<Term> t;
  t.push_back({std::move(exps), c});
  return MultiPoly(std::move(vars), std::move(t));
}

std::optional<std::size_t> MultiPoly::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t MultiPoly::index_of(std::string_view name) const {
  if (auto i = find_variable(name)) return *i;
  throw std::invalid_argument("unknown variable: " + std::string(name));
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(degree_of(terms_.front().exponents));
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = degree_of(terms_.front().exponents);
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const Term& t) { return degree_of(t.exponents) == d; });
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents.at(var));
  return d;
}

BigInt MultiPoly::coefficient(const Exponents& exps) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                             [](const Term& t, const Exponents& e) { return grlex_before(t.exponents, e); });
  if (it != terms_.end() && it->exponents == exps) return it->coeff;
  return 0;
}

BigInt MultiPoly::content() const {
  BigInt g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
  }
  return g;
}

MultiPoly MultiPoly::with_variables(const Variables& vars) const {
  if (vars == vars_) return *this;
  std::vector<std::optional<std::size_t>> target(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it != vars.end()) target[i] = static_cast<std::size_t>(it - vars.begin());
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(vars.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!target[i]) {
        throw std::invalid_argument("variable " + vars_[i] + " occurs but is missing from target list");
      }
      e[*target[i]] = t.exponents[i];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return MultiPoly(vars, std::move(out));
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (vars_ != o.vars_) return *this = poly_arith(*this, o, ArithOp::add);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && grlex_before(i->exponents, j->exponents))) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || grlex_before(j->exponents, i->exponents)) {
      out.push_back(*j++);
    } else {
      BigInt c = i->coeff + j->coeff;
      if (c != 0) out.push_back({std::move(i->exponents), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a_in, const MultiPoly& b_in) {
  if (a_in.variables() != b_in.variables()) {
    auto [a, b] = aligned(a_in, b_in);
    return a * b;
  }
  const auto& a = a_in;
  const auto& b = b_in;
  if (a.is_zero() || b.is_zero()) return MultiPoly(a.variables());
  std::unordered_map<Exponents, BigInt, ExponentsHash> acc;
  acc.reserve(a.term_count() * b.term_count() / 2 + 1);
  const std::size_t n = a.arity();
  Exponents e(n);
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      for (std::size_t k = 0; k < n; ++k) e[k] = ta.exponents[k] + tb.exponents[k];
      auto [it, inserted] = acc.try_emplace(e);
      mpz_addmul(it->second.get_mpz_t(), ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t());
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [exps, c] : acc) {
    if (c != 0) terms.push_back({exps, std::move(c)});
  }
  return MultiPoly(a.variables(), std::move(terms));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly MultiPoly::scaled(const BigInt& c) const {
  if (c == 0) return MultiPoly(vars_);
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(vars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::exact_div(const BigInt& d) const {
  if (d == 0) throw std::domain_error("division by zero");
  MultiPoly r = *this;
  for (auto& t : r.terms_) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t())) {
      throw std::domain_error("inexact integer division of polynomial");
    }
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& divisor_in) const {
  if (divisor_in.is_zero()) throw std::domain_error("division by zero polynomial");
  auto [num, divisor] = aligned(*this, divisor_in);
  const Term& lead = divisor.terms().front();
  std::map<Exponents, BigInt, GrlexLess> rem;
  for (const auto& t : num.terms()) rem.emplace(t.exponents, t.coeff);
  std::vector<Term> quotient;
  const std::size_t n = num.arity();
  while (!rem.empty()) {
    auto top = rem.begin();
    Exponents qe(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (top->first[k] < lead.exponents[k]) throw std::domain_error("inexact polynomial division");
      qe[k] = top->first[k] - lead.exponents[k];
    }
    if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t())) {
      throw std::domain_error("inexact polynomial division");
    }
    BigInt qc;
    mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), lead.coeff.get_mpz_t());
    for (const auto& t : divisor.terms()) {
      Exponents e(n);
      for (std::size_t k = 0; k < n; ++k) e[k] = qe[k] + t.exponents[k];
      auto [it, inserted] = rem.try_emplace(std::move(e));
      mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), t.coeff.get_mpz_t());
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({std::move(qe), std::move(qc)});
  }
  return MultiPoly(num.variables(), std::move(quotient));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= vars_.size()) throw std::invalid_argument("derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exponents[var];
    d.exponents[var] -= 1;
    out.push_back(std::move(d));
  }
  return MultiPoly(vars_, std::move(out));
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  if (var >= vars_.size()) throw std::invalid_argument("coefficients_in: variable index out of range");
  Variables rest;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i != var) rest.push_back(vars_[i]);
  }
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Exponents e;
    e.reserve(rest.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i != var) e.push_back(t.exponents[i]);
    }
    buckets[t.exponents[var]].push_back({std::move(e), t.coeff});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(rest, std::move(b));
  return out;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value_in) const {
  if (var >= vars_.size()) throw std::invalid_argument("substitute: variable index out of range");
  const MultiPoly value = value_in.with_variables(vars_);
  // Horner in the substituted variable over coefficient slices.
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Term c = t;
    c.exponents[var] = 0;
    buckets[t.exponents[var]].push_back(std::move(c));
  }
  MultiPoly acc(vars_);
  for (std::size_t k = buckets.size(); k-- > 0;) {
    acc = acc * value + MultiPoly(vars_, std::move(buckets[k]));
  }
  return acc;
}

MultiPoly MultiPoly::specialize(std::span<const std::pair<std::string, BigInt>> assignment) const {
  std::vector<std::optional<BigInt>> fixed(vars_.size());
  for (const auto& [name, v] : assignment) fixed[index_of(name)] = v;
  Variables rest;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!fixed[i]) rest.push_back(vars_[i]);
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term r;
    r.coeff = t.coeff;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (fixed[i]) {
        r.coeff *= pow_big(*fixed[i], t.exponents[i]);
      } else {
        r.exponents.push_back(t.exponents[i]);
      }
    }
    if (r.coeff != 0) out.push_back(std::move(r));
  }
  return MultiPoly(rest, std::move(out));
}

MultiPoly MultiPoly::reduce_mod(const BigInt& m) const {
  if (m < 1) throw std::invalid_argument("reduce_mod: modulus must be positive");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    BigInt c = mod_floor(t.coeff, m);
    if (c != 0) out.push_back({t.exponents, std::move(c)});
  }
  return MultiPoly(vars_, std::move(out));
}

BigInt MultiPoly::eval(std::span<const BigInt> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("eval: arity mismatch");
  const auto table = power_table(*this, point);
  BigInt sum = 0;
  BigInt term;
  for (const auto& t : terms_) {
    term = t.coeff;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (t.exponents[v] != 0) term *= table[v][t.exponents[v]];
    }
    sum += term;
  }
  return sum;
}

BigInt MultiPoly::eval_mod(std::span<const BigInt> point, const BigInt& modulus) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("eval_mod: arity mismatch");
  if (modulus < 2) throw std::invalid_argument("eval_mod: modulus must be >= 2");
  std::vector<BigInt> reduced(point.begin(), point.end());
  for (auto& r : reduced) r = mod_floor(r, modulus);
  std::vector<std::vector<BigInt>> table(vars_.size());
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    const auto deg = degree_in(v);
    table[v].resize(deg + 1);
    table[v][0] = 1;
    for (std::uint32_t e = 1; e <= deg; ++e) table[v][e] = table[v][e - 1] * reduced[v] % modulus;
  }
  BigInt sum = 0;
  BigInt term;
  for (const auto& t : terms_) {
    term = t.coeff % modulus;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (t.exponents[v] != 0) term = term * table[v][t.exponents[v]] % modulus;
    }
    sum += term;
  }
  return mod_floor(sum, modulus);
}

std::string MultiPoly::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out += " | ";
    first = false;
    out += (t.coeff > 0 ? "+" : "") + to_string(t.coeff);
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (t.exponents[v] == 0) continue;
      out += ' ';
      out += vars_[v];
      out += '^';
      out += std::to_string(t.exponents[v]);
    }
  }
  return out;
}

MultiPoly MultiPoly::from_text(std::string_view text, Variables vars) {
  MultiPoly proto(vars);
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  if (body == "0") return proto;
  if (body.empty()) throw std::invalid_argument("empty polynomial text");
  std::vector<Term> terms;
  while (true) {
    auto bar = body.find('|');
    std::string_view piece = trim(body.substr(0, bar));
    if (piece.empty()) throw std::invalid_argument("empty term in polynomial text");
    std::istringstream in{std::string(piece)};
    std::string tok;
    in >> tok;
    if (tok.empty() || (tok[0] != '+' && tok[0] != '-')) {
      throw std::invalid_argument("term must start with a signed coefficient: " + std::string(piece));
    }
    Term term{Exponents(vars.size(), 0), parse_bigint(tok)};
    while (in >> tok) {
      auto caret = tok.find('^');
      if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size()) {
        throw std::invalid_argument("malformed power: " + tok);
      }
      const std::size_t v = proto.index_of(tok.substr(0, caret));
      if (term.exponents[v] != 0) throw std::invalid_argument("variable repeated in term: " + tok);
      const std::string exp = tok.substr(caret + 1);
      if (!std::all_of(exp.begin(), exp.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("malformed exponent: " + tok);
      }
      term.exponents[v] = static_cast<std::uint32_t>(std::stoul(exp));
    }
    terms.push_back(std::move(term));
    if (bar == std::string_view::npos) break;
    body = body.substr(bar + 1);
  }
  return MultiPoly(std::move(vars), std::move(terms));
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  try {
    auto [a, b] = aligned(*this, o);
    return a.terms_ == b.terms_;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op) {
  auto [x, y] = aligned(a, b);
  switch (op) {
    case ArithOp::add: return x += y;
    case ArithOp::sub: return x -= y;
    case ArithOp::mul: return x * y;
  }
  throw std::invalid_argument("unknown arithmetic op");
}

BigInt poly_eval(const MultiPoly& p, std::span<const BigInt> point, const std::optional<BigInt>& modulus) {
  if (point.size() != p.arity()) throw std::invalid_argument("poly_eval: arity mismatch");
  if (!modulus) return p.eval(point);
  return p.eval_mod(point, *modulus);
}

}  // namespace hasse
