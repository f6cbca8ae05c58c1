#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hasse/bigint.hpp"

namespace hasse {

using Exponents = std::vector<std::uint32_t>;
using Variables = std::vector<std::string>;

struct Term {
  Exponents exponents;
  BigInt coeff;

  bool operator==(const Term&) const = default;
};

/// Strict "comes first" relation of the canonical order: descending total
/// degree, ties broken lexicographically (descending) in declared variable
/// order.
bool grlex_before(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients over a named, ordered variable list.
///
/// Terms are kept in canonical order with no zero coefficients, so two
/// polynomials over the same variable list are equal iff their term
/// vectors are equal.  Binary operations accept operands whose variable
/// lists coincide or where one list is a prefix-free superset of the other
/// (the smaller operand is embedded into the larger list).
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(Variables vars);
  /// Canonicalizes: merges repeated exponent vectors, drops zeros, sorts.
  MultiPoly(Variables vars, std::vector<Term> terms);

  static MultiPoly constant(Variables vars, const BigInt& c);
  static MultiPoly variable(Variables vars, std::string_view name);
  static MultiPoly monomial(Variables vars, Exponents exps, const BigInt& c);

  const Variables& variables() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Index of a variable name; throws std::invalid_argument if absent.
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> find_variable(std::string_view name) const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  std::uint32_t degree_in(std::size_t var) const;
  BigInt coefficient(const Exponents& exps) const;
  /// gcd of all coefficients (0 for the zero polynomial).
  BigInt content() const;

  /// Re-expresses the polynomial over `vars`, which must contain every
  /// variable that actually occurs.  Handles embedding and reordering.
  MultiPoly with_variables(const Variables& vars) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const BigInt& c) const;
  MultiPoly pow(unsigned e) const;
  /// Divides every coefficient by d; throws std::domain_error if inexact.
  MultiPoly exact_div(const BigInt& d) const;
  /// Exact multivariate division; throws std::domain_error unless
  /// divisor divides *this over Z.
  MultiPoly exact_div(const MultiPoly& divisor) const;

  MultiPoly derivative(std::size_t var) const;
  /// Replaces variable `var` by `value` (expressed over the same list or a
  /// list embeddable in it).  The variable list is kept.
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
  /// Sets the named variables to the given integers and removes them from
  /// the variable list.
  MultiPoly specialize(std::span<const std::pair<std::string, BigInt>> assignment) const;
  /// Coefficients of var^0, var^1, ..., var^deg as polynomials over the
  /// remaining variables.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  /// Coefficients reduced into [0, m); zero residues dropped.
  MultiPoly reduce_mod(const BigInt& m) const;

  BigInt eval(std::span<const BigInt> point) const;
  /// Value reduced into [0, modulus).
  BigInt eval_mod(std::span<const BigInt> point, const BigInt& modulus) const;

  /// Canonical text: `+6 t^3 | +35 t^2 x^1 | ...`; "0" for zero.
  std::string to_text() const;
  static MultiPoly from_text(std::string_view text, Variables vars);

  bool operator==(const MultiPoly& o) const;

 private:
  void canonicalize();
  Variables vars_;
  std::vector<Term> terms_;
};

/// Union of two variable lists: `a` in order, then the names of `b` not in `a`.
Variables merge_variables(const Variables& a, const Variables& b);

enum class ArithOp { add, sub, mul };

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op);

/// Exact value of p at `point`, reduced into [0, modulus) when given.
/// Throws std::invalid_argument on arity mismatch or modulus < 2.
BigInt poly_eval(const MultiPoly& p, std::span<const BigInt> point,
                 const std::optional<BigInt>& modulus = std::nullopt);

}  // namespace hasse
