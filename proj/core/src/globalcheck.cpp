#include "hasse/globalcheck.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hasse/modular.hpp"
#include "hasse/parallel.hpp"

namespace hasse {

namespace {

__extension__ typedef __int128 i128;

struct Slab {
  std::vector<std::int64_t> lead;
};

bool sign_ok(std::span<const std::int64_t> coords) {
  for (auto c : coords) {
    if (c != 0) return c > 0;
  }
  return true;
}

bool all_zero(std::span<const std::int64_t> coords) {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

// Advances coords[begin..] through [-H, H]^k; false once exhausted.
bool odometer(std::vector<std::int64_t>& coords, std::size_t begin, std::int64_t H) {
  for (std::size_t k = coords.size(); k > begin;) {
    --k;
    if (++coords[k] <= H) return true;
    coords[k] = -H;
  }
  return false;
}

std::vector<Slab> make_slabs(std::size_t lead_len, std::int64_t H) {
  std::vector<Slab> slabs;
  std::vector<std::int64_t> lead(lead_len, -H);
  do {
    if (sign_ok(lead)) slabs.push_back({lead});
  } while (odometer(lead, 0, H));
  return slabs;
}

template <class T>
T to_num(const BigInt& v);

template <>
i128 to_num<i128>(const BigInt& v) {
  // |v| < 2^125 is guaranteed by the caller
  BigInt a = abs(v);
  const BigInt base = BigInt(1) << 62;
  i128 out = 0;
  i128 scale = 1;
  while (a != 0) {
    BigInt digit = a % base;
    out += scale * static_cast<i128>(digit.get_ui());
    a /= base;
    scale <<= 62;
  }
  return v < 0 ? -out : out;
}

template <>
BigInt to_num<BigInt>(const BigInt& v) {
  return v;
}

// Evaluates f along the last coordinate for a fixed prefix.
template <class T>
class LineEvaluator {
 public:
  LineEvaluator(const MultiPoly& f, std::int64_t H) : arity_(f.arity()), H_(H) {
    for (const auto& t : f.terms()) {
      max_exp_ = std::max(max_exp_, *std::max_element(t.exponents.begin(), t.exponents.end()));
      degree_ = std::max(degree_, t.exponents.back());
    }
    for (const auto& t : f.terms()) {
      terms_.push_back({std::vector<std::uint32_t>(t.exponents.begin(), t.exponents.end() - 1), to_num<T>(t.coeff),
                        t.exponents.back()});
    }
    const auto width = static_cast<std::size_t>(2 * H + 1);
    powers_.assign(width * (max_exp_ + 1), T(0));
    for (std::size_t i = 0; i < width; ++i) {
      const T v = T(static_cast<long>(static_cast<std::int64_t>(i) - H));
      T acc = T(1);
      for (std::uint32_t e = 0; e <= max_exp_; ++e) {
        powers_[i * (max_exp_ + 1) + e] = acc;
        acc = acc * v;
      }
    }
  }

  void coefficients(std::span<const std::int64_t> prefix, std::vector<T>& coeffs) const {
    coeffs.assign(degree_ + 1, T(0));
    for (const auto& t : terms_) {
      T value = t.coeff;
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        if (t.exps[i] != 0) value = value * pow_of(prefix[i], t.exps[i]);
      }
      coeffs[t.last] = coeffs[t.last] + value;
    }
  }

  T horner(const std::vector<T>& coeffs, std::int64_t v) const {
    const T x = T(static_cast<long>(v));
    T acc = coeffs.back();
    for (std::size_t e = coeffs.size() - 1; e-- > 0;) acc = acc * x + coeffs[e];
    return acc;
  }

 private:
  const T& pow_of(std::int64_t v, std::uint32_t e) const {
    return powers_[static_cast<std::size_t>(v + H_) * (max_exp_ + 1) + e];
  }

  struct PrefixTerm {
    std::vector<std::uint32_t> exps;
    T coeff;
    std::uint32_t last;
  };
  std::size_t arity_;
  std::int64_t H_;
  std::uint32_t max_exp_ = 0;
  std::uint32_t degree_ = 0;
  std::vector<PrefixTerm> terms_;
  std::vector<T> powers_;
};

struct SlabResult {
  std::uint64_t searched = 0;
  std::vector<std::vector<std::int64_t>> roots;
};

template <class T>
void search_slab(const LineEvaluator<T>& ev, const Slab& slab, std::size_t arity, std::int64_t H,
                 const std::vector<std::uint64_t>& coprime_count, SlabResult& out) {
  std::vector<std::int64_t> prefix(arity - 1, -H);
  std::copy(slab.lead.begin(), slab.lead.end(), prefix.begin());
  const std::size_t begin = slab.lead.size();
  std::vector<T> coeffs;
  auto record = [&](std::int64_t v) {
    std::vector<std::int64_t> root(prefix.begin(), prefix.end());
    root.push_back(v);
    out.roots.push_back(std::move(root));
  };
  do {
    if (!sign_ok(prefix)) continue;
    ev.coefficients(prefix, coeffs);
    if (all_zero(prefix)) {
      ++out.searched;
      if (ev.horner(coeffs, 1) == T(0)) record(1);
      continue;
    }
    std::int64_t g = 0;
    for (auto c : prefix) g = std::gcd(g, c);
    out.searched += coprime_count[static_cast<std::size_t>(g)];
    for (std::int64_t v = -H; v <= H; ++v) {
      if (ev.horner(coeffs, v) == T(0) && std::gcd(g, v) == 1) record(v);
    }
  } while (odometer(prefix, begin, H));
}

template <class T>
std::vector<SlabResult> run_search(const MultiPoly& f, std::int64_t H, unsigned workers) {
  const std::size_t arity = f.arity();
  const LineEvaluator<T> ev(f, H);
  std::vector<std::uint64_t> coprime_count(static_cast<std::size_t>(H) + 1, 0);
  for (std::int64_t g = 1; g <= H; ++g) {
    for (std::int64_t v = -H; v <= H; ++v) coprime_count[static_cast<std::size_t>(g)] += std::gcd(g, v) == 1;
  }
  const std::size_t lead_len = std::min<std::size_t>(arity >= 4 ? 2 : 1, arity - 1);
  const auto slabs = make_slabs(lead_len, H);
  std::vector<SlabResult> results(slabs.size());
  parallel_for(slabs.size(), workers,
               [&](std::size_t i) { search_slab(ev, slabs[i], arity, H, coprime_count, results[i]); });
  return results;
}

std::string join_residues(const std::vector<std::uint64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "}";
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::uint64_t> allowed_residues(std::uint64_t N, ThetaVariant variant) {
  if (variant == ThetaVariant::one_minus_zeta) return {1};
  return {1, N - 1};
}

unsigned t_exponent(const FormParams& p) {
  return (p.variant == Variant::G2 || p.variant == Variant::G3) ? p.n - 1 : p.n;
}

TranscriptStep step_coprime(const FormParams& p) {
  const std::uint64_t r = mod_u64(p.alpha0 * (p.alpha0 + 1), p.N);
  TranscriptStep s;
  s.id = "s0";
  s.statement = "alpha0(alpha0+1) is prime to N";
  s.witness = {{"alpha0", to_string(p.alpha0)}, {"N", p.N}, {"residue", r}};
  s.pass = r != 0;
  return s;
}

TranscriptStep step_telescoping(const FormParams& p) {
  const auto [A, B] = brackets(p);
  const unsigned e = t_exponent(p);
  TranscriptStep s;
  s.id = "s1";
  s.statement = "B - A = t^" + std::to_string(e) + " as polynomials";
  s.witness = {{"variables", A.variables()}, {"A", A.to_text()}, {"B", B.to_text()}, {"t_exponent", e}};
  s.pass = (B - A) == MultiPoly::variable(A.variables(), A.variables().at(0)).pow(e);
  return s;
}

TranscriptStep step_ramification(const CyclotomicBasis& basis) {
  const BigInt N = BigInt(static_cast<unsigned long>(basis.N));
  const BigInt c = basis.minpoly.coefficient(Exponents{0});
  TranscriptStep s;
  s.id = "s2";
  s.statement = "minimal polynomial of theta_1 is Eisenstein at N with constant term +-N";
  s.witness = {{"N", basis.N},
               {"variant", to_string(basis.variant)},
               {"minpoly", basis.minpoly.to_text()},
               {"constant_term", to_string(c)}};
  s.pass = eisenstein_at(basis.minpoly, N) && abs(c) == N;
  return s;
}

TranscriptStep step_norm_residues(std::uint64_t N, ThetaVariant variant, std::uint64_t q_bound) {
  const auto allowed = allowed_residues(N, variant);
  const auto audit = norm_residue_audit(N, variant, q_bound);
  TranscriptStep s;
  s.id = "s3";
  s.statement = "every prime q < " + std::to_string(q_bound) + ", q != N, has q^f in " + join_residues(allowed) +
                " mod N for its residual degree f";
  nlohmann::json entries = nlohmann::json::array();
  s.pass = true;
  for (const auto& a : audit) {
    entries.push_back({a.q, a.f, a.residue});
    if (std::find(allowed.begin(), allowed.end(), a.residue) == allowed.end()) s.pass = false;
  }
  s.witness = {{"N", N},
               {"q_bound", q_bound},
               {"quotient_by_sign", variant == ThetaVariant::real_theta},
               {"allowed", allowed},
               {"entries", entries}};
  return s;
}

TranscriptStep step_contradiction(std::uint64_t N, unsigned n, ContradictionRule rule) {
  const auto sets = contradiction_sets(N, n, rule);
  TranscriptStep s;
  s.id = "s4";
  s.statement = "residue sets " + join_residues(sets.lhs) + " and " + join_residues(sets.rhs) +
                " are disjoint mod N (rule " + to_string(rule) + ")";
  s.witness = {{"N", N},
               {"n", n},
               {"rule", to_string(rule)},
               {"residues", sets.residues},
               {"lhs", sets.lhs},
               {"rhs", sets.rhs},
               {"intersection", sets.intersection}};
  s.pass = sets.intersection.empty();
  return s;
}

CheckResult fail(const std::string& id, const std::string& why) { return {false, id + ": " + why}; }

CheckResult replay_s0(const TranscriptStep& s) {
  const BigInt a = parse_bigint(s.witness.at("alpha0").get<std::string>());
  const auto N = s.witness.at("N").get<std::uint64_t>();
  const auto r = mod_u64(a * (a + 1), N);
  if (r != s.witness.at("residue").get<std::uint64_t>()) return fail(s.id, "residue mismatch");
  if ((r != 0) != s.pass) return fail(s.id, "recorded verdict disagrees");
  return {s.pass, s.pass ? "" : s.id + ": alpha0(alpha0+1) divisible by N"};
}

CheckResult replay_s1(const TranscriptStep& s) {
  const Variables vars = s.witness.at("variables").get<Variables>();
  const MultiPoly A = MultiPoly::from_text(s.witness.at("A").get<std::string>(), vars);
  const MultiPoly B = MultiPoly::from_text(s.witness.at("B").get<std::string>(), vars);
  const auto e = s.witness.at("t_exponent").get<unsigned>();
  if (vars.empty()) return fail(s.id, "no variables");
  const bool ok = (B - A) == MultiPoly::variable(vars, vars.at(0)).pow(e);
  if (ok != s.pass) return fail(s.id, "recorded verdict disagrees");
  return {ok, ok ? "" : s.id + ": B - A is not t^" + std::to_string(e)};
}

CheckResult replay_s2(const TranscriptStep& s) {
  const auto N = s.witness.at("N").get<std::uint64_t>();
  const auto variant = theta_variant_from_string(s.witness.at("variant").get<std::string>());
  const MultiPoly psi = MultiPoly::from_text(s.witness.at("minpoly").get<std::string>(), {"z"});
  const BigInt bN = BigInt(static_cast<unsigned long>(N));
  const auto expected_degree = variant == ThetaVariant::real_theta ? (N - 1) / 2 : N - 1;
  if (psi.total_degree() != static_cast<int>(expected_degree)) return fail(s.id, "minimal polynomial has the wrong degree");
  const BigInt c = psi.coefficient(Exponents{0});
  if (to_string(c) != s.witness.at("constant_term").get<std::string>()) return fail(s.id, "constant term mismatch");
  const bool ok = eisenstein_at(psi, bN) && abs(c) == bN;
  if (ok != s.pass) return fail(s.id, "recorded verdict disagrees");
  return {ok, ok ? "" : s.id + ": not Eisenstein at N with constant +-N"};
}

CheckResult replay_s3(const TranscriptStep& s) {
  const auto N = s.witness.at("N").get<std::uint64_t>();
  const auto q_bound = s.witness.at("q_bound").get<std::uint64_t>();
  const bool by_sign = s.witness.at("quotient_by_sign").get<bool>();
  const auto allowed = s.witness.at("allowed").get<std::vector<std::uint64_t>>();
  const std::vector<std::uint64_t> expected_allowed =
      by_sign ? std::vector<std::uint64_t>{1, N - 1} : std::vector<std::uint64_t>{1};
  if (allowed != expected_allowed) return fail(s.id, "allowed residue set is wrong");
  const auto& entries = s.witness.at("entries");
  std::size_t i = 0;
  bool ok = true;
  for (auto q : primes_below(q_bound)) {
    if (q == N) continue;
    if (i >= entries.size()) return fail(s.id, "missing entry for q = " + std::to_string(q));
    const auto& e = entries[i++];
    if (e.at(0).get<std::uint64_t>() != q) return fail(s.id, "entry out of order at q = " + std::to_string(q));
    const auto f = e.at(1).get<std::uint64_t>();
    const auto r = e.at(2).get<std::uint64_t>();
    if (f != mod_order(BigInt(static_cast<unsigned long>(q)), N, by_sign)) {
      return fail(s.id, "f is not the residual degree of q = " + std::to_string(q));
    }
    if (powmod(q % N, f, N) != r) return fail(s.id, "q^f mod N mismatch at q = " + std::to_string(q));
    if (std::find(allowed.begin(), allowed.end(), r) == allowed.end()) ok = false;
  }
  if (i != entries.size()) return fail(s.id, "extra entries");
  if (ok != s.pass) return fail(s.id, "recorded verdict disagrees");
  return {ok, ok ? "" : s.id + ": residue outside the allowed set"};
}

CheckResult replay_s4(const TranscriptStep& s) {
  const auto N = s.witness.at("N").get<std::uint64_t>();
  const auto n = s.witness.at("n").get<unsigned>();
  const auto rule = contradiction_rule_from_string(s.witness.at("rule").get<std::string>());
  const auto sets = contradiction_sets(N, n, rule);
  if (sets.residues != s.witness.at("residues").get<std::vector<std::uint64_t>>() ||
      sets.lhs != s.witness.at("lhs").get<std::vector<std::uint64_t>>() ||
      sets.rhs != s.witness.at("rhs").get<std::vector<std::uint64_t>>() ||
      sets.intersection != s.witness.at("intersection").get<std::vector<std::uint64_t>>()) {
    return fail(s.id, "residue sets do not match recomputation");
  }
  const bool ok = sets.intersection.empty();
  if (ok != s.pass) return fail(s.id, "recorded verdict disagrees");
  return {ok, ok ? "" : s.id + ": residue sets intersect"};
}

}  // namespace

HeightSearch height_search(const MultiPoly& f, std::uint64_t H, unsigned workers) {
  if (!f.is_homogeneous()) throw std::invalid_argument("height_search: form is not homogeneous");
  if (H < 1) throw std::invalid_argument("height_search: H must be >= 1");
  HeightSearch out;
  out.height_bound = H;
  const std::size_t arity = f.arity();
  if (arity == 0) return out;
  if (arity == 1) {
    out.tuples_searched = 1;
    const std::vector<BigInt> one{1};
    if (f.eval(one) == 0) out.roots.push_back(one);
    return out;
  }
  const auto h = static_cast<std::int64_t>(H);
  BigInt bound = 0;
  for (const auto& t : f.terms()) bound += abs(t.coeff);
  bound *= pow_big(BigInt(static_cast<unsigned long>(H)), static_cast<unsigned>(f.total_degree()));
  const bool fast = bound < (BigInt(1) << 125);
  const auto merge = [&](auto results) {
    for (auto& r : results) {
      out.tuples_searched += r.searched;
      for (const auto& root : r.roots) {
        std::vector<BigInt> pt;
        for (auto c : root) pt.emplace_back(static_cast<long>(c));
        if (f.eval(pt) != 0) throw std::logic_error("height_search: root failed exact re-evaluation");
        out.roots.push_back(std::move(pt));
      }
    }
  };
  if (fast) {
    merge(run_search<i128>(f, h, workers));
  } else {
    merge(run_search<BigInt>(f, h, workers));
  }
  return out;
}

bool ObstructionTranscript::passed() const {
  return !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.pass; });
}

std::optional<std::string> ObstructionTranscript::failed_step() const {
  for (const auto& s : steps) {
    if (!s.pass) return s.id;
  }
  return std::nullopt;
}

std::string to_string(ContradictionRule r) {
  switch (r) {
    case ContradictionRule::power_n: return "power_n";
    case ContradictionRule::squared_sign: return "squared_sign";
    case ContradictionRule::unit_difference: return "unit_difference";
  }
  return "?";
}

ContradictionRule contradiction_rule_from_string(const std::string& s) {
  if (s == "power_n") return ContradictionRule::power_n;
  if (s == "squared_sign") return ContradictionRule::squared_sign;
  if (s == "unit_difference") return ContradictionRule::unit_difference;
  throw std::invalid_argument("unknown contradiction rule: " + s);
}

ContradictionRule contradiction_rule_of(Variant v) {
  switch (v) {
    case Variant::T1:
    case Variant::G1: return ContradictionRule::power_n;
    case Variant::G2: return ContradictionRule::squared_sign;
    case Variant::G3: return ContradictionRule::unit_difference;
    case Variant::L: break;
  }
  throw std::invalid_argument("variant L has no global obstruction");
}

ContradictionSets contradiction_sets(std::uint64_t N, unsigned n, ContradictionRule rule) {
  if (N < 3) throw std::invalid_argument("contradiction_sets: N must be >= 3");
  ContradictionSets s;
  s.residues = rule == ContradictionRule::unit_difference ? std::vector<std::uint64_t>{1}
                                                          : std::vector<std::uint64_t>{1, N - 1};
  const unsigned e = rule == ContradictionRule::power_n ? n : (n == 0 ? 0 : n - 1);
  for (auto c : s.residues) s.lhs.push_back(powmod(c, e, N));
  for (auto a : s.residues) {
    for (auto b : s.residues) {
      const std::uint64_t d = (b + N - a) % N;
      s.rhs.push_back(rule == ContradictionRule::squared_sign ? mulmod(d, d, N) : d);
    }
  }
  s.lhs = sorted_unique(s.lhs);
  s.rhs = sorted_unique(s.rhs);
  std::set_intersection(s.lhs.begin(), s.lhs.end(), s.rhs.begin(), s.rhs.end(), std::back_inserter(s.intersection));
  return s;
}

std::vector<NormResidue> norm_residue_audit(std::uint64_t N, ThetaVariant variant, std::uint64_t q_bound) {
  if (!is_prime(N)) throw std::invalid_argument("norm_residue_audit: N must be prime");
  const bool by_sign = variant == ThetaVariant::real_theta;
  std::vector<NormResidue> out;
  for (auto q : primes_below(q_bound)) {
    if (q == N) continue;
    const auto f = mod_order(BigInt(static_cast<unsigned long>(q)), N, by_sign);
    out.push_back({q, f, powmod(q % N, f, N)});
  }
  return out;
}

ObstructionTranscript obstruction_transcript(const FormParams& params, const CyclotomicBasis& basis,
                                             std::uint64_t q_bound) {
  const ContradictionRule rule = contradiction_rule_of(params.variant);
  if (basis.N != params.N || basis.variant != theta_variant_of(params.variant)) {
    throw std::invalid_argument("obstruction_transcript: basis does not match params");
  }
  ObstructionTranscript t;
  t.notes = {
      "The argument also uses that the theta_1-adic valuations of x, theta y1, ..., theta^gamma y_gamma are "
      "distinct, so every y_i is theta_1-integral. That is field theory with no finite check; s2 records its "
      "computable input.",
      "s3 covers the primes below q_bound; for all other primes the same residue statement is the standard "
      "description of residual degrees in cyclotomic fields.",
  };
  auto push = [&](TranscriptStep s) {
    t.steps.push_back(std::move(s));
    return t.steps.back().pass;
  };
  if (!push(step_coprime(params))) return t;
  if (!push(step_telescoping(params))) return t;
  if (!push(step_ramification(basis))) return t;
  if (!push(step_norm_residues(params.N, basis.variant, q_bound))) return t;
  push(step_contradiction(params.N, params.n, rule));
  return t;
}

CheckResult replay_step(const TranscriptStep& step) {
  try {
    if (step.id == "s0") return replay_s0(step);
    if (step.id == "s1") return replay_s1(step);
    if (step.id == "s2") return replay_s2(step);
    if (step.id == "s3") return replay_s3(step);
    if (step.id == "s4") return replay_s4(step);
  } catch (const std::exception& e) {
    return fail(step.id, std::string("malformed witness: ") + e.what());
  }
  return {false, "unknown step id " + step.id};
}

nlohmann::json to_json(const TranscriptStep& s) {
  return {{"id", s.id}, {"statement", s.statement}, {"witness", s.witness}, {"pass", s.pass}};
}

TranscriptStep transcript_step_from_json(const nlohmann::json& j) {
  return {j.at("id").get<std::string>(), j.at("statement").get<std::string>(), j.at("witness"),
          j.at("pass").get<bool>()};
}

nlohmann::json to_json(const ObstructionTranscript& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  return {{"steps", steps}, {"notes", t.notes}, {"passed", t.passed()}};
}

ObstructionTranscript transcript_from_json(const nlohmann::json& j) {
  ObstructionTranscript t;
  for (const auto& s : j.at("steps")) t.steps.push_back(transcript_step_from_json(s));
  if (j.contains("notes")) t.notes = j.at("notes").get<std::vector<std::string>>();
  return t;
}

nlohmann::json to_json(const HeightSearch& h) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : h.roots) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : r) row.push_back(to_string(c));
    roots.push_back(row);
  }
  return {{"height_bound", h.height_bound}, {"tuples_searched", h.tuples_searched}, {"roots_found", roots}};
}

HeightSearch height_search_from_json(const nlohmann::json& j) {
  HeightSearch h;
  h.height_bound = j.at("height_bound").get<std::uint64_t>();
  h.tuples_searched = j.at("tuples_searched").get<std::uint64_t>();
  for (const auto& r : j.at("roots_found")) {
    std::vector<BigInt> pt;
    for (const auto& c : r) pt.push_back(parse_bigint(c.get<std::string>()));
    h.roots.push_back(std::move(pt));
  }
  return h;
}

}  // namespace hasse
