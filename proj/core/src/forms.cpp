#include "hasse/forms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hasse/modular.hpp"

namespace hasse {

namespace {

using nlohmann::json;

BigInt N_pow(std::uint64_t N, unsigned e) { return pow_big(BigInt(static_cast<unsigned long>(N)), e); }

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::size_t expected_alpha_count(Variant v, unsigned n) {
  switch (v) {
    case Variant::T1:
    case Variant::G1: return n - 1;
    case Variant::G2:
    case Variant::G3: return n >= 2 ? n - 2 : 0;
    case Variant::L: return n;
  }
  return 0;
}

bool uses_prime_conditions(Variant v) { return v == Variant::T1 || v == Variant::L; }

std::vector<BigInt> known_primes_for(unsigned n, std::uint64_t N) {
  std::vector<BigInt> out;
  for (auto q : primes_below(prime_bound(n))) out.emplace_back(static_cast<unsigned long>(q));
  const BigInt bN(static_cast<unsigned long>(N));
  if (std::find(out.begin(), out.end(), bN) == out.end() && is_prime(N)) out.push_back(bN);
  return out;
}

// Residues r mod N allowed by the N-condition of the variant.
std::vector<std::uint64_t> admissible_roots(Variant v, std::uint64_t N) {
  std::vector<std::uint64_t> roots;
  for (std::uint64_t r = 0; r < N; ++r) {
    const std::uint64_t prod = r * (r + 1) % N;
    const bool ok = uses_prime_conditions(v) ? (prod == 1 || prod == N - 1) : prod != 0;
    if (ok) roots.push_back(r);
  }
  return roots;
}

std::vector<BigInt> default_alphas(Variant v, unsigned n, const BigInt& product) {
  std::vector<BigInt> a(expected_alpha_count(v, n), BigInt(0));
  if ((v == Variant::T1 && n >= 2) || v == Variant::L) {
    // minimal positive alpha_1 coprime to the relevant gcd partner
    BigInt c = 1;
    while (gcd_big(product, c) != 1) ++c;
    a[0] = c;
  }
  return a;
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::T1: return "T1";
    case Variant::G1: return "G1";
    case Variant::G2: return "G2";
    case Variant::G3: return "G3";
    case Variant::L: return "L";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  if (s == "T1") return Variant::T1;
  if (s == "G1") return Variant::G1;
  if (s == "G2") return Variant::G2;
  if (s == "G3") return Variant::G3;
  if (s == "L") return Variant::L;
  throw std::invalid_argument("unknown variant: " + s);
}

ThetaVariant theta_variant_of(Variant v) {
  return v == Variant::G3 ? ThetaVariant::one_minus_zeta : ThetaVariant::real_theta;
}

unsigned n_for(Variant v, std::uint64_t N) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("N = " + std::to_string(N) + " not admissible for " + to_string(v) + ": " + why);
  };
  if (!is_prime(N)) fail("N is not prime");
  switch (v) {
    case Variant::T1:
    case Variant::G1:
    case Variant::L:
      if (N % 4 != 3 || N < 7) fail(std::to_string(N) + " is not 4n+3 with n >= 1 (N mod 4 = " + std::to_string(N % 4) + ")");
      return static_cast<unsigned>((N - 3) / 4);
    case Variant::G2:
      if (N % 4 != 1 || N < 13) fail("N must be 4n+1 with n >= 2 and N > 5");
      return static_cast<unsigned>((N - 1) / 4);
    case Variant::G3:
      if (N < 5) fail("N must be 2n+1 with n >= 2");
      return static_cast<unsigned>((N - 1) / 2);
  }
  fail("unknown variant");
  return 0;
}

std::uint64_t prime_bound(unsigned n) {
  const std::uint64_t m = n;
  return 4 * m * m * (2 * m - 1) * (2 * m - 1);
}

FormParams make_params(Variant v, std::uint64_t N, BigInt alpha0, std::vector<BigInt> alphas, unsigned beta,
                       unsigned gamma, std::vector<BigInt> betas) {
  FormParams p;
  p.variant = v;
  p.N = N;
  p.n = n_for(v, N);
  p.alpha0 = std::move(alpha0);
  const auto primes = known_primes_for(p.n, N);
  p.alpha0_product = FactoredInteger::from_known_primes(p.alpha0 * (p.alpha0 + 1), primes);
  p.alphas = std::move(alphas);
  p.betas = std::move(betas);
  p.beta = beta;
  p.gamma = gamma;
  return p;
}

bool ConditionReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ConditionEntry& e) { return e.pass; });
}

const ConditionEntry* ConditionReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

ConditionReport check_conditions(const FormParams& p) {
  ConditionReport r;
  const std::uint64_t N = p.N;
  const unsigned n = p.n;
  const BigInt product = p.alpha0 * (p.alpha0 + 1);

  {
    std::uint64_t expected = 0;
    std::string shape;
    bool ok = n >= 1;
    switch (p.variant) {
      case Variant::T1:
      case Variant::G1:
      case Variant::L: expected = 4ull * n + 3; shape = "4n+3"; break;
      case Variant::G2: expected = 4ull * n + 1; shape = "4n+1"; ok = ok && n >= 2 && N > 5; break;
      case Variant::G3: expected = 2ull * n + 1; shape = "2n+1"; ok = ok && n >= 2; break;
    }
    const bool prime = is_prime(N);
    r.entries.push_back({"shape", ok && prime && N == expected,
                         json{{"N", N}, {"n", n}, {"shape", shape}, {"expected_N", expected}, {"N_prime", prime}}});
  }
  {
    unsigned lo = 2, hi = 2;
    switch (p.variant) {
      case Variant::T1: lo = 2; hi = 2 * n; break;
      case Variant::G1: lo = hi = 2 * n; break;
      case Variant::G2:
      case Variant::G3: lo = hi = 2 * n - 1; break;
      case Variant::L: lo = hi = 2; break;
    }
    r.entries.push_back({"gamma", p.gamma >= lo && p.gamma <= hi,
                         json{{"gamma", p.gamma}, {"min", lo}, {"max", hi}}});
  }
  if (p.variant == Variant::T1) {
    r.entries.push_back({"beta", p.beta >= 1, json{{"beta", p.beta}, {"min", 1}}});
  }
  {
    const std::size_t want = expected_alpha_count(p.variant, n);
    bool ok = p.alphas.size() == want;
    json w{{"alphas", p.alphas.size()}, {"expected", want}};
    if (p.variant == Variant::L) {
      ok = ok && p.betas.size() == n;
      w["betas"] = p.betas.size();
    } else {
      ok = ok && p.betas.empty();
    }
    r.entries.push_back({"coefficient_count", ok, w});
  }
  {
    const std::uint64_t res = mod_u64(product, N);
    if (res == 1) r.sign = 1;
    if (res == N - 1) r.sign = -1;
    if (uses_prime_conditions(p.variant)) {
      // (1) every prime below 4n^2(2n-1)^2 other than N divides alpha0(alpha0+1)
      const std::uint64_t bound = prime_bound(n);
      json divisors = json::array();
      json missing = json::array();
      for (auto q : primes_below(bound)) {
        if (q == N) continue;
        const BigInt bq(static_cast<unsigned long>(q));
        if (product != 0 && !mpz_divisible_p(product.get_mpz_t(), bq.get_mpz_t())) {
          missing.push_back(q);
        } else {
          divisors.push_back({q, product == 0 ? 0u : valuation(product, bq)});
        }
      }
      r.entries.push_back({"divisibility", missing.empty(),
                           json{{"bound", bound}, {"product", to_string(product)}, {"prime_exponents", divisors},
                                {"missing", missing}}});
      // (2) alpha0(alpha0+1) == +-1 (mod N)
      r.entries.push_back({"residue", r.sign != 0, json{{"N", N}, {"residue", res}, {"sign", r.sign}}});
    } else {
      r.entries.push_back({"coprime_to_N", res != 0, json{{"N", N}, {"residue", res}}});
    }
  }
  if (p.variant == Variant::T1) {
    if (n >= 2) {
      const BigInt g = p.alphas.empty() ? product : gcd_big(product, p.alphas[0]);
      r.entries.push_back({"gcd_alpha1", g == 1, json{{"gcd", to_string(g)}}});
    } else {
      r.entries.push_back({"gcd_alpha1", true, json{{"skipped", "n = 1"}}});
    }
  }
  if (p.variant == Variant::L) {
    const BigInt g1 = p.alphas.empty() ? p.alpha0 : gcd_big(p.alpha0, p.alphas[0]);
    const BigInt g2 = p.betas.empty() ? p.alpha0 + 1 : gcd_big(p.alpha0 + 1, p.betas[0]);
    r.entries.push_back({"gcd_alpha1_beta1", g1 == 1 && g2 == 1,
                         json{{"gcd_alpha0_alpha1", to_string(g1)}, {"gcd_alpha0p1_beta1", to_string(g2)}}});
  }
  return r;
}

Variables form_variables(unsigned gamma) {
  Variables v{"t", "x"};
  for (unsigned i = 1; i <= gamma; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

std::pair<MultiPoly, MultiPoly> brackets(const FormParams& p) {
  const Variables tx{"t", "x"};
  const std::size_t want = expected_alpha_count(p.variant, p.n);
  if (p.alphas.size() != want) {
    throw std::invalid_argument("brackets: expected " + std::to_string(want) + " alphas, got " +
                                std::to_string(p.alphas.size()));
  }
  if (p.variant == Variant::L && p.betas.size() != p.n) {
    throw std::invalid_argument("brackets: L needs n betas");
  }
  if (p.n < 1 || ((p.variant == Variant::G2 || p.variant == Variant::G3) && p.n < 2)) {
    throw std::invalid_argument("brackets: n too small for variant");
  }
  const BigInt bN(static_cast<unsigned long>(p.N));
  auto mono = [&](std::uint32_t et, std::uint32_t ex, const BigInt& c) {
    return MultiPoly::monomial(tx, {et, ex}, c);
  };
  MultiPoly middle(tx);
  MultiPoly A(tx), B(tx);
  if (p.variant == Variant::L) {
    A = mono(p.n, 0, p.alpha0);
    B = mono(p.n, 0, p.alpha0 + 1);
    for (unsigned i = 1; i <= p.n; ++i) {
      A += mono(p.n - i, i, p.alphas[i - 1] * bN);
      B += mono(p.n - i, i, p.betas[i - 1] * bN);
    }
    return {A, B};
  }
  const unsigned m = (p.variant == Variant::G2 || p.variant == Variant::G3) ? p.n - 1 : p.n;
  const bool scale_by_N = p.variant == Variant::T1;
  for (unsigned i = 1; i < m; ++i) {
    middle += mono(m - i, i, scale_by_N ? p.alphas[i - 1] * bN : p.alphas[i - 1]);
  }
  const MultiPoly tail = mono(0, m, N_pow(p.N, p.beta));
  A = mono(m, 0, p.alpha0) + middle + tail;
  B = mono(m, 0, p.alpha0 + 1) + middle + tail;
  return {A, B};
}

MultiPoly bracket_identity(const FormParams& p) {
  auto [A, B] = brackets(p);
  return B - A;
}

BuiltForm build_form(const FormParams& p, const CyclotomicBasis& basis, std::uint64_t max_N) {
  if (basis.N != p.N || basis.variant != theta_variant_of(p.variant)) {
    throw std::invalid_argument("build_form: basis (N = " + std::to_string(basis.N) + ", " +
                                to_string(basis.variant) + ") does not match params (N = " +
                                std::to_string(p.N) + ", " + to_string(theta_variant_of(p.variant)) + ")");
  }
  if (p.N > max_N) {
    throw std::invalid_argument("build_form: N = " + std::to_string(p.N) + " exceeds the ceiling " +
                                std::to_string(max_N));
  }
  if (p.gamma < 1) throw std::invalid_argument("build_form: gamma must be >= 1");
  const Variables vars = form_variables(p.gamma);
  auto [A, B] = brackets(p);
  const bool square = p.variant == Variant::G2 || p.variant == Variant::G3;
  const MultiPoly pre = MultiPoly::monomial({"t", "x"}, {square ? 2u : 1u, 0u}, 1);
  BuiltForm out;
  out.prefactor = pre;
  out.A = A;
  out.B = B;
  out.form = (pre * A * B).with_variables(vars) - norm_form(basis, p.gamma).with_variables(vars);
  return out;
}

FormParams local_view(const FormParams& p) {
  if (p.variant == Variant::L) return p;
  if (p.variant != Variant::T1) throw std::invalid_argument("local_view: only T1 params have an L view");
  if (p.beta < 1) throw std::invalid_argument("local_view: beta must be >= 1");
  std::vector<BigInt> a = p.alphas;
  a.push_back(N_pow(p.N, p.beta - 1));
  FormParams l = p;
  l.variant = Variant::L;
  l.alphas = a;
  l.betas = a;
  l.gamma = 2;
  return l;
}

std::vector<FormParams> search_params(std::uint64_t N, Variant variant, std::size_t count, unsigned beta,
                                      unsigned gamma, std::uint64_t max_N) {
  const unsigned n = n_for(variant, N);
  if (N > max_N) {
    throw std::invalid_argument("search_params: N = " + std::to_string(N) + " exceeds the ceiling " +
                                std::to_string(max_N));
  }
  if (uses_prime_conditions(variant) && (N % 15 == 2 || N % 15 == 8)) {
    throw std::invalid_argument("search_params: no admissible residue class, N = " + std::to_string(N) +
                                " == " + std::to_string(N % 15) +
                                " (mod 15) so neither 5 nor -3 is a square mod N");
  }
  const auto roots = admissible_roots(variant, N);
  if (roots.empty()) {
    throw std::invalid_argument("search_params: alpha0(alpha0+1) == +-1 (mod " + std::to_string(N) +
                                ") has no solution");
  }
  switch (variant) {
    case Variant::T1:
      if (gamma == 0) gamma = 2;
      if (gamma < 2 || gamma > 2 * n) throw std::invalid_argument("search_params: T1 needs 2 <= gamma <= 2n");
      if (beta < 1) throw std::invalid_argument("search_params: T1 needs beta >= 1");
      break;
    case Variant::G1: gamma = 2 * n; break;
    case Variant::G2:
    case Variant::G3: gamma = 2 * n - 1; break;
    case Variant::L: gamma = 2; break;
  }

  std::vector<std::uint64_t> required;
  if (uses_prime_conditions(variant)) {
    for (auto q : primes_below(prime_bound(n))) {
      if (q != N) required.push_back(q);
    }
  }
  BigInt modulus(static_cast<unsigned long>(N));
  for (auto q : required) modulus *= static_cast<unsigned long>(q);

  // Residue classes of alpha0 modulo N * prod(required).
  std::vector<BigInt> classes;
  constexpr std::size_t kExhaustiveLimit = std::size_t{1} << 16;
  const bool exhaustive = required.size() < 16 && (roots.size() << required.size()) <= kExhaustiveLimit;
  for (auto root : roots) {
    const Congruence start{BigInt(static_cast<unsigned long>(root)), BigInt(static_cast<unsigned long>(N))};
    if (exhaustive) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << required.size()); ++mask) {
        Congruence acc = start;
        for (std::size_t i = 0; i < required.size(); ++i) {
          const BigInt q(static_cast<unsigned long>(required[i]));
          acc = crt_combine(acc, {(mask >> i) & 1 ? q - 1 : BigInt(0), q});
        }
        classes.push_back(acc.residue);
      }
    } else {
      // Greedy: per prime, keep whichever of alpha0 == 0 / -1 gives the
      // smaller combined residue; ties go to 0.
      Congruence acc = start;
      for (auto qi : required) {
        const BigInt q(static_cast<unsigned long>(qi));
        Congruence zero = crt_combine(acc, {0, q});
        Congruence minus = crt_combine(acc, {q - 1, q});
        acc = minus.residue < zero.residue ? minus : zero;
      }
      classes.push_back(acc.residue);
    }
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::vector<FormParams> out;
  for (BigInt lift = 0; out.size() < count; lift += modulus) {
    for (const auto& c : classes) {
      if (out.size() == count) break;
      const BigInt alpha0 = c + lift;
      if (alpha0 == 0) continue;
      const BigInt product = alpha0 * (alpha0 + 1);
      std::vector<BigInt> alphas = default_alphas(variant, n, variant == Variant::L ? alpha0 : product);
      std::vector<BigInt> betas;
      if (variant == Variant::L) {
        betas.assign(n, BigInt(0));
        BigInt c1 = 1;
        while (gcd_big(alpha0 + 1, c1) != 1) ++c1;
        betas[0] = c1;
      }
      FormParams params = make_params(variant, N, alpha0, std::move(alphas), beta, gamma, std::move(betas));
      if (!check_conditions(params).passed()) {
        throw std::logic_error("search_params: assembled alpha0 = " + to_string(alpha0) + " fails its conditions");
      }
      out.push_back(std::move(params));
    }
  }
  return out;
}

json to_json(const FormParams& p) {
  json factors = json::array();
  for (const auto& f : p.alpha0_product.factors()) {
    factors.push_back({{"p", to_string(f.prime)}, {"e", f.exponent}});
  }
  json alphas = json::array();
  for (const auto& a : p.alphas) alphas.push_back(to_string(a));
  json betas = json::array();
  for (const auto& b : p.betas) betas.push_back(to_string(b));
  return json{
      {"variant", to_string(p.variant)},
      {"n", p.n},
      {"N", p.N},
      {"alpha0",
       {{"value", to_string(p.alpha0)},
        {"product", to_string(p.alpha0_product.value())},
        {"factors", factors},
        {"cofactor", to_string(p.alpha0_product.cofactor())}}},
      {"alphas", alphas},
      {"betas", betas},
      {"beta", p.beta},
      {"gamma", p.gamma},
  };
}

FormParams params_from_json(const json& j) {
  try {
    FormParams p;
    p.variant = variant_from_string(j.at("variant").get<std::string>());
    p.n = j.at("n").get<unsigned>();
    p.N = j.at("N").get<std::uint64_t>();
    const json& a0 = j.at("alpha0");
    if (a0.is_string()) {
      // bare value: rebuild the known factors by trial division
      return make_params(p.variant, p.N, parse_bigint(a0.get<std::string>()), [&] {
        std::vector<BigInt> v;
        for (const auto& x : j.at("alphas")) v.push_back(parse_bigint(x.get<std::string>()));
        return v;
      }(), j.at("beta").get<unsigned>(), j.at("gamma").get<unsigned>(), [&] {
        std::vector<BigInt> v;
        if (j.contains("betas")) {
          for (const auto& x : j.at("betas")) v.push_back(parse_bigint(x.get<std::string>()));
        }
        return v;
      }());
    }
    p.alpha0 = parse_bigint(a0.at("value").get<std::string>());
    std::vector<PrimePower> factors;
    for (const auto& f : a0.at("factors")) {
      factors.push_back({parse_bigint(f.at("p").get<std::string>()), f.at("e").get<unsigned>()});
    }
    BigInt product = parse_bigint(a0.at("product").get<std::string>());
    if (product != p.alpha0 * (p.alpha0 + 1)) {
      throw std::invalid_argument("alpha0.product is not alpha0 * (alpha0 + 1)");
    }
    p.alpha0_product = FactoredInteger::from_parts(std::move(product), std::move(factors),
                                                   parse_bigint(a0.at("cofactor").get<std::string>()));
    for (const auto& x : j.at("alphas")) p.alphas.push_back(parse_bigint(x.get<std::string>()));
    if (j.contains("betas")) {
      for (const auto& x : j.at("betas")) p.betas.push_back(parse_bigint(x.get<std::string>()));
    }
    p.beta = j.at("beta").get<unsigned>();
    p.gamma = j.at("gamma").get<unsigned>();
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed params JSON: ") + e.what());
  }
}

}  // namespace hasse
