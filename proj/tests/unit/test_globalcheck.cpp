#include <doctest.h>

#include <numeric>
#include <random>

#include "hasse/forms.hpp"
#include "hasse/globalcheck.hpp"
#include "hasse/modular.hpp"

using namespace hasse;

namespace {

CyclotomicBasis basis_of(const FormParams& p) { return minimal_polynomial(p.N, theta_variant_of(p.variant)); }

std::vector<BigInt> pt(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Primitive tuples with max-norm <= H and first nonzero coordinate positive.
std::uint64_t count_primitive(std::size_t arity, long H) {
  std::vector<long> c(arity, -H);
  std::uint64_t count = 0;
  while (true) {
    long g = 0;
    long first = 0;
    for (auto v : c) {
      g = std::gcd(g, v);
      if (first == 0) first = v;
    }
    if (g == 1 && first > 0) ++count;
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++c[i] <= H) break;
      c[i] = -H;
      if (i == 0) return count;
    }
  }
}

// Brute force over residues in R: is there (a, b, c) solving the rule's congruence?
bool brute_force_solvable(std::uint64_t N, unsigned n, ContradictionRule rule) {
  const std::vector<long> R =
      rule == ContradictionRule::unit_difference ? std::vector<long>{1} : std::vector<long>{1, -1};
  const auto md = [&](long v) { return static_cast<std::uint64_t>(((v % long(N)) + long(N)) % long(N)); };
  for (long a : R) {
    for (long b : R) {
      for (long c : R) {
        const unsigned e = rule == ContradictionRule::power_n ? n : n - 1;
        std::uint64_t lhs = 1;
        for (unsigned k = 0; k < e; ++k) lhs = lhs * md(c) % N;
        std::uint64_t rhs = md(b - a);
        if (rule == ContradictionRule::squared_sign) rhs = rhs * rhs % N;
        if (lhs == rhs) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("height search examples") {
  const MultiPoly f = MultiPoly::from_text("+1 x^3 | +1 y^3 | -2 z^3", {"x", "y", "z"});
  const HeightSearch h = height_search(f, 1);
  CHECK(h.tuples_searched == 13);
  REQUIRE(h.roots.size() == 2);
  CHECK(h.roots[0] == pt({1, -1, 0}));
  CHECK(h.roots[1] == pt({1, 1, 1}));
  for (std::size_t arity : {2u, 3u, 4u}) {
    Variables vars;
    for (std::size_t i = 0; i < arity; ++i) vars.push_back("v" + std::to_string(i));
    Term t{Exponents(arity, 0), BigInt(1)};
    t.exponents[0] = 2;
    const MultiPoly sq(vars, {t});
    for (long H : {1l, 2l, 3l, 4l}) CHECK(height_search(sq, H).tuples_searched == count_primitive(arity, H));
  }
  CHECK_THROWS_AS(height_search(MultiPoly::from_text("+1 x^2 | +1 y^1", {"x", "y"}), 2), std::invalid_argument);
}

TEST_CASE("height search finds planted roots") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> c(-3, 3);
  const Variables vars{"t", "x", "y1", "y2"};
  for (int i = 0; i < 10; ++i) {
    // linear form a.v vanishing at a random primitive point r, times a cubic
    std::vector<long> r{c(rng), c(rng), c(rng), 1 + (i % 3)};
    const long a0 = c(rng), a1 = c(rng), a2 = c(rng);
    const long a3 = -(a0 * r[0] + a1 * r[1] + a2 * r[2]);
    if (a3 % r[3] != 0) continue;
    const MultiPoly L = MultiPoly::from_text(
        (a0 >= 0 ? "+" : "") + std::to_string(a0) + " t^1 | " + (a1 >= 0 ? "+" : "") + std::to_string(a1) +
            " x^1 | " + (a2 >= 0 ? "+" : "") + std::to_string(a2) + " y1^1 | " + (a3 / r[3] >= 0 ? "+" : "") +
            std::to_string(a3 / r[3]) + " y2^1",
        vars);
    const MultiPoly cubic = MultiPoly::from_text("+1 t^3 | +2 x^3 | +3 y1^3 | +5 y2^3 | +1 t^1 x^1 y1^1", vars);
    const MultiPoly f = L * cubic;
    if (f.is_zero()) continue;
    // normalize r to a primitive tuple with positive leading entry
    long g = 0;
    for (auto v : r) g = std::gcd(g, v);
    for (auto& v : r) v /= g;
    for (auto v : r) {
      if (v != 0) {
        if (v < 0) {
          for (auto& w : r) w = -w;
        }
        break;
      }
    }
    const HeightSearch h = height_search(f, 4, 1 + i % 3);
    const std::vector<BigInt> want(r.begin(), r.end());
    CHECK(std::find(h.roots.begin(), h.roots.end(), want) != h.roots.end());
    for (const auto& root : h.roots) CHECK(f.eval(root) == 0);
  }
}

TEST_CASE("height search is independent of the worker count") {
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const MultiPoly f = build_form(p, basis_of(p)).form;
  const HeightSearch h1 = height_search(f, 12, 1);
  CHECK(h1.roots.empty());
  CHECK(height_search(f, 12, 3) == h1);
  CHECK(height_search(f, 12, 8) == h1);
  const MultiPoly planted = MultiPoly::from_text("+1 x^3 | +1 y^3 | -2 z^3", {"x", "y", "z"});
  CHECK(height_search(planted, 20, 1) == height_search(planted, 20, 5));
}

TEST_CASE("height search falls back to big integers for huge coefficients") {
  const Variables vars{"x", "y", "z"};
  const MultiPoly f = MultiPoly::from_text(
      "+340282366920938463463374607431768211456 x^3 | +340282366920938463463374607431768211456 y^3 | "
      "-680564733841876926926749214863536422912 z^3",
      vars);
  const HeightSearch h = height_search(f, 2);
  CHECK(h.roots.size() == 2);
  CHECK(h.tuples_searched == count_primitive(3, 2));
}

TEST_CASE("no small roots on the n = 1 instance and the Selmer cubic") {
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const HeightSearch h = height_search(build_form(p, basis_of(p)).form, 25);
  CHECK(h.roots.empty());
  CHECK(h.tuples_searched == count_primitive(4, 25));
  CHECK(height_search(MultiPoly::from_text("+3 x^3 | +4 y^3 | +5 z^3", {"x", "y", "z"}), 60).roots.empty());
}

TEST_CASE("contradiction sets") {
  const ContradictionSets s = contradiction_sets(7, 1, ContradictionRule::power_n);
  CHECK(s.lhs == std::vector<std::uint64_t>{1, 6});
  CHECK(s.rhs == std::vector<std::uint64_t>{0, 2, 5});
  CHECK(s.intersection.empty());
  // N = 5 is excluded for the squared rule: 4 == -1 (mod 5)
  CHECK_FALSE(contradiction_sets(5, 2, ContradictionRule::squared_sign).intersection.empty());
  CHECK(contradiction_sets(13, 3, ContradictionRule::squared_sign).intersection.empty());
  CHECK(contradiction_sets(7, 3, ContradictionRule::unit_difference).intersection.empty());
  // power_n fails when 2 == +-1, i.e. N = 3
  CHECK_FALSE(contradiction_sets(3, 1, ContradictionRule::power_n).intersection.empty());
}

TEST_CASE("s4 agrees with brute force") {
  for (std::uint64_t N : {5ul, 7ul, 11ul, 13ul, 19ul, 23ul, 43ul}) {
    for (auto rule : {ContradictionRule::power_n, ContradictionRule::squared_sign, ContradictionRule::unit_difference}) {
      for (unsigned n = 2; n <= 12; ++n) {
        CHECK(contradiction_sets(N, n, rule).intersection.empty() == !brute_force_solvable(N, n, rule));
      }
    }
  }
}

TEST_CASE("norm residue audit") {
  for (const auto& r : norm_residue_audit(7, ThetaVariant::real_theta, 100)) CHECK((r.residue == 1 || r.residue == 6));
  const auto a7 = norm_residue_audit(7, ThetaVariant::real_theta, 10);
  CHECK(a7 == std::vector<NormResidue>{{2, 3, 1}, {3, 3, 6}, {5, 3, 6}});
  const auto a5 = norm_residue_audit(5, ThetaVariant::one_minus_zeta, 3);
  CHECK(a5 == std::vector<NormResidue>{{2, 4, 1}});
  for (std::uint64_t N : {7ul, 11ul, 19ul, 23ul, 43ul}) {
    for (const auto& r : norm_residue_audit(N, ThetaVariant::real_theta, 10000)) {
      CHECK((r.residue == 1 || r.residue == N - 1));
    }
    for (const auto& r : norm_residue_audit(N, ThetaVariant::one_minus_zeta, 10000)) CHECK(r.residue == 1);
  }
}

TEST_CASE("obstruction transcript for the n = 1 instance") {
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const ObstructionTranscript t = obstruction_transcript(p, basis_of(p), 1000);
  CHECK(t.passed());
  REQUIRE(t.steps.size() == 5);
  CHECK(t.steps[1].witness["A"] == "+2 t^1 | +7 x^1");
  CHECK(t.steps[2].witness["constant_term"] == "-7");
  const auto& s3 = t.steps[3].witness["entries"];
  CHECK(s3[0] == nlohmann::json::array({2, 3, 1}));
  CHECK(t.steps[4].witness["lhs"] == nlohmann::json::array({1, 6}));
  CHECK(t.steps[4].witness["rhs"] == nlohmann::json::array({0, 2, 5}));
  CHECK_FALSE(t.notes.empty());
  for (const auto& s : t.steps) CHECK(replay_step(s).ok);

  const ObstructionTranscript back = transcript_from_json(to_json(t));
  for (const auto& s : back.steps) CHECK(replay_step(s).ok);
}

TEST_CASE("tampered transcript steps fail replay") {
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const ObstructionTranscript t = obstruction_transcript(p, basis_of(p), 200);
  TranscriptStep s1 = t.steps[1];
  s1.witness["B"] = "+3 t^1 | +8 x^1";
  CHECK_FALSE(replay_step(s1).ok);
  TranscriptStep s2 = t.steps[2];
  s2.witness["minpoly"] = "+1 z^3 | -7 z^2 | +14 z^1 | -49";
  CHECK_FALSE(replay_step(s2).ok);
  TranscriptStep s3 = t.steps[3];
  s3.witness["entries"][0][2] = 2;
  CHECK_FALSE(replay_step(s3).ok);
  s3 = t.steps[3];
  s3.witness["entries"].erase(1);
  CHECK_FALSE(replay_step(s3).ok);
  TranscriptStep s4 = t.steps[4];
  s4.witness["rhs"] = nlohmann::json::array({0, 2});
  CHECK_FALSE(replay_step(s4).ok);
  s4 = t.steps[4];
  s4.pass = false;
  CHECK_FALSE(replay_step(s4).ok);
  TranscriptStep junk = t.steps[0];
  junk.witness = nlohmann::json::object();
  CHECK_FALSE(replay_step(junk).ok);
}

TEST_CASE("failing hypotheses halt the transcript") {
  const FormParams bad = make_params(Variant::T1, 7, 6, {}, 1, 2);  // 6 * 7 == 0 (mod 7)
  const ObstructionTranscript t = obstruction_transcript(bad, basis_of(bad), 100);
  CHECK_FALSE(t.passed());
  CHECK(t.steps.size() == 1);
  CHECK(t.failed_step() == std::optional<std::string>("s0"));
  const FormParams l = make_params(Variant::L, 7, 2, {1}, 1, 2, {1});
  CHECK_THROWS_AS(obstruction_transcript(l, basis_of(l), 100), std::invalid_argument);
  const FormParams t1 = make_params(Variant::T1, 7, 2, {}, 1, 2);
  CHECK_THROWS_AS(obstruction_transcript(t1, minimal_polynomial(11, ThetaVariant::real_theta), 100),
                  std::invalid_argument);
}

TEST_CASE("transcripts pass for search_params output of every variant") {
  for (std::uint64_t N : {7ul, 11ul, 19ul}) {
    const auto p = search_params(N, Variant::T1, 1, 1, 2).at(0);
    CHECK(obstruction_transcript(p, basis_of(p), 500).passed());
  }
  for (std::uint64_t N : {7ul, 11ul, 19ul, 23ul, 31ul, 43ul}) {
    const auto p = search_params(N, Variant::G1, 2, 0, 0).at(1);
    CHECK(obstruction_transcript(p, basis_of(p), 500).passed());
  }
  for (std::uint64_t N : {13ul, 17ul, 29ul, 37ul, 41ul}) {
    const auto p = search_params(N, Variant::G2, 1, 0, 0).at(0);
    CHECK(obstruction_transcript(p, basis_of(p), 500).passed());
  }
  for (std::uint64_t N : {5ul, 7ul, 11ul, 13ul, 17ul, 19ul}) {
    const auto p = search_params(N, Variant::G3, 1, 0, 0).at(0);
    CHECK(obstruction_transcript(p, basis_of(p), 500).passed());
  }
}
