// Acceptance suite: one PASS/FAIL line per criterion.
//   hasse_acceptance        run all criteria
//   hasse_acceptance 3      run criterion 3 only (exit status reflects it)

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "app.hpp"
#include "hasse/forms.hpp"
#include "hasse/globalcheck.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/serialize.hpp"
#include "support.hpp"

using namespace hasse;
using namespace hasse::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CyclotomicBasis basis_of(const FormParams& p) { return minimal_polynomial(p.N, theta_variant_of(p.variant)); }

std::string str(const auto& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Certificates replay, satisfy v_f > 2 v_grad, and cover exactly `primes`.
void check_sweep(Verdict& v, const std::string& label, const MultiPoly& f, const LocalSweep& sweep,
                 const std::vector<std::uint64_t>& primes) {
  for (const auto& fail : sweep.failures) v.require(false, label + ": no certificate at p = " + str(fail.p) + " (" + fail.reason + ")");
  std::vector<std::uint64_t> covered;
  for (const auto& c : sweep.certificates) {
    covered.push_back(c.p);
    const CheckResult r = verify_certificate(f, c);
    v.require(r.ok, label + ": certificate at p = " + str(c.p) + " does not replay: " + r.reason);
    v.require(c.v_f > 2 * c.v_grad, label + ": Newton condition fails at p = " + str(c.p));
  }
  if (sweep.failures.empty()) v.require(covered == primes, label + ": certified primes differ from the requested set");
}

Verdict criterion_1() {
  Verdict v;
  const CyclotomicBasis b7 = minimal_polynomial(7, ThetaVariant::real_theta);
  v.require(b7.minpoly.to_text() == "+1 z^3 | -7 z^2 | +14 z^1 | -7", "N = 7 real: " + b7.minpoly.to_text());
  v.require(eisenstein_at(b7.minpoly, 7), "N = 7 real is not Eisenstein at 7");
  const CyclotomicBasis b5 = minimal_polynomial(5, ThetaVariant::one_minus_zeta);
  v.require(b5.minpoly.to_text() == "+1 z^4 | -5 z^3 | +10 z^2 | -10 z^1 | +5", "N = 5 omz: " + b5.minpoly.to_text());
  v.require(eisenstein_at(b5.minpoly, 5), "N = 5 omz is not Eisenstein at 5");
  return v;
}

Verdict criterion_2() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coord(-10, 10);
  for (std::uint64_t N : {7ul, 11ul, 19ul}) {
    const unsigned n = n_for(Variant::T1, N);
    const CyclotomicBasis basis = minimal_polynomial(N, ThetaVariant::real_theta);
    for (unsigned gamma = 1; gamma <= 2 * n; ++gamma) {
      const MultiPoly nf = norm_form(basis, gamma);
      for (int i = 0; i < 100; ++i) {
        std::vector<long> pt(gamma + 1);
        std::vector<BigInt> bpt;
        for (auto& x : pt) {
          x = coord(rng);
          bpt.emplace_back(x);
        }
        const Dec exact = to_dec(nf.eval(bpt));
        const Dec numeric = numeric_norm(N, ThetaVariant::real_theta, pt);
        const Dec scale = abs(exact) > 1 ? Dec(abs(exact)) : Dec(1);
        if (abs(exact - numeric) > Dec("1e-6") * scale) {
          v.require(false, "N = " + str(N) + ", gamma = " + str(gamma) + ": exact " + exact.str() + " vs numeric " +
                               numeric.str());
        }
      }
    }
  }
  return v;
}

app::CertifyInput params_input(const FormParams& p) { return {p, build_form(p, basis_of(p)).form}; }

Verdict criterion_3() {
  Verdict v;
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const CyclotomicBasis basis = basis_of(p);
  v.require(check_conditions(p).passed(), "check_conditions fails");
  const MultiPoly f = build_form(p, basis).form;

  const LocalSweep sweep = local_sweep(p, basis, {100, {}});
  auto primes = primes_below(101);
  v.require(sweep_primes(p, 100) == primes, "sweep primes are not the primes <= 100");
  check_sweep(v, "local", f, sweep, primes);

  const HeightSearch h = height_search(f, 25);
  v.require(h.roots.empty(), "height search found " + str(h.roots.size()) + " roots");
  std::cout << "  height search H = 25: " << h.tuples_searched << " primitive tuples, " << h.roots.size()
            << " roots\n";

  const ObstructionTranscript t = obstruction_transcript(p, basis, 1000);
  v.require(t.passed(), "transcript fails at " + t.failed_step().value_or("?"));
  for (const auto& s : t.steps) {
    const CheckResult r = replay_step(s);
    v.require(r.ok, "transcript step " + s.id + " does not replay: " + r.reason);
  }

  const app::CertifyResult bundle = app::certify(params_input(p), {100, 25, 1000, 1}, false);
  v.require(!bundle.failure, "certify fails at " + bundle.failure.value_or(""));
  const app::VerifyResult replay = app::verify_bundle(bundle.bundle);
  v.require(replay.ok, "bundle does not verify");
  return v;
}

Verdict criterion_4() {
  Verdict v;
  const auto found = search_params(11, Variant::T1, 1, 1, 4);
  v.require(found.size() == 1, "search_params found nothing");
  if (found.empty()) return v;
  const FormParams base = found.front();
  const BigInt prod = base.alpha0 * (base.alpha0 + 1);
  v.require(prime_bound(2) == 144, "prime bound for n = 2 is " + str(prime_bound(2)));
  for (auto q : primes_below(144)) {
    const bool divides = mod_u64(prod, q) == 0;
    if (q == 11) {
      v.require(!divides, "11 divides alpha0(alpha0+1)");
    } else {
      v.require(divides, str(q) + " does not divide alpha0(alpha0+1)");
    }
  }
  std::cout << "  alpha0 = " << to_string(base.alpha0) << "\n";
  const CyclotomicBasis basis = basis_of(base);
  v.require(basis.degree == 5, "degree of theta for N = 11 is " + str(basis.degree));
  const auto primes = sweep_primes(base, 150);
  for (unsigned gamma : {2u, 3u, 4u}) {
    FormParams p = base;
    p.gamma = gamma;
    v.require(check_conditions(p).passed(), "conditions fail at gamma = " + str(gamma));
    const MultiPoly f = build_form(p, basis).form;
    v.require(f.arity() == gamma + 2, "gamma = " + str(gamma) + " has " + str(f.arity()) + " variables");
    const LocalSweep sweep = local_sweep(p, basis, {150, {}});
    check_sweep(v, "gamma = " + str(gamma), f, sweep, primes);
    std::size_t special = 0;
    for (const auto& c : sweep.certificates) special += c.branch != CertBranch::enumeration;
    std::cout << "  gamma = " << gamma << ": " << sweep.certificates.size() << " certificates (" << special
              << " from the special-prime recipes), largest prime " << primes.back() << "\n";
    const ObstructionTranscript t = obstruction_transcript(p, basis, 1000);
    v.require(t.passed(), "transcript fails at gamma = " + str(gamma));
  }
  return v;
}

std::vector<CurveCount> curve_counts(unsigned workers) {
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const CyclotomicBasis basis = basis_of(p);
  std::vector<CurveCount> out;
  for (auto q : primes_below(201)) {
    if (q < 5 || 42 % q == 0) continue;
    out.push_back(hasse_weil_check(p, basis, q, workers));
  }
  return out;
}

Verdict criterion_5() {
  Verdict v;
  std::size_t smooth = 0;
  for (const auto& c : curve_counts(1)) {
    const auto diff = static_cast<long long>(c.count) - static_cast<long long>(c.p + 1);
    v.require(c.count >= 1, "no F_p point at p = " + str(c.p));
    v.require(c.genus == 1, "genus " + str(c.genus) + " at p = " + str(c.p));
    if (c.smooth) {
      ++smooth;
      v.require(diff * diff <= 4 * static_cast<long long>(c.p), "Hasse-Weil bound fails at p = " + str(c.p));
      v.require(c.within_bound, "within_bound disagrees at p = " + str(c.p));
    }
  }
  std::cout << "  " << smooth << " smooth reductions checked\n";
  return v;
}

Verdict criterion_6() {
  Verdict v;
  const auto check = [&](const FormParams& p, std::uint64_t count_bound) {
    const MultiPoly f = build_form(p, basis_of(p)).form;
    v.require(f.arity() == 2 * p.n + 2, "G1 form for N = " + str(p.N) + " has " + str(f.arity()) + " variables");
    for (auto q : primes_below(51)) {
      v.require(fp_points(f, q, {}, true).count == 1, "N = " + str(p.N) + ": no F_p zero at p = " + str(q));
      if (q <= count_bound) {
        v.require(count_affine_zeros(f, q) % q == 0, "N = " + str(p.N) + ": zero count not divisible by " + str(q));
      }
    }
  };
  // n = 1 (4 variables): full count for every p <= 50.  n = 2 (6 variables):
  // nontrivial zero for every p <= 50, counts up to p = 13 (p^6 evaluations).
  check(search_params(7, Variant::G1, 1, 0, 0).at(0), 50);
  check(search_params(11, Variant::G1, 1, 0, 0).at(0), 13);
  return v;
}

Verdict criterion_7() {
  Verdict v;
  {
    const app::Fixture& fx = app::fixture("selmer");
    const app::CertifyInput in = app::parse_certify_input(fx.input);
    const auto primes = primes_below(101);
    check_sweep(v, "selmer", in.form, local_sweep(in.form, primes), primes);
    v.require(height_search(in.form, 100).roots.empty(), "selmer: height search found a root");
    const RealPoint rp = real_point(in.form);
    v.require(rp.found && verify_real_point(in.form, rp, 1e-9).ok, "selmer: no real point with residual < 1e-9");
    std::cout << "  selmer: real point residual " << rp.residual << "\n";
  }
  for (const std::string name : {"swinnerton_dyer", "sd_alpha2"}) {
    const app::Fixture& fx = app::fixture(name);
    const app::CertifyInput in = app::parse_certify_input(fx.input);
    const FormParams& p = *in.params;
    const LocalSweep sweep = local_sweep(p, basis_of(p), {100, {}});
    check_sweep(v, name, in.form, sweep, sweep_primes(p, 100));
    v.require(height_search(in.form, 100).roots.empty(), name + ": height search found a root");
    std::cout << "  " << name << ": " << sweep.certificates.size() << " certificates, " << sweep.failures.size()
              << " failures\n";
  }
  return v;
}

bool brute_force_solvable(std::uint64_t N, unsigned n, ContradictionRule rule) {
  const std::vector<std::uint64_t> signs =
      rule == ContradictionRule::unit_difference ? std::vector<std::uint64_t>{1} : std::vector<std::uint64_t>{1, N - 1};
  const unsigned e = rule == ContradictionRule::power_n ? n : n - 1;
  for (auto a : signs) {
    for (auto b : signs) {
      for (auto c : signs) {
        std::uint64_t lhs = 1;
        for (unsigned k = 0; k < e; ++k) lhs = lhs * c % N;
        std::uint64_t rhs = (b + N - a) % N;
        if (rule == ContradictionRule::squared_sign) rhs = rhs * rhs % N;
        if (lhs == rhs) return true;
      }
    }
  }
  return false;
}

Verdict criterion_8() {
  Verdict v;
  for (std::uint64_t N : {7ul, 11ul, 19ul, 23ul, 43ul}) {
    for (auto rule : {ContradictionRule::power_n, ContradictionRule::squared_sign, ContradictionRule::unit_difference}) {
      for (unsigned n = 1; n <= 2 * N; ++n) {
        if (rule != ContradictionRule::power_n && n < 2) continue;
        const bool disjoint = contradiction_sets(N, n, rule).intersection.empty();
        v.require(disjoint == !brute_force_solvable(N, n, rule),
                  "N = " + str(N) + ", n = " + str(n) + ", rule " + to_string(rule) + " disagrees with brute force");
      }
    }
    for (auto [variant, allowed] : {std::pair{ThetaVariant::real_theta, std::vector<std::uint64_t>{1, N - 1}},
                                    std::pair{ThetaVariant::one_minus_zeta, std::vector<std::uint64_t>{1}}}) {
      for (const auto& r : norm_residue_audit(N, variant, 10000)) {
        if (std::find(allowed.begin(), allowed.end(), r.residue) == allowed.end()) {
          v.require(false, "N = " + str(N) + ": q = " + str(r.q) + " has residue " + str(r.residue));
        }
      }
    }
  }
  return v;
}

Verdict criterion_9() {
  Verdict v;
  const FormParams n1 = make_params(Variant::T1, 7, 2, {}, 1, 2);
  const FormParams n2 = search_params(11, Variant::T1, 1, 1, 4).at(0);
  std::string ref3, ref4, ref5;
  for (unsigned workers : {1u, 4u, 8u}) {
    const std::string b3 = app::certify(params_input(n1), {100, 25, 1000, workers}, false).bundle.dump();
    const std::string b4 = app::certify(params_input(n2), {150, 3, 1000, workers}, false).bundle.dump();
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& c : curve_counts(workers)) counts.push_back(to_json(c));
    const std::string b5 = counts.dump();
    if (workers == 1) {
      ref3 = b3;
      ref4 = b4;
      ref5 = b5;
      continue;
    }
    v.require(b3 == ref3, "criterion 3 bundle differs with " + str(workers) + " workers");
    v.require(b4 == ref4, "criterion 4 bundle differs with " + str(workers) + " workers");
    v.require(b5 == ref5, "criterion 5 counts differ with " + str(workers) + " workers");
  }
  return v;
}

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "cyclotomic exactness", 1, criterion_1},
      {2, "norm form agrees with the numeric product", 30, criterion_2},
      {3, "n = 1 instance end to end", 300, criterion_3},
      {4, "n = 2 family", 900, criterion_4},
      {5, "Hasse-Weil regime", 60, criterion_5},
      {6, "Chevalley-Warning sweep", 600, criterion_6},
      {7, "corpus", 600, criterion_7},
      {8, "obstruction soundness", 60, criterion_8},
      {9, "determinism across worker counts", 1800, criterion_9},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto start = Clock::now();
  Verdict v;
  try {
    v = c.run();
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(start);
  v.require(elapsed <= c.budget_seconds, "took " + str(elapsed) + " s, budget " + str(c.budget_seconds) + " s");
  for (const auto& p : v.problems) std::cout << "  " << p << "\n";
  std::cout << "criterion " << c.id << " (" << c.title << "): " << (v.pass ? "PASS" : "FAIL") << " ["
            << std::fixed << std::setprecision(2) << elapsed << " s]" << std::endl;
  std::cout.unsetf(std::ios::fixed);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  bool all_pass = true;
  if (argc > 1) {
    const int id = std::atoi(argv[1]);
    for (const auto& c : criteria()) {
      if (c.id == id) return run_one(c) ? 0 : 1;
    }
    std::cerr << "unknown criterion " << argv[1] << "\n";
    return 2;
  }
  for (const auto& c : criteria()) all_pass = run_one(c) && all_pass;
  return all_pass ? 0 : 1;
}
