#include "hasse/localsolve.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "hasse/modpoly.hpp"
#include "hasse/parallel.hpp"

namespace hasse {

namespace {

constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

unsigned valuation_or_inf(const BigInt& v, const BigInt& p) {
  return v == 0 ? kInfiniteValuation : valuation(v, p);
}

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

void require_homogeneous(const MultiPoly& f, const char* who) {
  if (!f.is_homogeneous()) throw std::invalid_argument(std::string(who) + ": form is not homogeneous");
}

// One unit of projective enumeration work: coordinate `position` is 1, the
// ones before it 0; if `second` is set, coordinate position+1 takes that
// value and the coordinates after it (but before the last) run through an
// odometer.  The last coordinate is the Horner line.
struct ProjectiveTask {
  std::size_t position = 0;
  std::optional<std::uint64_t> second;
};

std::vector<ProjectiveTask> projective_tasks(std::size_t arity, std::uint64_t p) {
  std::vector<ProjectiveTask> tasks;
  for (std::size_t i = 0; i < arity; ++i) {
    const bool has_middle = i + 2 < arity;
    if (has_middle) {
      for (std::uint64_t v = 0; v < p; ++v) tasks.push_back({i, v});
    } else {
      tasks.push_back({i, std::nullopt});
    }
  }
  return tasks;
}

// Calls on_zero(point) for each projective zero in the task, in order.
// on_zero returns true to stop early; the function returns true if stopped.
template <class OnZero>
bool visit_projective_task(const ModPoly& f, const ProjectiveTask& task, OnZero&& on_zero) {
  const std::size_t n = f.arity();
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> point(n, 0);
  if (task.position + 1 == n) {
    point[n - 1] = 1;
    if (f.eval(point) == 0) return on_zero(std::span<const std::uint64_t>(point));
    return false;
  }
  std::vector<std::uint64_t> prefix(n - 1, 0);
  prefix[task.position] = 1;
  std::size_t odo_begin = task.position + 1;
  if (task.second) {
    prefix[task.position + 1] = *task.second;
    odo_begin = task.position + 2;
  }
  std::vector<std::uint64_t> line;
  while (true) {
    f.eval_line(prefix, line);
    for (std::uint64_t v = 0; v < p; ++v) {
      if (line[v] != 0) continue;
      std::copy(prefix.begin(), prefix.end(), point.begin());
      point[n - 1] = v;
      if (on_zero(std::span<const std::uint64_t>(point))) return true;
    }
    // odometer over prefix[odo_begin .. n-2]
    bool advanced = false;
    for (std::size_t k = n - 1; k > odo_begin;) {
      --k;
      if (++prefix[k] < p) {
        advanced = true;
        break;
      }
      prefix[k] = 0;
    }
    if (!advanced) return false;
  }
}

std::vector<ModPoly> gradient_mod(const MultiPoly& f, std::uint64_t p) {
  std::vector<ModPoly> g;
  for (std::size_t i = 0; i < f.arity(); ++i) g.emplace_back(f.derivative(i), p);
  return g;
}

bool gradient_vanishes(const std::vector<ModPoly>& grad, std::span<const std::uint64_t> pt) {
  return std::all_of(grad.begin(), grad.end(), [&](const ModPoly& g) { return g.eval(pt) == 0; });
}

std::vector<BigInt> to_big(std::span<const std::uint64_t> pt) {
  std::vector<BigInt> out;
  out.reserve(pt.size());
  for (auto v : pt) out.push_back(big(v));
  return out;
}

LocalCertificate make_certificate(const MultiPoly& f, std::vector<BigInt> point, std::uint64_t p, unsigned k,
                                  CertBranch branch) {
  const BigInt pk = pow_big(big(p), k);
  for (auto& c : point) c = mod_floor(c, pk);
  LocalCertificate cert;
  cert.p = p;
  cert.k = k;
  const Valuations v = measure_at_precision(f, point, p, k);
  cert.point = std::move(point);
  cert.v_f = v.v_f;
  cert.v_grad = v.v_grad;
  cert.branch = branch;
  return cert;
}

// Exact Newton test at an integer point.  Returns the certificate precision
// 2*v_grad + 1 when v_f > 2*v_grad.
std::optional<unsigned> newton_precision(const MultiPoly& f, const std::vector<MultiPoly>& grad,
                                         std::span<const BigInt> point, const BigInt& p) {
  unsigned vg = kInfiniteValuation;
  for (const auto& g : grad) vg = std::min(vg, valuation_or_inf(g.eval(point), p));
  if (vg == kInfiniteValuation) return std::nullopt;
  const unsigned vf = valuation_or_inf(f.eval(point), p);
  if (vf != kInfiniteValuation && vf <= 2 * vg) return std::nullopt;
  return 2 * vg + 1;
}

}  // namespace

std::string to_string(CertBranch b) {
  switch (b) {
    case CertBranch::enumeration: return "enumeration";
    case CertBranch::special_alpha0: return "special_alpha0";
    case CertBranch::special_alpha0_plus_1: return "special_alpha0_plus_1";
    case CertBranch::special_N: return "special_N";
  }
  return "?";
}

CertBranch cert_branch_from_string(const std::string& s) {
  if (s == "enumeration") return CertBranch::enumeration;
  if (s == "special_alpha0") return CertBranch::special_alpha0;
  if (s == "special_alpha0_plus_1") return CertBranch::special_alpha0_plus_1;
  if (s == "special_N") return CertBranch::special_N;
  throw std::invalid_argument("unknown certificate branch: " + s);
}

Valuations measure_at_precision(const MultiPoly& f, std::span<const BigInt> point, std::uint64_t p, unsigned k) {
  if (k == 0) throw std::invalid_argument("precision must be >= 1");
  const BigInt bp = big(p);
  const BigInt pk = pow_big(bp, k);
  auto capped = [&](const BigInt& residue) { return residue == 0 ? k : std::min(k, valuation(residue, bp)); };
  Valuations v;
  v.v_f = capped(f.eval_mod(point, pk));
  v.v_grad = k;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    v.v_grad = std::min(v.v_grad, capped(f.derivative(i).eval_mod(point, pk)));
  }
  return v;
}

CheckResult verify_certificate(const MultiPoly& f, const LocalCertificate& c) {
  auto fail = [&](std::string why) { return CheckResult{false, "p=" + std::to_string(c.p) + ": " + why}; };
  if (!is_prime(c.p)) return fail("modulus is not prime");
  if (c.k == 0) return fail("precision k must be >= 1");
  if (c.point.size() != f.arity()) return fail("point arity does not match the form");
  const BigInt bp = big(c.p);
  const BigInt pk = pow_big(bp, c.k);
  std::optional<std::size_t> first_unit;
  for (std::size_t i = 0; i < c.point.size(); ++i) {
    if (c.point[i] < 0 || c.point[i] >= pk) return fail("coordinate outside [0, p^k)");
    if (!first_unit && !mpz_divisible_p(c.point[i].get_mpz_t(), bp.get_mpz_t())) first_unit = i;
  }
  if (!first_unit) return fail("point is zero mod p");
  if (c.point[*first_unit] != 1) return fail("first unit coordinate is not normalized to 1");
  const Valuations v = measure_at_precision(f, c.point, c.p, c.k);
  if (v.v_f != c.v_f) return fail("stored v_f " + std::to_string(c.v_f) + " != recomputed " + std::to_string(v.v_f));
  if (v.v_grad != c.v_grad) {
    return fail("stored v_grad " + std::to_string(c.v_grad) + " != recomputed " + std::to_string(v.v_grad));
  }
  if (!(v.v_f > 2 * v.v_grad)) return fail("Newton condition v_f > 2 v_grad fails");
  return {true, ""};
}

FpCount fp_points(const MultiPoly& f_in, std::uint64_t p, const std::vector<std::pair<std::string, BigInt>>& fix,
                  bool existence_only, unsigned workers) {
  const MultiPoly f = fix.empty() ? f_in : f_in.specialize(fix);
  require_homogeneous(f, "fp_points");
  if (!is_prime(p)) throw std::invalid_argument("fp_points: modulus is not prime");
  FpCount out;
  if (f.arity() == 0) return out;
  const ModPoly F(f, p);
  const auto tasks = projective_tasks(f.arity(), p);
  std::vector<FpCount> per_task(tasks.size());
  auto run = [&](std::size_t i) {
    FpCount& r = per_task[i];
    visit_projective_task(F, tasks[i], [&](std::span<const std::uint64_t> pt) {
      if (!r.first) r.first = FpPoint{{pt.begin(), pt.end()}};
      ++r.count;
      return existence_only;
    });
    return r.count > 0;
  };
  if (existence_only) {
    const std::size_t hit = parallel_find_first(tasks.size(), workers, run);
    if (hit < tasks.size()) out = per_task[hit];
    return out;
  }
  parallel_for(tasks.size(), workers, [&](std::size_t i) { run(i); });
  for (auto& r : per_task) {
    if (!out.first && r.first) out.first = r.first;
    out.count += r.count;
  }
  return out;
}

std::uint64_t count_affine_zeros(const MultiPoly& f, std::uint64_t p, unsigned workers) {
  if (!is_prime(p)) throw std::invalid_argument("count_affine_zeros: modulus is not prime");
  const std::size_t n = f.arity();
  if (n == 0) return f.is_zero() ? 1 : 0;
  const ModPoly F(f, p);
  if (n == 1) {
    std::vector<std::uint64_t> line;
    F.eval_line({}, line);
    return static_cast<std::uint64_t>(std::count(line.begin(), line.end(), 0u));
  }
  std::vector<std::uint64_t> per_task(p, 0);
  parallel_for(p, workers, [&](std::size_t first) {
    std::vector<std::uint64_t> prefix(n - 1, 0);
    prefix[0] = first;
    std::vector<std::uint64_t> line;
    while (true) {
      F.eval_line(prefix, line);
      per_task[first] += static_cast<std::uint64_t>(std::count(line.begin(), line.end(), 0u));
      std::size_t k = n - 1;
      bool done = true;
      while (k > 1) {
        --k;
        if (++prefix[k] < p) {
          done = false;
          break;
        }
        prefix[k] = 0;
      }
      if (done) break;
    }
  });
  std::uint64_t total = 0;
  for (auto c : per_task) total += c;
  return total;
}

LocalCertificate find_liftable_point(const MultiPoly& f, std::uint64_t p, const LiftOptions& opt) {
  require_homogeneous(f, "find_liftable_point");
  if (!is_prime(p)) throw std::invalid_argument("find_liftable_point: modulus is not prime");
  if (f.arity() == 0) throw NotFoundError(p, opt.k_max, "form has no variables");
  if (f.is_zero()) {
    std::vector<BigInt> pt(f.arity(), 0);
    pt[0] = 1;
    throw NotFoundError(p, opt.k_max, "zero form has vanishing gradient everywhere");
  }
  const ModPoly F(f, p);
  const auto grad = gradient_mod(f, p);
  const auto tasks = projective_tasks(f.arity(), p);

  struct TaskResult {
    std::optional<std::vector<std::uint64_t>> smooth;
    std::vector<std::vector<std::uint64_t>> singular;
  };
  std::vector<TaskResult> results(tasks.size());
  const std::size_t hit = parallel_find_first(tasks.size(), opt.workers, [&](std::size_t i) {
    TaskResult& r = results[i];
    visit_projective_task(F, tasks[i], [&](std::span<const std::uint64_t> pt) {
      if (!gradient_vanishes(grad, pt)) {
        r.smooth = std::vector<std::uint64_t>(pt.begin(), pt.end());
        return true;
      }
      if (r.singular.size() < opt.max_base_points) r.singular.emplace_back(pt.begin(), pt.end());
      return false;
    });
    return r.smooth.has_value();
  });
  if (hit < tasks.size()) {
    return make_certificate(f, to_big(*results[hit].smooth), p, 1, CertBranch::enumeration);
  }

  std::vector<std::vector<std::uint64_t>> bases;
  for (auto& r : results) {
    for (auto& s : r.singular) {
      if (bases.size() < opt.max_base_points) bases.push_back(std::move(s));
    }
  }
  if (bases.empty()) throw NotFoundError(p, opt.k_max, "no F_p point");

  // Hensel lifting of singular base points.
  std::vector<MultiPoly> grad_exact;
  for (std::size_t i = 0; i < f.arity(); ++i) grad_exact.push_back(f.derivative(i));
  const BigInt bp = big(p);
  const std::size_t n = f.arity();
  bool truncated = false;
  for (const auto& base : bases) {
    std::size_t pinned = 0;
    while (base[pinned] == 0) ++pinned;
    std::vector<std::vector<BigInt>> frontier{to_big(base)};
    BigInt pj = bp;
    for (unsigned j = 1; j <= opt.k_max && !frontier.empty(); ++j) {
      std::vector<std::vector<BigInt>> next;
      const BigInt pj1 = pj * bp;
      for (const auto& b : frontier) {
        if (auto k = newton_precision(f, grad_exact, b, bp); k && *k <= opt.k_max) {
          return make_certificate(f, b, p, *k, CertBranch::enumeration);
        }
        if (j == opt.k_max) continue;
        // every lift b + p^j * delta with the pinned coordinate kept at 1
        std::vector<std::uint64_t> delta(n, 0);
        while (true) {
          std::vector<BigInt> c = b;
          for (std::size_t i = 0; i < n; ++i) {
            if (i != pinned && delta[i] != 0) c[i] += pj * big(delta[i]);
          }
          if (f.eval_mod(c, pj1) == 0) {
            if (next.size() < opt.max_frontier) {
              next.push_back(std::move(c));
            } else {
              truncated = true;
            }
          }
          std::size_t i = n;
          bool done = true;
          while (i-- > 0) {
            if (i == pinned) continue;
            if (++delta[i] < p) {
              done = false;
              break;
            }
            delta[i] = 0;
          }
          if (done) break;
        }
      }
      frontier = std::move(next);
      pj = pj1;
    }
  }
  throw NotFoundError(p, opt.k_max,
                      std::to_string(bases.size()) + " singular F_p point(s) did not lift" +
                          (truncated ? " (frontier truncated)" : ""));
}

LocalCertificate special_prime_certificate(const FormParams& params, const MultiPoly& form, std::uint64_t p) {
  if (form.arity() < 2) throw RecipeInapplicable("form needs variables t, x");
  const BigInt bp = big(p);
  CertBranch branch;
  std::vector<std::uint64_t> candidates;
  if (p == params.N) {
    branch = CertBranch::special_N;
    candidates = {1, p - 1};
  } else if (params.alpha0 != 0 && mpz_divisible_p(params.alpha0.get_mpz_t(), bp.get_mpz_t())) {
    branch = CertBranch::special_alpha0;
    candidates = {0};
  } else if (mpz_divisible_p(BigInt(params.alpha0 + 1).get_mpz_t(), bp.get_mpz_t())) {
    branch = CertBranch::special_alpha0_plus_1;
    candidates = {0};
  } else {
    throw RecipeInapplicable("p = " + std::to_string(p) + " divides neither alpha0, alpha0 + 1 nor equals N");
  }
  for (auto x0 : candidates) {
    std::vector<BigInt> point(form.arity(), 0);
    point[0] = 1;
    point[1] = big(x0);
    const Valuations v = measure_at_precision(form, point, p, 2);
    if (v.v_grad == 0 && v.v_f > 0) return make_certificate(form, std::move(point), p, 2, branch);
  }
  throw RecipeInapplicable("p = " + std::to_string(p) + ": recipe base point is not a simple root mod p");
}

LocalCertificate special_prime_certificate(const FormParams& params, const CyclotomicBasis& basis, std::uint64_t p) {
  return special_prime_certificate(params, build_form(params, basis, std::max(kDefaultMaxN, params.N)).form, p);
}

CurveCount hasse_weil_check(const FormParams& params, const CyclotomicBasis& basis, std::uint64_t p,
                            unsigned workers) {
  if (!is_prime(p)) throw std::invalid_argument("hasse_weil_check: p is not prime");
  if (p > kMaxCurvePrime) throw std::invalid_argument("hasse_weil_check: p beyond enumeration budget");
  const BigInt bp = big(p);
  const BigInt bad = params.alpha0 * (params.alpha0 + 1) * big(params.N);
  if (mpz_divisible_p(bad.get_mpz_t(), bp.get_mpz_t())) {
    throw std::invalid_argument("hasse_weil_check: p = " + std::to_string(p) + " divides alpha0(alpha0+1)N");
  }
  const MultiPoly f = build_form(params, basis, std::max(kDefaultMaxN, params.N)).form;
  std::vector<std::pair<std::string, BigInt>> fix{{"x", 0}};
  for (unsigned i = 3; i <= params.gamma; ++i) fix.emplace_back("y" + std::to_string(i), 0);
  const MultiPoly curve = f.specialize(fix);

  const ModPoly F(curve, p);
  const auto grad = gradient_mod(curve, p);
  const auto tasks = projective_tasks(curve.arity(), p);
  std::vector<std::pair<std::uint64_t, bool>> per_task(tasks.size(), {0, false});
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    auto& [count, singular] = per_task[i];
    visit_projective_task(F, tasks[i], [&](std::span<const std::uint64_t> pt) {
      ++count;
      if (gradient_vanishes(grad, pt)) singular = true;
      return false;
    });
  });
  CurveCount out;
  out.p = p;
  out.smooth = true;
  for (const auto& [c, s] : per_task) {
    out.count += c;
    if (s) out.smooth = false;
  }
  const auto d = static_cast<unsigned>(curve.total_degree());
  out.genus = d >= 2 ? (d - 1) * (d - 2) / 2 : 0;
  const BigInt diff = BigInt(static_cast<unsigned long>(out.count)) - big(p + 1);
  const BigInt g = big(out.genus);
  out.within_bound = diff * diff <= 4 * g * g * bp;
  return out;
}

std::vector<std::uint64_t> sweep_primes(const FormParams& params, std::uint64_t p_enum_max) {
  std::set<std::uint64_t> ps;
  for (auto q : primes_below(p_enum_max + 1)) ps.insert(q);
  for (const auto& f : params.alpha0_product.factors()) {
    if (f.prime.fits_ulong_p()) ps.insert(f.prime.get_ui());
  }
  ps.insert(params.N);
  return {ps.begin(), ps.end()};
}

LocalSweep local_sweep(const FormParams& params, const CyclotomicBasis& basis, const SweepOptions& options) {
  const MultiPoly f = build_form(params, basis, std::max(kDefaultMaxN, params.N)).form;
  MultiPoly slice = f;
  if (params.gamma > 2) {
    std::vector<std::pair<std::string, BigInt>> fix;
    for (unsigned i = 3; i <= params.gamma; ++i) fix.emplace_back("y" + std::to_string(i), 0);
    slice = f.specialize(fix);
  }
  const BigInt product = params.alpha0 * (params.alpha0 + 1);
  LocalSweep out;
  for (auto p : sweep_primes(params, options.p_enum_max)) {
    const BigInt bp = big(p);
    const bool special = p == params.N || (product != 0 && mpz_divisible_p(product.get_mpz_t(), bp.get_mpz_t()));
    try {
      if (special) {
        try {
          out.certificates.push_back(special_prime_certificate(params, f, p));
          continue;
        } catch (const RecipeInapplicable&) {
          // fall through to enumeration
        }
      }
      LocalCertificate c = find_liftable_point(slice, p, options.lift);
      c.point.resize(f.arity(), BigInt(0));
      const Valuations v = measure_at_precision(f, c.point, p, c.k);
      c.v_f = v.v_f;
      c.v_grad = v.v_grad;
      out.certificates.push_back(std::move(c));
    } catch (const NotFoundError& e) {
      out.failures.push_back({p, e.what()});
    } catch (const std::invalid_argument& e) {
      out.failures.push_back({p, e.what()});
    }
  }
  return out;
}

LocalSweep local_sweep(const MultiPoly& f, const std::vector<std::uint64_t>& primes, const SweepOptions& options) {
  LocalSweep out;
  std::vector<std::uint64_t> ps = primes;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (auto p : ps) {
    try {
      out.certificates.push_back(find_liftable_point(f, p, options.lift));
    } catch (const NotFoundError& e) {
      out.failures.push_back({p, e.what()});
    } catch (const std::invalid_argument& e) {
      out.failures.push_back({p, e.what()});
    }
  }
  return out;
}

}  // namespace hasse
