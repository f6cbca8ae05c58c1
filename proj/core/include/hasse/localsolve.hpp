#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hasse/cyclotomic.hpp"
#include "hasse/forms.hpp"
#include "hasse/multipoly.hpp"

namespace hasse {

/// No certificate within the search budget.  Inconclusive: this is never a
/// proof that the form has no Q_p point.
class NotFoundError : public std::runtime_error {
 public:
  NotFoundError(std::uint64_t p, unsigned k_max, const std::string& why)
      : std::runtime_error("no liftable point mod " + std::to_string(p) + " up to precision " +
                           std::to_string(k_max) + ": " + why),
        p_(p),
        k_max_(k_max) {}
  std::uint64_t p() const { return p_; }
  unsigned k_max() const { return k_max_; }

 private:
  std::uint64_t p_;
  unsigned k_max_;
};

/// A special-prime recipe does not apply (wrong prime, or the base point
/// fails the Newton test); callers fall back to find_liftable_point.
class RecipeInapplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class CertBranch { enumeration, special_alpha0, special_alpha0_plus_1, special_N };

std::string to_string(CertBranch b);
CertBranch cert_branch_from_string(const std::string& s);

/// Witness of a Q_p point: a projective point mod p^k with
/// v_f > 2 * v_grad, both valuations measured modulo p^k (capped at k).
/// The point is primitive (some coordinate is a p-adic unit) and the first
/// unit coordinate equals 1.
struct LocalCertificate {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::vector<BigInt> point;
  unsigned v_f = 0;
  unsigned v_grad = 0;
  CertBranch branch = CertBranch::enumeration;

  bool operator==(const LocalCertificate&) const = default;
};

struct Valuations {
  unsigned v_f = 0;
  unsigned v_grad = 0;
};

/// Valuations of f and of its gradient at `point`, computed modulo p^k and
/// capped at k.
Valuations measure_at_precision(const MultiPoly& f, std::span<const BigInt> point, std::uint64_t p, unsigned k);

struct CheckResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Replays a certificate against f alone.
CheckResult verify_certificate(const MultiPoly& f, const LocalCertificate& cert);

struct FpPoint {
  std::vector<std::uint64_t> coords;
};

struct FpCount {
  std::uint64_t count = 0;
  std::optional<FpPoint> first;
};

/// Projective F_p zeros of a homogeneous f (first nonzero coordinate 1).
/// `fix` substitutes integers for named variables first; the count is over
/// the remaining variables.  With `existence_only`, stops at the first
/// zero (count is then 0 or 1).
FpCount fp_points(const MultiPoly& f, std::uint64_t p,
                  const std::vector<std::pair<std::string, BigInt>>& fix = {}, bool existence_only = false,
                  unsigned workers = 1);

/// Zeros of f in F_p^arity, the origin included.
std::uint64_t count_affine_zeros(const MultiPoly& f, std::uint64_t p, unsigned workers = 1);

struct LiftOptions {
  unsigned k_max = 25;
  /// Singular base points carried into lifting, and frontier size per level.
  std::size_t max_base_points = 256;
  std::size_t max_frontier = 4096;
  unsigned workers = 1;
};

/// Scans F_p points for a smooth zero (certificate at k = 1); failing that,
/// lifts singular zeros modulo p^2, p^3, ... until the Newton condition
/// holds.  Throws NotFoundError when the budget runs out.
LocalCertificate find_liftable_point(const MultiPoly& f, std::uint64_t p, const LiftOptions& options = {});

/// Certificate from the proof's recipe at a prime dividing alpha0,
/// alpha0 + 1, or equal to N: base point (1, x0, 0, ..., 0) with x0 = 0, or
/// x0 = +-1 when p = N; checked modulo p^2.  Throws RecipeInapplicable.
LocalCertificate special_prime_certificate(const FormParams& params, const CyclotomicBasis& basis, std::uint64_t p);
LocalCertificate special_prime_certificate(const FormParams& params, const MultiPoly& form, std::uint64_t p);

struct CurveCount {
  std::uint64_t p = 0;
  std::uint64_t count = 0;
  unsigned genus = 0;
  bool smooth = false;
  bool within_bound = false;

  bool operator==(const CurveCount&) const = default;
};

/// Largest prime hasse_weil_check will enumerate (p^2 + p + 1 points).
inline constexpr std::uint64_t kMaxCurvePrime = 5000;

/// Point count of the plane curve f(t, 0, y1, y2) (remaining y's zero)
/// over F_p.  Smoothness means no F_p-rational point where the curve and
/// its gradient vanish together.  Throws std::invalid_argument when
/// p | alpha0(alpha0+1)N, p is not prime, or p > kMaxCurvePrime.
CurveCount hasse_weil_check(const FormParams& params, const CyclotomicBasis& basis, std::uint64_t p,
                            unsigned workers = 1);

struct SweepFailure {
  std::uint64_t p = 0;
  std::string reason;
};

struct LocalSweep {
  std::vector<LocalCertificate> certificates;  ///< sorted by p
  std::vector<SweepFailure> failures;
  bool complete() const { return failures.empty(); }
};

struct SweepOptions {
  std::uint64_t p_enum_max = 200;
  LiftOptions lift;
};

/// One certificate per prime in: all p <= p_enum_max, every known prime
/// factor of alpha0(alpha0+1), and N.  Forms with gamma > 2 are certified
/// on the slice y3 = ... = 0; points are zero-extended and re-measured on
/// the full form.
LocalSweep local_sweep(const FormParams& params, const CyclotomicBasis& basis, const SweepOptions& options = {});

/// Enumeration-only sweep of an arbitrary homogeneous form over `primes`.
LocalSweep local_sweep(const MultiPoly& f, const std::vector<std::uint64_t>& primes,
                       const SweepOptions& options = {});

/// The primes a params sweep covers.
std::vector<std::uint64_t> sweep_primes(const FormParams& params, std::uint64_t p_enum_max);

/// Real witness: one variable free, one fixed to 1, the rest 0, giving a
/// univariate with an exact sign change on [lo, hi].  Odd-degree slices are
/// bracketed by their root bound; even-degree slices only when a grid scan
/// finds a sign change, otherwise found = false.
struct RealPoint {
  bool found = false;
  std::string reason;
  std::size_t free_var = 0;
  std::size_t unit_var = 0;
  std::string lo;  ///< exact rational "a/b"
  std::string hi;
  std::vector<std::string> point;  ///< decimal approximation of the root
  double residual = 0.0;           ///< |f(point)| at the bracket midpoint
};

RealPoint real_point(const MultiPoly& f);

/// Exact re-check: sign change of f on the recorded bracket and residual
/// at the midpoint below `tolerance`.
CheckResult verify_real_point(const MultiPoly& f, const RealPoint& rp, double tolerance = 1e-9);

}  // namespace hasse
