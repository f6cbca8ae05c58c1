#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hasse/cyclotomic.hpp"
#include "hasse/forms.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/multipoly.hpp"

namespace hasse {

struct HeightSearch {
  std::uint64_t height_bound = 0;
  /// Primitive tuples (gcd 1, first nonzero coordinate positive) with max-norm <= H.
  std::uint64_t tuples_searched = 0;
  std::vector<std::vector<BigInt>> roots;  ///< each re-evaluated exactly

  bool operator==(const HeightSearch&) const = default;
};

/// Exhaustive search for primitive roots of a homogeneous f with every
/// coordinate in [-H, H].  Work is split into slabs by the leading
/// coordinates; results are merged in slab order.
HeightSearch height_search(const MultiPoly& f, std::uint64_t H, unsigned workers = 1);

struct TranscriptStep {
  std::string id;
  std::string statement;
  nlohmann::json witness;
  bool pass = false;
};

/// Finite computations behind the mod-N insolubility argument, in order.
/// Stops at the first failing step.
struct ObstructionTranscript {
  std::vector<TranscriptStep> steps;
  std::vector<std::string> notes;

  bool passed() const;
  /// Id of the first failing step, if any.
  std::optional<std::string> failed_step() const;
};

/// How s4 derives its contradiction.
///  power_n         c^n == b - a with a, b, c in {+-1}            (T1, G1)
///  squared_sign    c^(n-1) == (b - a)^2 with a, b, c in {+-1}     (G2, needs N > 5)
///  unit_difference c^(n-1) == b - a with a, b, c in {1}           (G3)
enum class ContradictionRule { power_n, squared_sign, unit_difference };

std::string to_string(ContradictionRule r);
ContradictionRule contradiction_rule_from_string(const std::string& s);
ContradictionRule contradiction_rule_of(Variant v);

struct ContradictionSets {
  std::vector<std::uint64_t> residues;  ///< the allowed residues of t, A, B mod N
  std::vector<std::uint64_t> lhs;       ///< sorted, distinct
  std::vector<std::uint64_t> rhs;
  std::vector<std::uint64_t> intersection;
};

/// Residue sets for s4; the contradiction holds iff intersection is empty.
ContradictionSets contradiction_sets(std::uint64_t N, unsigned n, ContradictionRule rule);

struct NormResidue {
  std::uint64_t q = 0;
  std::uint64_t f = 0;
  std::uint64_t residue = 0;

  bool operator==(const NormResidue&) const = default;
};

/// For every prime q < q_bound, q != N: the residual degree f of q and
/// q^f mod N.
std::vector<NormResidue> norm_residue_audit(std::uint64_t N, ThetaVariant variant, std::uint64_t q_bound);

/// Steps s0 (alpha0(alpha0+1) prime to N), s1 (B - A = t^e), s2 (Eisenstein
/// minimal polynomial with constant +-N), s3 (norm residues), s4 (residue
/// contradiction).  Throws std::invalid_argument for variant L, which has no
/// global theorem, or when the basis does not match params.
ObstructionTranscript obstruction_transcript(const FormParams& params, const CyclotomicBasis& basis,
                                             std::uint64_t q_bound);

/// Re-checks one step from its witness alone.
CheckResult replay_step(const TranscriptStep& step);

nlohmann::json to_json(const TranscriptStep& s);
TranscriptStep transcript_step_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ObstructionTranscript& t);
ObstructionTranscript transcript_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HeightSearch& h);
HeightSearch height_search_from_json(const nlohmann::json& j);

}  // namespace hasse
