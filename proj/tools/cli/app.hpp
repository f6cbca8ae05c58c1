#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hasse/forms.hpp"
#include "hasse/multipoly.hpp"

namespace hasse::app {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kNoResult = 2,
  kCertifyFail = 3,
  kReplayFail = 4,
  kMalformed = 5,
};

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& text);

struct CertifyOptions {
  std::uint64_t p_enum_max = 200;
  std::uint64_t height = 25;
  std::uint64_t q_bound = 1000;
  unsigned workers = 1;
};

/// Either a family parameter set or a raw homogeneous form.
struct CertifyInput {
  std::optional<FormParams> params;
  MultiPoly form;
};

/// Accepts params JSON (as printed by `search`) or {"variables": [...], "polynomial": "..."}.
CertifyInput parse_certify_input(const nlohmann::json& j);

struct CertifyResult {
  nlohmann::json bundle;
  /// First failing component, e.g. "local", "real_point", "global.transcript.s3".
  std::optional<std::string> failure;
};

CertifyResult certify(const CertifyInput& input, const CertifyOptions& options, bool with_timestamp = true);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> failures;
  nlohmann::json report;
};

/// Replays every certificate, the real point and every transcript step.
/// Throws MalformedInput when required fields are missing or mistyped.
VerifyResult verify_bundle(const nlohmann::json& bundle);

struct Fixture {
  std::string name;
  std::string description;
  nlohmann::json input;
  CertifyOptions defaults;
  /// Component certify is expected to fail on, for fixtures that are not
  /// locally soluble everywhere.
  std::optional<std::string> expected_failure;
};

const std::vector<Fixture>& corpus();
const Fixture& fixture(const std::string& name);

/// Full command line front end; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hasse::app
