#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>

#include "app.hpp"
#include "hasse/globalcheck.hpp"
#include "hasse/localsolve.hpp"
#include "hasse/serialize.hpp"

namespace hasse::app {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) entries.push_back({{"id", e.id}, {"pass", e.pass}, {"witness", e.witness}});
  return {{"passed", r.passed()}, {"sign", r.sign}, {"entries", entries}};
}

CyclotomicBasis basis_for(const FormParams& p) { return minimal_polynomial(p.N, theta_variant_of(p.variant)); }

MultiPoly form_for(const FormParams& p) {
  return build_form(p, basis_for(p), std::max(kDefaultMaxN, p.N)).form;
}

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("field '") + key + "': " + e.what());
  }
}

const nlohmann::json& get_object(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_object()) {
    throw MalformedInput(std::string("missing object '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

CertifyInput parse_certify_input(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedInput("input must be a JSON object");
  CertifyInput in;
  try {
    if (j.contains("variant")) {
      in.params = params_from_json(j);
      in.form = form_for(*in.params);
      return in;
    }
    if (j.contains("polynomial")) {
      const auto vars = get_field<Variables>(j, "variables");
      in.form = MultiPoly::from_text(get_field<std::string>(j, "polynomial"), vars);
      if (!in.form.is_homogeneous()) throw MalformedInput("polynomial is not homogeneous");
      return in;
    }
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedInput(e.what());
  }
  throw MalformedInput("input is neither form parameters nor {\"variables\", \"polynomial\"}");
}

CertifyResult certify(const CertifyInput& input, const CertifyOptions& opt, bool with_timestamp) {
  CertifyResult r;
  auto note_failure = [&](const std::string& component) {
    if (!r.failure) r.failure = component;
  };
  nlohmann::json& b = r.bundle;
  b["tool_version"] = kToolVersion;
  if (with_timestamp) b["timestamp"] = utc_timestamp();
  const MultiPoly& f = input.form;
  b["form"] = {{"variables", f.variables()}, {"text", f.to_text()}, {"hash", sha256_hex(f.to_text())}};

  SweepOptions sweep_opt;
  sweep_opt.p_enum_max = opt.p_enum_max;
  sweep_opt.lift.workers = opt.workers;
  LocalSweep sweep;
  if (input.params) {
    const FormParams& p = *input.params;
    b["params"] = to_json(p);
    const ConditionReport cond = check_conditions(p);
    b["conditions"] = to_json(cond);
    if (!cond.passed()) note_failure("conditions");
    sweep = local_sweep(p, basis_for(p), sweep_opt);
  } else {
    b["params"] = nullptr;
    b["conditions"] = nullptr;
    sweep = local_sweep(f, primes_below(opt.p_enum_max + 1), sweep_opt);
  }
  nlohmann::json local = to_json(sweep);
  local["p_enum_max"] = opt.p_enum_max;
  b["local"] = local;
  if (!sweep.complete()) note_failure("local");

  const RealPoint rp = real_point(f);
  b["real_point"] = to_json(rp);
  if (!rp.found) note_failure("real_point");

  const HeightSearch hs = height_search(f, opt.height, opt.workers);
  nlohmann::json global = to_json(hs);
  if (!hs.roots.empty()) note_failure("global.height_search");
  if (input.params && input.params->variant != Variant::L) {
    const ObstructionTranscript t = obstruction_transcript(*input.params, basis_for(*input.params), opt.q_bound);
    global["transcript"] = to_json(t);
    if (auto step = t.failed_step()) note_failure("global.transcript." + *step);
  } else if (input.params) {
    global["transcript"] = {{"skipped", "variant L has no global obstruction argument"}};
  } else {
    global["transcript"] = {{"skipped", "out-of-family: raw form input"}};
  }
  b["global"] = global;
  return r;
}

VerifyResult verify_bundle(const nlohmann::json& b) {
  VerifyResult v;
  nlohmann::json checks = nlohmann::json::array();
  auto record = [&](const std::string& id, bool ok, const std::string& detail = "") {
    checks.push_back({{"id", id}, {"pass", ok}, {"detail", detail}});
    if (!ok) v.failures.push_back(detail.empty() ? id : id + ": " + detail);
  };

  // structure
  const auto& form_j = get_object(b, "form");
  const auto vars = get_field<Variables>(form_j, "variables");
  const auto text = get_field<std::string>(form_j, "text");
  const auto hash = get_field<std::string>(form_j, "hash");
  const auto& local_j = get_object(b, "local");
  const auto& global_j = get_object(b, "global");
  if (!b.contains("params") || !b.contains("real_point")) throw MalformedInput("missing params or real_point");

  MultiPoly f;
  LocalSweep sweep;
  RealPoint rp;
  HeightSearch hs;
  std::optional<FormParams> params;
  std::uint64_t p_enum_max = 0;
  try {
    f = MultiPoly::from_text(text, vars);
    sweep = local_sweep_from_json(local_j);
    p_enum_max = get_field<std::uint64_t>(local_j, "p_enum_max");
    rp = real_point_from_json(b.at("real_point"));
    hs = height_search_from_json(global_j);
    if (!b.at("params").is_null()) params = params_from_json(b.at("params"));
  } catch (const MalformedInput&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedInput(e.what());
  }

  record("form.hash", sha256_hex(text) == hash, sha256_hex(text) == hash ? "" : "hash mismatch");
  record("form.canonical", f.to_text() == text, f.to_text() == text ? "" : "text is not in canonical form");

  std::vector<std::uint64_t> expected_primes;
  if (params) {
    bool same = false;
    std::string why;
    try {
      same = form_for(*params) == f;
      if (!same) why = "form differs from the one built from params";
    } catch (const std::exception& e) {
      why = e.what();
    }
    record("form.params", same, why);
    const ConditionReport cond = check_conditions(*params);
    record("conditions", cond.passed(), cond.passed() ? "" : "parameter conditions fail");
    expected_primes = sweep_primes(*params, p_enum_max);
  } else {
    expected_primes = primes_below(p_enum_max + 1);
  }

  std::set<std::uint64_t> covered;
  for (const auto& c : sweep.certificates) {
    const CheckResult res = verify_certificate(f, c);
    record("local.p=" + std::to_string(c.p), res.ok, res.reason);
    covered.insert(c.p);
  }
  for (const auto& fail : sweep.failures) record("local.p=" + std::to_string(fail.p), false, fail.reason);
  std::string missing;
  for (auto p : expected_primes) {
    if (!covered.count(p)) missing += (missing.empty() ? "" : ", ") + std::to_string(p);
  }
  record("local.coverage", missing.empty(), missing.empty() ? "" : "no certificate for p = " + missing);

  const CheckResult rp_check = verify_real_point(f, rp);
  record("real_point", rp_check.ok, rp_check.reason);

  bool roots_exact = true;
  for (const auto& root : hs.roots) {
    if (root.size() != f.arity() || f.eval(root) != 0) roots_exact = false;
  }
  record("global.roots_exact", roots_exact, roots_exact ? "" : "a recorded root does not satisfy f = 0");
  record("global.height_search", hs.roots.empty(), hs.roots.empty() ? "" : "primitive roots were found");

  if (!global_j.contains("transcript")) throw MalformedInput("missing global.transcript");
  const auto& tj = global_j.at("transcript");
  const bool needs_transcript = params && params->variant != Variant::L;
  if (tj.contains("skipped")) {
    record("global.transcript", !needs_transcript, needs_transcript ? "transcript skipped for a family form" : "");
  } else {
    ObstructionTranscript t;
    try {
      t = transcript_from_json(tj);
    } catch (const std::exception& e) {
      throw MalformedInput(std::string("transcript: ") + e.what());
    }
    std::vector<std::string> ids;
    for (const auto& s : t.steps) {
      ids.push_back(s.id);
      const CheckResult res = replay_step(s);
      record("global.transcript." + s.id, res.ok, res.reason);
    }
    const std::vector<std::string> expected{"s0", "s1", "s2", "s3", "s4"};
    record("global.transcript.steps", ids == expected, ids == expected ? "" : "transcript is missing steps");
    if (params) {
      // bind the witnesses to these params
      std::string why;
      for (const auto& s : t.steps) {
        const auto& w = s.witness;
        if (w.contains("N") && w.at("N") != params->N) why = s.id + " is about a different N";
        if (s.id == "s0" && w.value("alpha0", "") != to_string(params->alpha0)) why = "s0 alpha0 differs";
        if (s.id == "s1") {
          const auto [A, B] = brackets(*params);
          if (w.value("A", "") != A.to_text() || w.value("B", "") != B.to_text()) why = "s1 brackets differ";
        }
        if (s.id == "s2" && w.value("variant", "") != to_string(theta_variant_of(params->variant))) {
          why = "s2 basis differs";
        }
        if (s.id == "s4" && (w.value("n", 0u) != params->n ||
                             w.value("rule", "") != to_string(contradiction_rule_of(params->variant)))) {
          why = "s4 rule or n differs";
        }
      }
      record("global.transcript.binding", why.empty(), why);
    }
  }

  v.ok = v.failures.empty();
  v.report = {{"ok", v.ok}, {"checks", checks}, {"failures", v.failures}};
  return v;
}

}  // namespace hasse::app
