#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "app.hpp"
#include "hasse/cyclotomic.hpp"
#include "hasse/parallel.hpp"

namespace hasse::app {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
  } else {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

ThetaVariant parse_theta(const std::string& s) {
  if (s == "real" || s == "real_theta") return ThetaVariant::real_theta;
  if (s == "omz" || s == "one_minus_zeta") return ThetaVariant::one_minus_zeta;
  throw std::invalid_argument("unknown theta variant: " + s);
}

int emit_certify(const CertifyResult& r, std::ostream& out, std::ostream& err) {
  out << r.bundle.dump(2) << "\n";
  if (r.failure) {
    err << "certify failed: " << *r.failure << "\n";
    return kCertifyFail;
  }
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Certificates for cyclotomic norm-form counterexamples to the Hasse principle", "hasse"};
  cli.require_subcommand(1);
  unsigned workers = 1;
  cli.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  // search
  auto* search = cli.add_subcommand("search", "Admissible parameter sets with the smallest alpha0");
  std::uint64_t s_N = 0;
  std::string s_variant = "T1";
  std::size_t s_count = 1;
  unsigned s_beta = 1, s_gamma = 0;
  std::uint64_t s_max_N = kDefaultMaxN;
  search->add_option("--N", s_N, "Odd prime N")->required();
  search->add_option("--variant", s_variant, "T1, G1, G2, G3 or L");
  search->add_option("--count", s_count, "Number of parameter sets");
  search->add_option("--beta", s_beta, "Exponent of N on x^n");
  search->add_option("--gamma", s_gamma, "Number of y variables (0 = variant default)");
  search->add_option("--max-N", s_max_N, "Largest N accepted");

  // build
  auto* build = cli.add_subcommand("build", "Build the form for a parameter file");
  std::string b_path;
  build->add_option("params", b_path, "Parameter JSON file, - for stdin")->required();

  // expand
  auto* expand = cli.add_subcommand("expand", "Minimal polynomial and expanded norm form");
  std::uint64_t e_N = 0;
  std::string e_variant = "real";
  unsigned e_gamma = 1;
  expand->add_option("--N", e_N, "Odd prime N")->required();
  expand->add_option("--variant", e_variant, "real or omz");
  expand->add_option("--gamma", e_gamma, "Number of y variables");

  // certify
  auto* cert = cli.add_subcommand("certify", "Local, real and global certificates for a form");
  std::string c_path;
  CertifyOptions c_opt;
  bool no_timestamp = false;
  cert->add_option("input", c_path, "Params or raw form JSON, - for stdin")->required();
  auto add_certify_flags = [&](CLI::App* sub) {
    sub->add_option("--p-max", c_opt.p_enum_max, "Certify every prime up to this bound");
    sub->add_option("--height", c_opt.height, "Height bound for the root search");
    sub->add_option("--q-bound", c_opt.q_bound, "Prime bound for the norm residue step");
    sub->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field");
  };
  add_certify_flags(cert);

  // verify
  auto* verify = cli.add_subcommand("verify", "Replay a certificate bundle");
  std::string v_path;
  verify->add_option("bundle", v_path, "Bundle JSON file, - for stdin")->required();

  // corpus
  auto* corp = cli.add_subcommand("corpus", "Built-in regression forms");
  corp->require_subcommand(1);
  auto* c_list = corp->add_subcommand("list", "List fixtures");
  auto* c_show = corp->add_subcommand("show", "Print a fixture's certify input");
  std::string fx_name;
  c_show->add_option("name", fx_name)->required();
  auto* c_cert = corp->add_subcommand("certify", "Certify a fixture with its default bounds");
  c_cert->add_option("name", fx_name)->required();
  add_certify_flags(c_cert);
  auto* c_run = corp->add_subcommand("run", "Certify and verify every fixture");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }
  if (workers == 0) workers = default_workers();

  try {
    if (*search) {
      const Variant v = variant_from_string(s_variant);
      std::vector<FormParams> found;
      try {
        found = search_params(s_N, v, s_count, s_beta, s_gamma, s_max_N);
      } catch (const std::invalid_argument& e) {
        err << "search: " << e.what() << "\n";
        return kNoResult;
      }
      if (found.empty()) {
        err << "search: no admissible parameters\n";
        return kNoResult;
      }
      for (const auto& p : found) out << to_json(p).dump() << "\n";
      return kOk;
    }

    if (*build) {
      const CertifyInput in = parse_certify_input(read_json(b_path));
      if (!in.params) throw MalformedInput("build expects form parameters");
      const FormParams& p = *in.params;
      const BuiltForm bf = build_form(p, minimal_polynomial(p.N, theta_variant_of(p.variant)),
                                      std::max(kDefaultMaxN, p.N));
      const ConditionReport cond = check_conditions(p);
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : cond.entries) entries.push_back({{"id", e.id}, {"pass", e.pass}, {"witness", e.witness}});
      const std::string text = bf.form.to_text();
      out << nlohmann::json{{"params", to_json(p)},
                            {"conditions", {{"passed", cond.passed()}, {"sign", cond.sign}, {"entries", entries}}},
                            {"prefactor", bf.prefactor.to_text()},
                            {"A", bf.A.to_text()},
                            {"B", bf.B.to_text()},
                            {"form", {{"variables", bf.form.variables()}, {"text", text}, {"hash", sha256_hex(text)}}}}
                 .dump(2)
          << "\n";
      return kOk;
    }

    if (*expand) {
      const CyclotomicBasis basis = minimal_polynomial(e_N, parse_theta(e_variant));
      const MultiPoly nf = norm_form(basis, e_gamma);
      const std::string text = nf.to_text();
      out << nlohmann::json{{"N", e_N},
                            {"variant", to_string(basis.variant)},
                            {"degree", basis.degree},
                            {"minpoly", basis.minpoly.to_text()},
                            {"eisenstein", eisenstein_at(basis.minpoly, BigInt(static_cast<unsigned long>(e_N)))},
                            {"norm_form", {{"variables", nf.variables()}, {"text", text}, {"hash", sha256_hex(text)}}}}
                 .dump(2)
          << "\n";
      return kOk;
    }

    if (*cert) {
      c_opt.workers = workers;
      return emit_certify(certify(parse_certify_input(read_json(c_path)), c_opt, !no_timestamp), out, err);
    }

    if (*verify) {
      const VerifyResult r = verify_bundle(read_json(v_path));
      out << r.report.dump(2) << "\n";
      if (!r.ok) {
        err << "verify failed: " << r.failures.front() << "\n";
        return kReplayFail;
      }
      return kOk;
    }

    if (*c_list) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& f : corpus()) {
        list.push_back({{"name", f.name},
                        {"description", f.description},
                        {"expected_failure", f.expected_failure ? nlohmann::json(*f.expected_failure) : nlohmann::json(nullptr)}});
      }
      out << list.dump(2) << "\n";
      return kOk;
    }
    if (*c_show) {
      out << fixture(fx_name).input.dump(2) << "\n";
      return kOk;
    }
    if (*c_cert) {
      const Fixture& fx = fixture(fx_name);
      CertifyOptions opt = fx.defaults;
      if (c_cert->get_option("--p-max")->count()) opt.p_enum_max = c_opt.p_enum_max;
      if (c_cert->get_option("--height")->count()) opt.height = c_opt.height;
      if (c_cert->get_option("--q-bound")->count()) opt.q_bound = c_opt.q_bound;
      opt.workers = workers;
      return emit_certify(certify(parse_certify_input(fx.input), opt, !no_timestamp), out, err);
    }
    if (*c_run) {
      nlohmann::json results = nlohmann::json::array();
      bool all_ok = true;
      for (const auto& fx : corpus()) {
        CertifyOptions opt = fx.defaults;
        opt.workers = workers;
        const CertifyResult r = certify(parse_certify_input(fx.input), opt);
        const VerifyResult v = verify_bundle(r.bundle);
        const bool ok = r.failure == fx.expected_failure && v.ok == !fx.expected_failure;
        all_ok = all_ok && ok;
        results.push_back({{"name", fx.name},
                           {"certified", !r.failure},
                           {"failure", r.failure ? nlohmann::json(*r.failure) : nlohmann::json(nullptr)},
                           {"expected_failure",
                            fx.expected_failure ? nlohmann::json(*fx.expected_failure) : nlohmann::json(nullptr)},
                           {"verified", v.ok}});
        err << fx.name << ": " << (ok ? "ok" : "FAILED") << "\n";
      }
      out << nlohmann::json{{"ok", all_ok}, {"results", results}}.dump(2) << "\n";
      return all_ok ? kOk : kCertifyFail;
    }
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kOk;
}

}  // namespace hasse::app
