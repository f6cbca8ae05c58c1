#include "hasse/serialize.hpp"

namespace hasse {

nlohmann::json to_json(const LocalCertificate& c) {
  nlohmann::json point = nlohmann::json::array();
  for (const auto& x : c.point) point.push_back(to_string(x));
  return {{"p", c.p},           {"k", c.k},           {"point", point},
          {"v_f", c.v_f},       {"v_grad", c.v_grad}, {"branch", to_string(c.branch)}};
}

LocalCertificate certificate_from_json(const nlohmann::json& j) {
  LocalCertificate c;
  c.p = j.at("p").get<std::uint64_t>();
  c.k = j.at("k").get<unsigned>();
  for (const auto& x : j.at("point")) c.point.push_back(parse_bigint(x.get<std::string>()));
  c.v_f = j.at("v_f").get<unsigned>();
  c.v_grad = j.at("v_grad").get<unsigned>();
  c.branch = cert_branch_from_string(j.at("branch").get<std::string>());
  return c;
}

nlohmann::json to_json(const CurveCount& c) {
  return {{"p", c.p},
          {"count", c.count},
          {"genus", c.genus},
          {"smooth", c.smooth},
          {"within_bound", c.within_bound}};
}

nlohmann::json to_json(const RealPoint& rp) {
  if (!rp.found) return {{"found", false}, {"reason", rp.reason}};
  return {{"found", true},          {"free_var", rp.free_var}, {"unit_var", rp.unit_var}, {"lo", rp.lo},
          {"hi", rp.hi},            {"point", rp.point},       {"residual", rp.residual}};
}

RealPoint real_point_from_json(const nlohmann::json& j) {
  RealPoint rp;
  rp.found = j.at("found").get<bool>();
  if (!rp.found) {
    rp.reason = j.value("reason", "");
    return rp;
  }
  rp.free_var = j.at("free_var").get<std::size_t>();
  rp.unit_var = j.at("unit_var").get<std::size_t>();
  rp.lo = j.at("lo").get<std::string>();
  rp.hi = j.at("hi").get<std::string>();
  rp.point = j.at("point").get<std::vector<std::string>>();
  rp.residual = j.at("residual").get<double>();
  return rp;
}

nlohmann::json to_json(const LocalSweep& s) {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : s.certificates) certs.push_back(to_json(c));
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : s.failures) failures.push_back({{"p", f.p}, {"reason", f.reason}});
  return {{"certificates", certs}, {"failures", failures}};
}

LocalSweep local_sweep_from_json(const nlohmann::json& j) {
  LocalSweep s;
  for (const auto& c : j.at("certificates")) s.certificates.push_back(certificate_from_json(c));
  for (const auto& f : j.at("failures")) {
    s.failures.push_back({f.at("p").get<std::uint64_t>(), f.at("reason").get<std::string>()});
  }
  return s;
}

}  // namespace hasse
