#include "vakit/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace vakit {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
    case Verdict::Precondition: return "precondition";
    case Verdict::Refused: return "refused";
    case Verdict::Info: return "info";
  }
  return "unknown";
}

Verdict verdict_from_name(const std::string& s) {
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Skipped, Verdict::Precondition,
                    Verdict::Refused, Verdict::Info}) {
    if (verdict_name(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& r : other.results) results.push_back(r);
  elapsed_ms += other.elapsed_ms;
}

bool CheckReport::has(Verdict v) const {
  for (const auto& r : results) {
    if (r.verdict == v) return true;
  }
  return false;
}

const AxiomResult* CheckReport::find(const std::string& id) const {
  for (const auto& r : results) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

Verdict CheckReport::verdict_of(const std::string& id) const {
  const AxiomResult* r = find(id);
  if (r == nullptr) throw std::out_of_range("no result for axiom '" + id + "'");
  return r->verdict;
}

int CheckReport::exit_code() const {
  if (has(Verdict::Fail)) return 1;
  if (has(Verdict::Refused)) return 2;
  return 0;
}

nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json j;
  j["basis"] = w.basis;
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& [name, value] : w.exponents) ex.push_back({{"name", name}, {"value", value}});
  j["exponents"] = ex;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  return j;
}

Witness witness_from_json(const nlohmann::json& j) {
  Witness w;
  w.basis = j.at("basis").get<std::vector<std::string>>();
  for (const auto& e : j.at("exponents")) {
    w.exponents.emplace_back(e.at("name").get<std::string>(), e.at("value").get<std::int64_t>());
  }
  w.lhs = j.value("lhs", "");
  w.rhs = j.value("rhs", "");
  return w;
}

nlohmann::json CheckReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["schema"] = "vakit-report/1";
  j["suite"] = suite;
  j["digest"] = digest;
  j["verdict"] = ok() ? "pass" : (has(Verdict::Fail) ? "fail" : "refused");
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json a;
    a["id"] = r.id;
    a["anchor"] = r.anchor;
    a["verdict"] = verdict_name(r.verdict);
    a["cases"] = r.cases;
    if (!r.detail.empty()) a["detail"] = r.detail;
    if (r.witness) a["witness"] = witness_to_json(*r.witness);
    if (!r.data.is_null()) a["data"] = r.data;
    axioms.push_back(a);
  }
  j["axioms"] = axioms;
  if (include_timing) j["timing"] = {{"elapsed_ms", elapsed_ms}};
  return j;
}

CheckReport CheckReport::from_json(const nlohmann::json& j) {
  CheckReport rep;
  rep.suite = j.value("suite", "");
  rep.digest = j.value("digest", "");
  for (const auto& a : j.at("axioms")) {
    AxiomResult r;
    r.id = a.at("id").get<std::string>();
    r.anchor = a.value("anchor", "");
    r.verdict = verdict_from_name(a.at("verdict").get<std::string>());
    r.cases = a.value("cases", std::uint64_t{0});
    r.detail = a.value("detail", "");
    if (a.contains("witness")) r.witness = witness_from_json(a.at("witness"));
    if (a.contains("data")) r.data = a.at("data");
    rep.results.push_back(std::move(r));
  }
  return rep;
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vakit
