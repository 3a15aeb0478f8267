/**
 * @file report.hpp
 * @brief Per-axiom verdicts with minimal counterexample witnesses.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vakit {

enum class Verdict {
  Pass,
  Fail,
  Skipped,       // not applicable to the data (e.g. no D^M supplied)
  Precondition,  // hypothesis of a conditional statement not met
  Refused,       // requested operation refused on a precondition
  Info           // data only, asserts nothing
};

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& s);

struct Witness {
  std::vector<std::string> basis;
  std::vector<std::pair<std::string, std::int64_t>> exponents;
  std::string lhs;
  std::string rhs;
};

struct AxiomResult {
  std::string id;
  std::string anchor;
  Verdict verdict = Verdict::Pass;
  std::optional<Witness> witness;
  std::string detail;
  std::uint64_t cases = 0;
  nlohmann::json data;  // optional structured extras (stats, matrices)
};

struct CheckReport {
  std::string suite;
  std::vector<AxiomResult> results;
  double elapsed_ms = 0.0;
  std::string digest;

  void add(AxiomResult r) { results.push_back(std::move(r)); }
  void merge(const CheckReport& other);

  bool has(Verdict v) const;
  /// No failures and no refusals.
  bool ok() const { return !has(Verdict::Fail) && !has(Verdict::Refused); }
  const AxiomResult* find(const std::string& id) const;
  Verdict verdict_of(const std::string& id) const;

  /// 0 all pass, 1 some axiom failed, 2 some request was refused.
  int exit_code() const;

  nlohmann::json to_json(bool include_timing = true) const;
  static CheckReport from_json(const nlohmann::json& j);
};

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a of a byte string, hex encoded.
std::string digest_hex(const std::string& bytes);

}  // namespace vakit
