#pragma once

// Machine-readable certification records.

#include "darcais/exactnum.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace darcais {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kReportSchema = "darcais-report/1";

enum class Verdict { kPass, kFail, kSkipped };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kSkipped: return "skipped";
  }
  return "?";
}

/// One certification result. Exact values are carried as decimal or
/// "num/den" strings, never as floating point. A failing report always
/// carries a witness.
struct CertReport {
  std::string kind;  // identity | pf | roots | shape
  nlohmann::json target = nlohmann::json::object();
  Verdict verdict = Verdict::kPass;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json witness = nullptr;
  // Wall-clock timings in seconds; only emitted when requested, since they
  // would break byte-for-byte reproducibility.
  std::optional<nlohmann::json> timings;

  bool passed() const { return verdict == Verdict::kPass; }

  nlohmann::json to_json(bool with_timings = false) const {
    if (verdict == Verdict::kFail && witness.is_null()) {
      throw ConsistencyError("failing " + kind + " report without a witness");
    }
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["version"] = kVersion;
    j["kind"] = kind;
    j["target"] = target;
    j["verdict"] = to_string(verdict);
    j["details"] = details;
    j["witness"] = witness;
    if (with_timings && timings) j["timings"] = *timings;
    return j;
  }
};

}  // namespace darcais
