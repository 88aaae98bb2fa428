#pragma once

#include <string>
#include <vector>

#include "gaussgeom/serialize.hpp"

namespace gaussgeom {

inline constexpr const char* kToolVersion = "gaussgeom 0.1.0";

/// One verification step. `pass` is decided by the step itself; for most steps
/// it means measured < tol.
struct CheckRecord {
  std::string name;
  std::string digest;  // FNV-1a of the step's inputs
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> records;
  Json config = Json::object();
  Json extra = Json::object();
  std::string version = kToolVersion;
  // Set when a step produced no records because it failed outright (e.g. a parse error downstream).
  bool forced_fail = false;

  bool overall_pass() const;
};

std::string fnv1a_hex(const std::string& text);

/// Wall times are omitted unless requested so identical runs give identical bytes.
Json report_to_json(const Report& r, bool with_timings = false);
std::string report_to_csv(const Report& r, bool with_timings = false);

}  // namespace gaussgeom
