#include "gaussgeom/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace gaussgeom {

namespace {

std::string format_double(double v) {
  // Same text as the JSON writer so CSV and JSON agree on every value.
  return Json(v).dump();
}

}  // namespace

bool Report::overall_pass() const {
  return !forced_fail && std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json report_to_json(const Report& r, bool with_timings) {
  Json j;
  j["suite"] = r.suite;
  j["version"] = r.version;
  j["config"] = r.config;
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json e;
    e["name"] = rec.name;
    e["digest"] = rec.digest;
    e["measured"] = rec.measured;
    e["tol"] = rec.tol;
    e["pass"] = rec.pass;
    if (with_timings) e["wall_ms"] = rec.wall_ms;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  j["pass"] = r.overall_pass();
  return j;
}

std::string report_to_csv(const Report& r, bool with_timings) {
  std::ostringstream out;
  if (r.extra.contains("table")) {
    out << "n,dimension\n";
    for (const auto& row : r.extra.at("table")) out << row.at("n").get<int>() << ',' << row.at("dimension").get<int>() << '\n';
    return out.str();
  }
  out << "suite,check,digest,measured,tol,pass";
  if (with_timings) out << ",wall_ms";
  out << '\n';
  for (const auto& rec : r.records) {
    out << r.suite << ',' << rec.name << ',' << rec.digest << ',' << format_double(rec.measured) << ','
        << format_double(rec.tol) << ',' << (rec.pass ? "true" : "false");
    if (with_timings) out << ',' << format_double(rec.wall_ms);
    out << '\n';
  }
  return out.str();
}

}  // namespace gaussgeom
