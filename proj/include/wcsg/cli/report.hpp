#pragma once

// Deterministic experiment reports: JSON document and flat CSV export.

#include <string>
#include <vector>

#include <json.hpp>

namespace wcsg::cli {

using json = nlohmann::json;

struct CaseRecord {
  std::string id;
  json inputs = json::object();
  /// Scalar results; an optional "rows" array holds one object per t (or step).
  json numbers = json::object();
  std::string verdict = "pass";  // pass | fail | error
};

struct Report {
  json meta = json::object();
  json config = json::object();
  std::vector<CaseRecord> cases;

  bool all_pass() const;
  json summary() const;
};

json to_json(const Report& report);
Report report_from_json(const json& doc);

/// Pretty-printed JSON with a trailing newline; byte-stable for equal reports.
std::string render_json(const Report& report);

/// Header "case_id,verdict,t,<sorted numeric keys>" followed by one row per
/// (case, row). Nested objects flatten to dotted keys, booleans to 0/1.
std::string render_csv(const Report& report);

enum class Format { Json, Csv };

/// Writes the rendered report; throws Error(IoError) when the file cannot be written.
void emit(const Report& report, Format format, const std::string& path);

}  // namespace wcsg::cli
