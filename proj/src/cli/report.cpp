#include "wcsg/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "wcsg/errors.hpp"

namespace wcsg::cli {

namespace {

using Flat = std::map<std::string, std::string>;

std::string number_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void flatten(const json& j, const std::string& prefix, Flat& out) {
  for (const auto& [key, value] : j.items()) {
    if (prefix.empty() && key == "rows") continue;
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, out);
    } else if (value.is_boolean()) {
      out[name] = value.get<bool>() ? "1" : "0";
    } else if (value.is_number()) {
      out[name] = number_text(value.get<double>());
    } else if (value.is_null()) {
      out[name] = "";
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& c : cases) {
    if (c.verdict != "pass") return false;
  }
  return true;
}

json Report::summary() const {
  int pass = 0, fail = 0, error = 0;
  for (const auto& c : cases) {
    if (c.verdict == "pass") ++pass;
    else if (c.verdict == "fail") ++fail;
    else ++error;
  }
  return {{"cases", cases.size()}, {"pass", pass}, {"fail", fail}, {"error", error}, {"all_pass", all_pass()}};
}

json to_json(const Report& report) {
  json j;
  j["meta"] = report.meta;
  j["config"] = report.config;
  j["cases"] = json::array();
  for (const auto& c : report.cases) {
    j["cases"].push_back({{"id", c.id}, {"inputs", c.inputs}, {"numbers", c.numbers}, {"verdict", c.verdict}});
  }
  j["summary"] = report.summary();
  return j;
}

Report report_from_json(const json& doc) {
  Report r;
  try {
    r.meta = doc.at("meta");
    r.config = doc.at("config");
    for (const auto& c : doc.at("cases")) {
      r.cases.push_back({c.at("id").get<std::string>(), c.at("inputs"), c.at("numbers"),
                         c.at("verdict").get<std::string>()});
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string render_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string render_csv(const Report& report) {
  struct Row {
    std::string id, verdict, t;
    Flat values;
  };
  std::vector<Row> rows;
  std::set<std::string> keys;
  for (const auto& c : report.cases) {
    Flat base;
    flatten(c.numbers, "", base);
    const json* list = c.numbers.contains("rows") ? &c.numbers.at("rows") : nullptr;
    if (!list || !list->is_array() || list->empty()) {
      rows.push_back({c.id, c.verdict, "", base});
    } else {
      for (const auto& r : *list) {
        Row row{c.id, c.verdict, "", base};
        Flat own;
        flatten(r, "row", own);
        for (auto& [k, v] : own) {
          const std::string key = k.substr(4);
          if (key == "t") row.t = v;
          else row.values[key] = v;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.values) keys.insert(k);
  }
  std::string out = "case_id,verdict,t";
  for (const auto& k : keys) out += "," + csv_field(k);
  out += "\n";
  for (const auto& r : rows) {
    out += csv_field(r.id) + "," + r.verdict + "," + r.t;
    for (const auto& k : keys) {
      const auto it = r.values.find(k);
      out += "," + (it == r.values.end() ? std::string() : it->second);
    }
    out += "\n";
  }
  return out;
}

void emit(const Report& report, Format format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out << (format == Format::Json ? render_json(report) : render_csv(report));
  out.flush();
  if (!out) fail(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace wcsg::cli
