#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "formation_lab/catalog.hpp"
#include "formation_lab/group.hpp"
#include "formation_lab/rank.hpp"

#ifndef FORMATION_LAB_VERSION
#define FORMATION_LAB_VERSION "0.0.0"
#endif

namespace formation_lab {

inline std::string engine_version() { return FORMATION_LAB_VERSION; }

namespace detail {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "write to " + path + " failed");
}

/// 1-based line and column of a byte offset.
inline std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline nlohmann::json parse_json(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, origin + ": " + position_of(text, e.byte) + ": malformed text object");
  }
}

[[noreturn]] inline void bad_field(const std::string& origin, const std::string& msg) {
  throw Error(ErrorKind::ParseError, origin + ": " + msg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Group files

inline GroupPtr parse_group_text(const std::string& text, const std::string& origin = "<group>") {
  const nlohmann::json j = detail::parse_json(text, origin);
  if (!j.is_object()) detail::bad_field(origin, "expected an object");
  if (!j.contains("name") || !j["name"].is_string()) detail::bad_field(origin, "field 'name' must be a string");
  if (!j.contains("degree") || !j["degree"].is_number_integer() || j["degree"].get<long long>() < 1) {
    detail::bad_field(origin, "field 'degree' must be a positive integer");
  }
  if (!j.contains("generators") || !j["generators"].is_array()) {
    detail::bad_field(origin, "field 'generators' must be a list");
  }
  if (j["generators"].empty()) detail::bad_field(origin, "no generators");
  const auto degree = j["degree"].get<std::size_t>();
  std::vector<Permutation> perms;
  for (std::size_t g = 0; g < j["generators"].size(); ++g) {
    const auto& gen = j["generators"][g];
    const std::string where = "generator " + std::to_string(g + 1);
    if (!gen.is_array()) detail::bad_field(origin, where + " must be a list of cycles");
    std::vector<std::vector<std::size_t>> cycles;
    for (const auto& cyc : gen) {
      if (!cyc.is_array()) detail::bad_field(origin, where + ": each cycle must be a list of points");
      std::vector<std::size_t> pts;
      for (const auto& pt : cyc) {
        if (!pt.is_number_integer()) detail::bad_field(origin, where + ": points must be integers");
        const long long v = pt.get<long long>();
        if (v < 1) throw Error(ErrorKind::InvalidPermutation, origin + ": " + where + ": point " + std::to_string(v));
        pts.push_back(static_cast<std::size_t>(v));
      }
      cycles.push_back(std::move(pts));
    }
    perms.push_back(Permutation::from_cycles(degree, cycles));
  }
  return group_from_generators(perms, j["name"].get<std::string>());
}

inline GroupPtr parse_group_file(const std::string& path) { return parse_group_text(detail::read_text(path), path); }

/// Generator file text for G. Permutation groups keep their own points;
/// other groups are written through the right regular representation.
inline std::string group_file_text(const GroupPtr& G) {
  nlohmann::json gens = nlohmann::json::array();
  std::size_t degree = 0;
  if (G->has_permutations()) {
    degree = G->permutation(0).degree();
    for (Elem g : G->generators()) gens.push_back(G->permutation(g).cycles());
  } else {
    degree = G->order();
    for (Elem g : G->generators()) {
      std::vector<Permutation::Point> img(G->order());
      for (Elem x = 0; x < G->order(); ++x) img[x] = static_cast<Permutation::Point>(G->mul(x, g));
      gens.push_back(Permutation(std::move(img)).cycles());
    }
  }
  if (gens.empty()) gens.push_back(nlohmann::json::array());
  nlohmann::json j;
  j["name"] = G->name();
  j["degree"] = degree;
  j["generators"] = gens;
  return j.dump() + "\n";
}

inline void write_group_file(const GroupPtr& G, const std::string& path) {
  detail::write_text(path, group_file_text(G));
}

// ---------------------------------------------------------------------------
// Catalog spec files

inline CatalogSpec parse_catalog_spec_text(const std::string& text, const std::string& origin,
                                           const std::filesystem::path& base_dir = {}) {
  const nlohmann::json j = detail::parse_json(text, origin);
  if (!j.is_object()) detail::bad_field(origin, "expected an object");
  CatalogSpec spec;
  if (!j.contains("families") || !j["families"].is_array()) detail::bad_field(origin, "field 'families' must be a list");
  spec.families.clear();
  for (const auto& f : j["families"]) {
    if (!f.is_string()) detail::bad_field(origin, "family names must be strings");
    const auto name = f.get<std::string>();
    const auto& known = catalog_family_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      detail::bad_field(origin, "unknown family '" + name + "'");
    }
    spec.families.push_back(name);
  }
  if (spec.families.empty()) detail::bad_field(origin, "field 'families' is empty");
  if (j.contains("max_order")) {
    if (!j["max_order"].is_number_integer() || j["max_order"].get<long long>() < 1) {
      detail::bad_field(origin, "field 'max_order' must be a positive integer");
    }
    spec.max_order = j["max_order"].get<std::size_t>();
  }
  if (j.contains("extra_files")) {
    if (!j["extra_files"].is_array()) detail::bad_field(origin, "field 'extra_files' must be a list");
    for (const auto& f : j["extra_files"]) {
      if (!f.is_string()) detail::bad_field(origin, "extra file paths must be strings");
      std::filesystem::path p = f.get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      spec.extra_files.push_back(p.string());
    }
  }
  return spec;
}

/// Relative extra_files resolve against the spec file's directory.
inline CatalogSpec parse_catalog_spec(const std::string& path) {
  return parse_catalog_spec_text(detail::read_text(path), path, std::filesystem::path(path).parent_path());
}

// ---------------------------------------------------------------------------
// Rank function files: "p: n1 n2 ..." and "default: n1 ...", '#' comments

inline RankFunction parse_rank_text(const std::string& text, const std::string& origin = "<rank>") {
  RankFunction R;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ": line " + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, where + ": expected 'key: values'");
    std::istringstream key(line.substr(0, colon));
    std::string k, extra;
    key >> k;
    if (k.empty() || (key >> extra)) throw Error(ErrorKind::ParseError, where + ": bad key");
    std::set<std::uint64_t> values;
    std::istringstream vals(line.substr(colon + 1));
    std::string tok;
    while (vals >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9 || std::stoull(tok) == 0) {
        throw Error(ErrorKind::ParseError, where + ": '" + tok + "' is not a positive integer");
      }
      values.insert(std::stoull(tok));
    }
    if (k == "default") {
      R.default_entry = std::move(values);
    } else {
      if (k.find_first_not_of("0123456789") != std::string::npos || k.size() > 9 || !is_prime(std::stoull(k))) {
        throw Error(ErrorKind::ParseError, where + ": '" + k + "' is not a prime");
      }
      const auto p = std::stoull(k);
      if (R.table.count(p)) throw Error(ErrorKind::ParseError, where + ": prime " + k + " listed twice");
      R.table[p] = std::move(values);
    }
    any = true;
  }
  if (!any) throw Error(ErrorKind::ParseError, origin + ": no entries");
  return R;
}

inline RankFunction parse_rank_file(const std::string& path) { return parse_rank_text(detail::read_text(path), path); }

// ---------------------------------------------------------------------------
// Verdict reports

struct VerdictRecord {
  std::string group;
  std::size_t order = 0;
  std::string check;
  std::string verdict;  // "pass" / "fail" for checks, "yes" / "no" for membership facts
  std::string witness;
  std::string version = engine_version();
  std::string timestamp;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

enum class ReportFormat { Jsonl, Csv };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "jsonl") return ReportFormat::Jsonl;
  if (s == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::ParseError, "unknown report format '" + s + "'");
}

/// UTC ISO-8601 time, taken from SOURCE_DATE_EPOCH when it is set.
inline std::string report_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH"); e && *e) {
    try {
      t = static_cast<std::time_t>(std::stoll(e));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "SOURCE_DATE_EPOCH is not an integer");
    }
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline VerdictRecord make_record(const std::string& group, std::size_t order, std::string check, bool pass,
                                 std::string witness = {}) {
  VerdictRecord r;
  r.group = group;
  r.order = order;
  r.check = std::move(check);
  r.verdict = pass ? "pass" : "fail";
  r.witness = pass ? "" : (witness.empty() ? "unspecified" : std::move(witness));
  r.timestamp = report_timestamp();
  return r;
}

inline void sort_records(std::vector<VerdictRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const VerdictRecord& a, const VerdictRecord& b) {
    return std::tie(a.group, a.check) < std::tie(b.group, b.check);
  });
}

namespace detail {

inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {"group", "order", "check", "verdict", "witness", "version", "timestamp"};
  return cols;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// RFC 4180 rows; quoted fields may contain separators and line breaks.
inline std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& origin) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, in_row = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    in_row = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      in_row = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorKind::ParseError, origin + ": unterminated quoted field");
  if (in_row) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline std::string format_verdicts(std::vector<VerdictRecord> records, ReportFormat format) {
  sort_records(records);
  std::string out;
  if (format == ReportFormat::Jsonl) {
    for (const auto& r : records) {
      nlohmann::ordered_json j;
      j["group"] = r.group;
      j["order"] = r.order;
      j["check"] = r.check;
      j["verdict"] = r.verdict;
      j["witness"] = r.witness;
      j["version"] = r.version;
      j["timestamp"] = r.timestamp;
      out += j.dump() + "\n";
    }
    return out;
  }
  const auto& cols = detail::record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\r\n";
  for (const auto& r : records) {
    const std::vector<std::string> f = {r.group, std::to_string(r.order), r.check, r.verdict, r.witness, r.version, r.timestamp};
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + detail::csv_field(f[i]);
    out += "\r\n";
  }
  return out;
}

inline void write_verdicts(const std::vector<VerdictRecord>& records, const std::string& path, ReportFormat format) {
  detail::write_text(path, format_verdicts(records, format));
}

inline std::vector<VerdictRecord> parse_verdicts(const std::string& text, ReportFormat format,
                                                 const std::string& origin = "<report>") {
  std::vector<VerdictRecord> out;
  auto check_invariant = [&](const VerdictRecord& r, const std::string& where) {
    if (r.verdict != "pass" && r.verdict != "fail" && r.verdict != "yes" && r.verdict != "no") throw Error(ErrorKind::ParseError, where + ": bad verdict");
    if (r.witness.empty() == (r.verdict == "fail")) {
      throw Error(ErrorKind::ParseError, where + ": witness must be present exactly for failures");
    }
  };
  if (format == ReportFormat::Jsonl) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const std::string where = origin + ": line " + std::to_string(lineno);
      const nlohmann::json j = detail::parse_json(line, where);
      if (!j.is_object() || j.size() != detail::record_columns().size()) {
        throw Error(ErrorKind::ParseError, where + ": expected the seven record keys");
      }
      VerdictRecord r;
      try {
        r.group = j.at("group").get<std::string>();
        r.order = j.at("order").get<std::size_t>();
        r.check = j.at("check").get<std::string>();
        r.verdict = j.at("verdict").get<std::string>();
        r.witness = j.at("witness").get<std::string>();
        r.version = j.at("version").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
      } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::ParseError, where + ": missing or mistyped record key");
      }
      check_invariant(r, where);
      out.push_back(std::move(r));
    }
    return out;
  }
  const auto rows = detail::csv_rows(text, origin);
  if (rows.empty() || rows.front() != detail::record_columns()) {
    throw Error(ErrorKind::ParseError, origin + ": missing CSV header");
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::string where = origin + ": row " + std::to_string(i);
    if (f.size() != detail::record_columns().size()) throw Error(ErrorKind::ParseError, where + ": wrong column count");
    VerdictRecord r;
    r.group = f[0];
    if (f[1].empty() || f[1].find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::ParseError, where + ": order is not an integer");
    }
    r.order = std::stoull(f[1]);
    r.check = f[2];
    r.verdict = f[3];
    r.witness = f[4];
    r.version = f[5];
    r.timestamp = f[6];
    check_invariant(r, where);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<VerdictRecord> read_verdicts(const std::string& path, ReportFormat format) {
  return parse_verdicts(detail::read_text(path), format, path);
}

}  // namespace formation_lab
