// Alert log parsing (CSV and JSON-lines) and stage classification.
//
// CSV schema:   id,timestamp,alert_type,src_ip,dst_ip[,k=v;...]
// JSON-lines:   {"id":..,"ts":..,"type":..,"src":..,"dst":..,"attrs":{..}}
//
// Parsing is a pure function of the stream bytes: same bytes, same alerts.

#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "scenario_forge/alert_model.hpp"

namespace scenario_forge {

enum class LogFormat { csv, json_lines };

enum class UnknownTypeAction { drop, error, quarantine };

struct IngestPolicy {
  UnknownTypeAction unknown_type_action = UnknownTypeAction::drop;
  bool dedup_exact = false;  ///< drop byte-identical duplicate records
};

struct ParseIssue {
  std::size_t record_number = 0;  ///< 1-based line/record number
  std::string message;
};

struct ParseResult {
  std::vector<Alert> alerts;        ///< well-formed records, input order
  std::vector<ParseIssue> issues;   ///< skipped records (strict=false)
  std::size_t records_total = 0;    ///< non-empty data records seen
  std::size_t duplicates_dropped = 0;
};

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

inline std::optional<double> parse_timestamp(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if (!std::isfinite(value) || value < 0.0) return std::nullopt;
  return value;
}

inline std::optional<std::map<std::string, std::string>> parse_attrs(
    const std::string& text) {
  std::map<std::string, std::string> attrs;
  if (text.empty()) return attrs;
  for (const auto& pair : split(text, ';')) {
    if (pair.empty()) continue;
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) return std::nullopt;
    attrs[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  return attrs;
}

// Returns the parsed alert or an error message.
inline std::optional<Alert> parse_csv_record(const std::string& line,
                                             std::string& error) {
  auto fields = split(line, ',');
  if (fields.size() < 5) {
    error = "missing required column (expected id,timestamp,alert_type,"
            "src_ip,dst_ip[,attrs])";
    return std::nullopt;
  }
  if (fields.size() > 6) {
    error = "too many columns (" + std::to_string(fields.size()) + ")";
    return std::nullopt;
  }

  Alert alert;
  alert.id = fields[0];
  if (alert.id.empty()) {
    error = "empty id";
    return std::nullopt;
  }
  auto ts = parse_timestamp(fields[1]);
  if (!ts) {
    error = "malformed timestamp \"" + fields[1] + "\"";
    return std::nullopt;
  }
  alert.timestamp = *ts;
  alert.alert_type = fields[2];
  if (alert.alert_type.empty()) {
    error = "empty alert_type";
    return std::nullopt;
  }
  auto src = normalize_ip(fields[3]);
  auto dst = normalize_ip(fields[4]);
  if (!src || !dst) {
    error = "invalid IP syntax \"" + (src ? fields[4] : fields[3]) + "\"";
    return std::nullopt;
  }
  alert.source_ip = *src;
  alert.target_ip = *dst;
  if (fields.size() == 6) {
    auto attrs = parse_attrs(fields[5]);
    if (!attrs) {
      error = "malformed attributes \"" + fields[5] + "\"";
      return std::nullopt;
    }
    alert.attributes = std::move(*attrs);
  }
  return alert;
}

inline std::optional<Alert> parse_jsonl_record(const std::string& line,
                                               std::string& error) {
  nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
  if (record.is_discarded() || !record.is_object()) {
    error = "malformed JSON record";
    return std::nullopt;
  }
  for (const char* key : {"id", "ts", "type", "src", "dst"}) {
    if (!record.contains(key)) {
      error = std::string("missing required field \"") + key + "\"";
      return std::nullopt;
    }
  }

  Alert alert;
  if (record["id"].is_string())
    alert.id = record["id"].get<std::string>();
  else if (record["id"].is_number_integer())
    alert.id = std::to_string(record["id"].get<std::int64_t>());
  if (alert.id.empty()) {
    error = "empty id";
    return std::nullopt;
  }

  if (!record["ts"].is_number()) {
    error = "malformed timestamp";
    return std::nullopt;
  }
  alert.timestamp = record["ts"].get<double>();
  if (!std::isfinite(alert.timestamp) || alert.timestamp < 0.0) {
    error = "malformed timestamp";
    return std::nullopt;
  }

  if (!record["type"].is_string() || record["type"].get<std::string>().empty()) {
    error = "empty alert_type";
    return std::nullopt;
  }
  alert.alert_type = record["type"].get<std::string>();

  auto src = record["src"].is_string()
                 ? normalize_ip(record["src"].get<std::string>())
                 : std::nullopt;
  auto dst = record["dst"].is_string()
                 ? normalize_ip(record["dst"].get<std::string>())
                 : std::nullopt;
  if (!src || !dst) {
    error = "invalid IP syntax";
    return std::nullopt;
  }
  alert.source_ip = *src;
  alert.target_ip = *dst;

  if (record.contains("attrs")) {
    if (!record["attrs"].is_object()) {
      error = "\"attrs\" must be an object";
      return std::nullopt;
    }
    for (const auto& [key, value] : record["attrs"].items()) {
      if (!value.is_string()) {
        error = "attribute values must be strings";
        return std::nullopt;
      }
      alert.attributes[key] = value.get<std::string>();
    }
  }
  return alert;
}

}  // namespace detail

/// Parses an alert log into Alert records, preserving ingestion order.
/// With strict=true the first malformed record aborts via InputError;
/// otherwise malformed records are skipped and reported in issues.
/// A CSV header line ("id,timestamp,...") is recognized and skipped.
inline ParseResult parse_alert_log(std::istream& source, LogFormat format,
                                   const IngestPolicy& policy = {},
                                   bool strict = false) {
  ParseResult result;
  std::unordered_set<std::string> seen_lines;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_number = 0;

  auto fail = [&](const std::string& message) {
    if (strict)
      throw InputError("record " + std::to_string(line_number) + ": " +
                       message);
    result.issues.push_back({line_number, message});
  };

  while (std::getline(source, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (format == LogFormat::csv && line.rfind("id,timestamp", 0) == 0)
      continue;  // header row

    ++result.records_total;
    if (policy.dedup_exact && !seen_lines.insert(line).second) {
      ++result.duplicates_dropped;
      continue;
    }

    std::string error;
    auto alert = format == LogFormat::csv
                     ? detail::parse_csv_record(line, error)
                     : detail::parse_jsonl_record(line, error);
    if (!alert) {
      fail(error);
      continue;
    }
    if (!seen_ids.insert(alert->id).second) {
      fail("duplicate alert id \"" + alert->id + "\"");
      continue;
    }
    result.alerts.push_back(std::move(*alert));
  }
  return result;
}

/// Convenience overload over an in-memory log.
inline ParseResult parse_alert_log(const std::string& text, LogFormat format,
                                   const IngestPolicy& policy = {},
                                   bool strict = false) {
  std::istringstream stream(text);
  return parse_alert_log(stream, format, policy, strict);
}

struct ClassifiedAlert {
  Alert alert;
  StageIndex stage = 0;
};

/// Alerts split by what classification did with them. The three lists
/// always partition the input: |classified| + |dropped| + |quarantined|
/// equals the number of alerts given.
struct ClassifyResult {
  std::vector<ClassifiedAlert> classified;
  std::vector<Alert> quarantined;  ///< unknown types, policy=quarantine
  std::vector<Alert> dropped;      ///< unknown types, policy=drop
};

/// Pairs each alert with its stage index from the taxonomy. Alerts whose
/// type the taxonomy does not know are handled per policy.
inline ClassifyResult classify_alerts(const std::vector<Alert>& alerts,
                                      const StageTaxonomy& taxonomy,
                                      const IngestPolicy& policy = {}) {
  ClassifyResult result;
  for (const auto& alert : alerts) {
    auto stage = taxonomy.stage_of(alert.alert_type);
    if (stage) {
      result.classified.push_back({alert, *stage});
      continue;
    }
    switch (policy.unknown_type_action) {
      case UnknownTypeAction::drop:
        result.dropped.push_back(alert);
        break;
      case UnknownTypeAction::quarantine:
        result.quarantined.push_back(alert);
        break;
      case UnknownTypeAction::error:
        throw InputError("unknown alert type \"" + alert.alert_type +
                         "\" (alert id " + alert.id + ")");
    }
  }
  return result;
}

}  // namespace scenario_forge
