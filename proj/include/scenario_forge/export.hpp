// Serialization: DOT and JSON graph export, matrix CSV, alert CSV, ground
// truth and report files, plus the run manifest.
//
// Everything here is deterministic. Collections are emitted in sorted or
// pipeline order, JSON objects are key-sorted by nlohmann::json, and floats
// use fixed formats. Identical inputs give byte-identical files.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scenario_forge/alert_model.hpp"
#include "scenario_forge/correlation_graph.hpp"
#include "scenario_forge/evaluation.hpp"
#include "scenario_forge/ingestion.hpp"
#include "scenario_forge/scenario_mapping.hpp"

namespace scenario_forge {

/// FNV-1a 64-bit content fingerprint. Not cryptographic; the manifest only
/// needs to tell "same input" from "different input".
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : data) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

inline std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

/// Makes an IP usable as a filename fragment (IPv6 colons become '_').
inline std::string sanitize_filename(std::string_view ip) {
  std::string out(ip);
  for (char& c : out)
    if (c == ':') c = '_';
  return out;
}

namespace detail {

inline std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

inline std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string csv_attrs(const std::map<std::string, std::string>& attrs) {
  std::string out;
  for (const auto& [key, value] : attrs) {
    if (!out.empty()) out.push_back(';');
    out += key;
    out.push_back('=');
    out += value;
  }
  return out;
}

}  // namespace detail

// --- alerts ---

inline std::string alerts_to_csv(const std::vector<Alert>& alerts) {
  std::string out = "id,timestamp,alert_type,src_ip,dst_ip\n";
  for (const auto& alert : alerts) {
    out += alert.id;
    out.push_back(',');
    out += detail::fixed(alert.timestamp, 3);
    out.push_back(',');
    out += alert.alert_type;
    out.push_back(',');
    out += alert.source_ip;
    out.push_back(',');
    out += alert.target_ip;
    if (!alert.attributes.empty()) {
      out.push_back(',');
      out += detail::csv_attrs(alert.attributes);
    }
    out.push_back('\n');
  }
  return out;
}

inline nlohmann::json alert_to_json(const Alert& alert) {
  nlohmann::json doc{{"id", alert.id},
                     {"ts", alert.timestamp},
                     {"type", alert.alert_type},
                     {"src", alert.source_ip},
                     {"dst", alert.target_ip}};
  if (!alert.attributes.empty()) doc["attrs"] = alert.attributes;
  return doc;
}

inline nlohmann::json ingest_report_to_json(const ParseResult& parsed,
                                            const ClassifyResult& classified,
                                            const StageTaxonomy& taxonomy) {
  nlohmann::json alerts = nlohmann::json::array();
  for (const auto& entry : classified.classified) {
    auto doc = alert_to_json(entry.alert);
    doc["stage"] = taxonomy.stage_name(entry.stage);
    alerts.push_back(std::move(doc));
  }
  nlohmann::json quarantined = nlohmann::json::array();
  for (const auto& alert : classified.quarantined)
    quarantined.push_back(alert_to_json(alert));
  nlohmann::json dropped_ids = nlohmann::json::array();
  for (const auto& alert : classified.dropped) dropped_ids.push_back(alert.id);
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& issue : parsed.issues)
    issues.push_back(nlohmann::json{{"record", issue.record_number},
                                    {"message", issue.message}});
  return {{"alerts", std::move(alerts)},
          {"dropped_ids", std::move(dropped_ids)},
          {"quarantined", std::move(quarantined)},
          {"records_total", parsed.records_total},
          {"duplicates_dropped", parsed.duplicates_dropped},
          {"parse_issues", std::move(issues)}};
}

// --- groups and candidates ---

inline nlohmann::json group_to_json(const HyperAlertGroup& group,
                                    const StageTaxonomy& taxonomy) {
  nlohmann::json stages = nlohmann::json::array();
  for (StageIndex stage : group.stages_present)
    stages.push_back(taxonomy.stage_name(stage));
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& alert : group.alerts) ids.push_back(alert.id);
  return {{"target_ip", group.target_ip},
          {"stages_present", std::move(stages)},
          {"alert_count", group.alerts.size()},
          {"alert_ids", std::move(ids)}};
}

inline nlohmann::json groups_to_json(const std::vector<HyperAlertGroup>& groups,
                                     const StageTaxonomy& taxonomy) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& group : groups) out.push_back(group_to_json(group, taxonomy));
  return {{"groups", std::move(out)}};
}

inline nlohmann::json candidate_to_json(const CandidateGroup& candidate,
                                        const StageTaxonomy& taxonomy) {
  auto doc = group_to_json(candidate.base, taxonomy);
  nlohmann::json removed = nlohmann::json::array();
  for (const auto& alert : candidate.removed_late_alerts)
    removed.push_back(alert.id);
  doc["removed_late_alert_ids"] = std::move(removed);
  doc["last_stage_reference_time"] = candidate.last_stage_reference_time;
  return doc;
}

// --- correlation matrix ---

inline std::string matrix_to_csv(const CorrelationMatrix& matrix) {
  std::string out = "type";
  for (const auto& type : matrix.types) {
    out.push_back(',');
    out += type;
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < matrix.types.size(); ++i) {
    out += matrix.types[i];
    for (std::size_t j = 0; j < matrix.types.size(); ++j) {
      out.push_back(',');
      const auto& r = matrix.entries[i][j];
      out += r ? detail::fixed(*r, 6) : "undefined";
    }
    out.push_back('\n');
  }
  return out;
}

// --- scenario graph ---

inline std::string graph_to_dot(const ScenarioGraph& graph) {
  std::string out = "digraph scenario {\n";
  out += "  rankdir=LR;\n";
  out += "  label=\"target " + detail::dot_escape(graph.target_ip) +
         "\";\n  node [shape=box];\n";
  for (const auto& node : graph.nodes) {
    out += "  \"" + detail::dot_escape(node.alert_type) + "\" [label=\"" +
           detail::dot_escape(node.alert_type) + "\\n" +
           std::to_string(node.stage) + ":" + std::to_string(node.count) +
           "\"];\n";
  }
  for (const auto& edge : graph.edges) {
    out += "  \"" + detail::dot_escape(edge.from) + "\" -> \"" +
           detail::dot_escape(edge.to) + "\" [label=\"" +
           detail::fixed(edge.weight, 4) + "\"];\n";
  }
  for (const auto& type : graph.self_loops) {
    const auto* node = graph.find_node(type);
    out += "  \"" + detail::dot_escape(type) + "\" -> \"" +
           detail::dot_escape(type) + "\" [label=\"x" +
           std::to_string(node ? node->count : 0) + "\"];\n";
  }
  out += "}\n";
  return out;
}

/// Graph as JSON. When the candidate is supplied each node also carries the
/// ids of the alerts behind it, which is what lets `eval` work from a graph
/// file alone.
inline nlohmann::json graph_to_json(const ScenarioGraph& graph,
                                    const CandidateGroup* candidate = nullptr) {
  std::map<std::string, std::vector<std::string>> ids_by_type;
  if (candidate)
    for (const auto& alert : candidate->base.alerts)
      ids_by_type[alert.alert_type].push_back(alert.id);

  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& node : graph.nodes) {
    nlohmann::json doc{{"type", node.alert_type},
                       {"stage", node.stage},
                       {"count", node.count}};
    if (candidate) doc["alert_ids"] = ids_by_type[node.alert_type];
    nodes.push_back(std::move(doc));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& edge : graph.edges)
    edges.push_back(
        {{"from", edge.from}, {"to", edge.to}, {"r", edge.weight}});
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"meta",
           {{"target_ip", graph.target_ip},
            {"theta", graph.theta},
            {"bin_width", graph.bin_width}}}};
}

struct LoadedGraph {
  ScenarioGraph graph;
  CandidateGroup candidate;  ///< alerts carry id and type only
  bool has_alert_ids = false;
};

inline LoadedGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges") ||
      !doc.contains("meta"))
    throw InputError("graph file: expected keys nodes, edges, meta");
  LoadedGraph loaded;
  const auto& meta = doc["meta"];
  loaded.graph.target_ip = meta.at("target_ip").get<std::string>();
  loaded.graph.theta = meta.value("theta", 0.0);
  loaded.graph.bin_width = meta.value("bin_width", 0.0);
  loaded.candidate.base.target_ip = loaded.graph.target_ip;
  for (const auto& node : doc["nodes"]) {
    ScenarioNode n;
    n.alert_type = node.at("type").get<std::string>();
    n.stage = node.at("stage").get<StageIndex>();
    n.count = node.at("count").get<std::size_t>();
    loaded.graph.nodes.push_back(n);
    if (n.count >= 2) loaded.graph.self_loops.insert(n.alert_type);
    if (node.contains("alert_ids")) {
      loaded.has_alert_ids = true;
      for (const auto& id : node["alert_ids"]) {
        Alert alert;
        alert.id = id.get<std::string>();
        alert.alert_type = n.alert_type;
        alert.target_ip = loaded.graph.target_ip;
        loaded.candidate.base.alerts.push_back(std::move(alert));
      }
    }
    loaded.candidate.base.stages_present.insert(n.stage);
  }
  for (const auto& edge : doc["edges"]) {
    loaded.graph.edges.push_back({edge.at("from").get<std::string>(),
                                  edge.at("to").get<std::string>(),
                                  edge.at("r").get<double>()});
  }
  return loaded;
}

// --- ground truth ---

inline GroundTruth truth_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw InputError("truth file: expected a JSON object");
  GroundTruth truth;
  truth.scenario_id = doc.value("scenario_id", std::string{});
  if (!doc.contains("target_ip"))
    throw InputError("truth file: missing \"target_ip\"");
  truth.target_ip = doc["target_ip"].get<std::string>();
  if (!doc.contains("related_alert_ids") ||
      !doc["related_alert_ids"].is_array())
    throw InputError("truth file: missing \"related_alert_ids\" array");
  for (const auto& id : doc["related_alert_ids"])
    truth.related_alert_ids.insert(id.is_string()
                                       ? id.get<std::string>()
                                       : id.dump());
  return truth;
}

/// Accepts a single truth object, a bare array, or {"truths": [...]}.
inline std::vector<GroundTruth> truths_from_json(const nlohmann::json& doc) {
  std::vector<GroundTruth> truths;
  if (doc.is_array()) {
    for (const auto& entry : doc) truths.push_back(truth_from_json(entry));
  } else if (doc.is_object() && doc.contains("truths")) {
    for (const auto& entry : doc["truths"])
      truths.push_back(truth_from_json(entry));
  } else {
    truths.push_back(truth_from_json(doc));
  }
  if (truths.empty()) throw InputError("truth file: no ground truth entries");
  return truths;
}

inline nlohmann::json truth_to_json(const GroundTruth& truth) {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& id : truth.related_alert_ids) ids.push_back(id);
  return {{"scenario_id", truth.scenario_id},
          {"target_ip", truth.target_ip},
          {"related_alert_ids", std::move(ids)}};
}

inline nlohmann::json truths_to_json(const std::vector<GroundTruth>& truths) {
  if (truths.size() == 1) return truth_to_json(truths.front());
  nlohmann::json out = nlohmann::json::array();
  for (const auto& truth : truths) out.push_back(truth_to_json(truth));
  return {{"truths", std::move(out)}};
}

// --- evaluation report ---

inline nlohmann::json eval_report_to_json(const EvaluationReport& report) {
  return {{"completeness", report.completeness},
          {"soundness", report.soundness},
          {"correctly_correlated", report.correctly_correlated},
          {"related", report.related},
          {"correlated", report.correlated}};
}

inline std::string eval_report_table(const EvaluationReport& report) {
  std::string out;
  out += "metric                 value\n";
  out += "---------------------  -----\n";
  out += "correctly correlated   " + std::to_string(report.correctly_correlated) + "\n";
  out += "related (truth)        " + std::to_string(report.related) + "\n";
  out += "correlated (graph)     " + std::to_string(report.correlated) + "\n";
  out += "completeness Rc        " + detail::fixed(report.completeness, 4) + "\n";
  out += "soundness Rs           " + detail::fixed(report.soundness, 4) + "\n";
  return out;
}

// --- manifest and files ---

inline nlohmann::json make_manifest(
    double theta, double bin_width, const StageTaxonomy& taxonomy,
    const std::vector<std::pair<std::string, std::string>>& input_hashes) {
  nlohmann::json inputs;
  for (const auto& [name, hash] : input_hashes) inputs[name] = hash;
  return {{"theta", theta},
          {"bin_width", bin_width},
          {"taxonomy_hash", fnv1a64_hex(taxonomy_to_json(taxonomy).dump())},
          {"inputs", std::move(inputs)}};
}

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("failed writing " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) throw InputError("failed reading " + path.string());
  return content;
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw InputError(path.string() + ": not valid JSON");
  return doc;
}

}  // namespace scenario_forge
