// Domain types shared by the whole pipeline: alerts, the stage taxonomy,
// alert groups, correlation matrices, scenario graphs and evaluation reports.
// All types are plain value types, immutable by convention after construction,
// and safe to share across concurrent readers.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <arpa/inet.h>

#include <json.hpp>

namespace scenario_forge {

/// Bad user input (files, configs, CLI values). The CLI maps this to exit 1;
/// anything else escaping to main is treated as an internal error (exit 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1-based index into StageTaxonomy::stages.
using StageIndex = std::size_t;

// ---------------------------------------------------------------------------
// IP address handling
// ---------------------------------------------------------------------------

/// Canonicalizes an IPv4/IPv6 address string, or returns nullopt if the
/// syntax is invalid. IPv4 octets may carry leading zeros (some alert logs
/// write 172.016.112.010); they are read as decimal and re-emitted without
/// padding, so equality on the result is plain string equality.
inline std::optional<std::string> normalize_ip(std::string_view text) {
  if (text.empty()) return std::nullopt;

  // IPv4: exactly four 1-3 digit decimal octets.
  {
    std::uint32_t octets[4];
    std::size_t part = 0;
    std::size_t digits = 0;
    std::uint32_t value = 0;
    bool ok = true;
    for (std::size_t i = 0; i <= text.size() && ok; ++i) {
      if (i == text.size() || text[i] == '.') {
        if (digits == 0 || digits > 3 || part >= 4 || value > 255) {
          ok = false;
        } else {
          octets[part++] = value;
          value = 0;
          digits = 0;
        }
      } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::uint32_t>(text[i] - '0');
        ++digits;
      } else {
        ok = false;
      }
    }
    if (ok && part == 4) {
      return std::to_string(octets[0]) + "." + std::to_string(octets[1]) +
             "." + std::to_string(octets[2]) + "." + std::to_string(octets[3]);
    }
  }

  // IPv6 via the platform parser.
  {
    std::string zero_terminated(text);
    unsigned char buf[16];
    if (inet_pton(AF_INET6, zero_terminated.c_str(), buf) == 1) {
      char out[INET6_ADDRSTRLEN] = {};
      if (inet_ntop(AF_INET6, buf, out, sizeof(out)) != nullptr) {
        return std::string(out);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Core records
// ---------------------------------------------------------------------------

/// One NIDS alert record.
struct Alert {
  std::string id;          ///< unique within one ingested batch
  double timestamp = 0.0;  ///< epoch seconds, millisecond resolution
  std::string alert_type;  ///< signature name, e.g. "Sadmind_Ping"
  std::string source_ip;
  std::string target_ip;
  std::map<std::string, std::string> attributes;  ///< extra log fields

  bool operator==(const Alert&) const = default;
};

/// Ordered attack-stage list plus the alert-type -> stage mapping that the
/// rest of the pipeline classifies against. required_stages lists the stage
/// indices a group must cover to count as a complete scenario (defaults to
/// all stages; a narrower set admits scenarios whose early stages the sensor
/// never reports).
struct StageTaxonomy {
  std::vector<std::string> stages;  ///< position i holds stage index i+1
  std::unordered_map<std::string, StageIndex> type_to_stage;
  std::set<StageIndex> required_stages;

  StageIndex stage_count() const { return stages.size(); }

  std::optional<StageIndex> stage_of(const std::string& alert_type) const {
    auto it = type_to_stage.find(alert_type);
    if (it == type_to_stage.end()) return std::nullopt;
    return it->second;
  }

  const std::string& stage_name(StageIndex index) const {
    if (index == 0 || index > stages.size())
      throw std::logic_error("stage index out of range: " +
                             std::to_string(index));
    return stages[index - 1];
  }

  std::optional<StageIndex> stage_index_of_name(std::string_view name) const {
    for (StageIndex i = 0; i < stages.size(); ++i)
      if (stages[i] == name) return i + 1;
    return std::nullopt;
  }

  bool operator==(const StageTaxonomy& other) const {
    return stages == other.stages &&
           std::map(type_to_stage.begin(), type_to_stage.end()) ==
               std::map(other.type_to_stage.begin(),
                        other.type_to_stage.end()) &&
           required_stages == other.required_stages;
  }
};

/// All alerts sharing one target IP, merged across stages.
struct HyperAlertGroup {
  std::string target_ip;
  std::vector<Alert> alerts;
  std::set<StageIndex> stages_present;
};

/// A stage-complete group after late-alert filtering. removed_late_alerts is
/// the audit trail of alerts discarded because they were observed after the
/// final attack stage.
struct CandidateGroup {
  HyperAlertGroup base;
  std::vector<Alert> removed_late_alerts;
  double last_stage_reference_time = 0.0;
};

/// Symmetric matrix of pairwise correlation strengths between alert types.
/// An entry is nullopt ("undefined") when either count series is constant;
/// that is deliberately distinct from a zero correlation.
struct CorrelationMatrix {
  std::vector<std::string> types;
  std::vector<std::vector<std::optional<double>>> entries;
  double bin_width = 0.0;  ///< seconds per bin of the underlying series

  std::optional<std::size_t> index_of(const std::string& type) const {
    auto it = std::find(types.begin(), types.end(), type);
    if (it == types.end()) return std::nullopt;
    return static_cast<std::size_t>(it - types.begin());
  }

  std::optional<double> at(std::size_t i, std::size_t j) const {
    return entries.at(i).at(j);
  }
};

struct ScenarioNode {
  std::string alert_type;
  StageIndex stage = 0;
  std::size_t count = 0;  ///< occurrences inside the candidate group

  bool operator==(const ScenarioNode&) const = default;
};

struct ScenarioEdge {
  std::string from;
  std::string to;
  double weight = 0.0;  ///< signed correlation strength r

  bool operator==(const ScenarioEdge&) const = default;
};

/// Directed acyclic scenario graph over alert types. Edges always point from
/// a lower attack stage to a strictly higher one; self_loops marks types that
/// occurred at least twice (repeated attack attempts) and is kept separate
/// from the edge relation.
struct ScenarioGraph {
  std::string target_ip;
  std::vector<ScenarioNode> nodes;
  std::vector<ScenarioEdge> edges;
  std::set<std::string> self_loops;
  double theta = 0.0;      ///< acceptance threshold the edges satisfied
  double bin_width = 0.0;  ///< binning behind the correlation values

  const ScenarioNode* find_node(const std::string& type) const {
    for (const auto& n : nodes)
      if (n.alert_type == type) return &n;
    return nullptr;
  }
};

/// Completeness (Rc) and soundness (Rs) of one reconstructed scenario.
struct EvaluationReport {
  double completeness = 0.0;  ///< Rc = correctly_correlated / related
  double soundness = 0.0;     ///< Rs = correctly_correlated / correlated
  std::size_t correctly_correlated = 0;
  std::size_t related = 0;
  std::size_t correlated = 0;
};

// ---------------------------------------------------------------------------
// Taxonomy config
// ---------------------------------------------------------------------------

/// Builds a validated StageTaxonomy from a parsed taxonomy config document:
///   { "stages": [...], "mapping": {type: stage name},
///     "required_stages": [...] }   (required_stages optional, default: all)
inline StageTaxonomy validate_taxonomy(const nlohmann::json& raw) {
  if (!raw.is_object()) throw InputError("taxonomy: document must be an object");
  if (!raw.contains("stages") || !raw["stages"].is_array())
    throw InputError("taxonomy: missing \"stages\" array");
  if (!raw.contains("mapping") || !raw["mapping"].is_object())
    throw InputError("taxonomy: missing \"mapping\" object");

  StageTaxonomy taxonomy;
  for (const auto& stage : raw["stages"]) {
    if (!stage.is_string() || stage.get<std::string>().empty())
      throw InputError("taxonomy: stage names must be non-empty strings");
    const auto name = stage.get<std::string>();
    if (std::find(taxonomy.stages.begin(), taxonomy.stages.end(), name) !=
        taxonomy.stages.end())
      throw InputError("taxonomy: duplicate stage name \"" + name + "\"");
    taxonomy.stages.push_back(name);
  }
  if (taxonomy.stages.empty())
    throw InputError("taxonomy: at least one stage is required");

  for (const auto& [type, stage] : raw["mapping"].items()) {
    if (type.empty())
      throw InputError("taxonomy: empty alert type in mapping");
    if (!stage.is_string())
      throw InputError("taxonomy: mapping values must be stage names");
    auto index = taxonomy.stage_index_of_name(stage.get<std::string>());
    if (!index)
      throw InputError("taxonomy: alert type \"" + type +
                       "\" mapped to unknown stage \"" +
                       stage.get<std::string>() + "\"");
    taxonomy.type_to_stage.emplace(type, *index);
  }

  if (raw.contains("required_stages")) {
    if (!raw["required_stages"].is_array())
      throw InputError("taxonomy: \"required_stages\" must be an array");
    for (const auto& stage : raw["required_stages"]) {
      if (!stage.is_string())
        throw InputError("taxonomy: required stage entries must be names");
      auto index = taxonomy.stage_index_of_name(stage.get<std::string>());
      if (!index)
        throw InputError("taxonomy: required stage \"" +
                         stage.get<std::string>() + "\" is not a stage");
      taxonomy.required_stages.insert(*index);
    }
    if (taxonomy.required_stages.empty())
      throw InputError("taxonomy: \"required_stages\" must not be empty");
  } else {
    for (StageIndex i = 1; i <= taxonomy.stage_count(); ++i)
      taxonomy.required_stages.insert(i);
  }
  return taxonomy;
}

/// Inverse of validate_taxonomy; round-trips through validate_taxonomy.
inline nlohmann::json taxonomy_to_json(const StageTaxonomy& taxonomy) {
  nlohmann::json doc;
  doc["stages"] = taxonomy.stages;
  nlohmann::json mapping = nlohmann::json::object();
  // Ordered for deterministic serialization.
  std::map<std::string, StageIndex> sorted(taxonomy.type_to_stage.begin(),
                                           taxonomy.type_to_stage.end());
  for (const auto& [type, stage] : sorted)
    mapping[type] = taxonomy.stage_name(stage);
  doc["mapping"] = mapping;
  nlohmann::json required = nlohmann::json::array();
  for (StageIndex i : taxonomy.required_stages)
    required.push_back(taxonomy.stage_name(i));
  doc["required_stages"] = required;
  return doc;
}

}  // namespace scenario_forge
