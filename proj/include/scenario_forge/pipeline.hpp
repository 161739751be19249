// End-to-end composition: parse, classify, group, map, correlate, graph.
// The CLI `all` subcommand and the end-to-end tests run through this.

#pragma once

#include <istream>
#include <string>
#include <vector>

#include "scenario_forge/alert_model.hpp"
#include "scenario_forge/correlation_graph.hpp"
#include "scenario_forge/grouping.hpp"
#include "scenario_forge/ingestion.hpp"
#include "scenario_forge/scenario_mapping.hpp"

namespace scenario_forge {

struct PipelineOptions {
  LogFormat format = LogFormat::csv;
  IngestPolicy policy;
  bool strict = false;
  double bin_width = 60.0;
  GraphOptions graph;
  LateReference late_reference = LateReference::max_last_stage;
};

/// One reconstructed scenario: the candidate after late-alert removal, its
/// correlation matrix, and the graph built from it.
struct Scenario {
  CandidateGroup candidate;
  CorrelationMatrix matrix;
  ScenarioGraph graph;
};

struct PipelineResult {
  ParseResult parsed;
  ClassifyResult classified;
  std::vector<HyperAlertGroup> groups;
  std::vector<HyperAlertGroup> rejected;   ///< failed stage completeness
  std::vector<CandidateGroup> demoted;     ///< lost coverage to Eq-2 removal
  std::vector<CandidateGroup> single_type; ///< too few types to correlate
  std::vector<Scenario> scenarios;
};

inline PipelineResult run_pipeline(std::istream& source,
                                   const StageTaxonomy& taxonomy,
                                   const PipelineOptions& options = {}) {
  PipelineResult result;
  result.parsed =
      parse_alert_log(source, options.format, options.policy, options.strict);
  result.classified =
      classify_alerts(result.parsed.alerts, taxonomy, options.policy);
  result.groups = merge_inter_stage(group_intra_stage(result.classified.classified));

  auto selection = select_candidates(result.groups, taxonomy);
  result.rejected = std::move(selection.rejected);

  for (const auto& group : selection.candidates) {
    auto filtered =
        filter_late_alerts(group, taxonomy, options.late_reference);
    if (filtered.demoted) {
      result.demoted.push_back(std::move(filtered.group));
      continue;
    }
    auto series = build_count_series(filtered.group, options.bin_width);
    if (series.size() < 2) {
      result.single_type.push_back(std::move(filtered.group));
      continue;
    }
    Scenario scenario;
    scenario.matrix = correlation_matrix(series);
    scenario.graph = build_scenario_graph(filtered.group, scenario.matrix,
                                          taxonomy, options.graph);
    scenario.candidate = std::move(filtered.group);
    result.scenarios.push_back(std::move(scenario));
  }
  return result;
}

inline PipelineResult run_pipeline(const std::string& text,
                                   const StageTaxonomy& taxonomy,
                                   const PipelineOptions& options = {}) {
  std::istringstream stream(text);
  return run_pipeline(stream, taxonomy, options);
}

}  // namespace scenario_forge
