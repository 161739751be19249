// Completeness (Rc) and soundness (Rs) of a constructed scenario against
// ground-truth labels.
//
// An alert counts as correlated when its type appears in the graph with at
// least one incident inter-type edge; a self-loop alone encodes repetition,
// not correlation, so it does not qualify.

#pragma once

#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "scenario_forge/alert_model.hpp"

namespace scenario_forge {

/// Labels for one true attack scenario.
struct GroundTruth {
  std::string scenario_id;
  std::set<std::string> related_alert_ids;
  std::string target_ip;
};

/// Scores the graph built from `candidate` against `truth`.
/// Requires truth.target_ip == candidate target; related ids must be
/// non-empty per the GroundTruth contract.
inline EvaluationReport evaluate(const ScenarioGraph& graph,
                                 const CandidateGroup& candidate,
                                 const GroundTruth& truth) {
  if (truth.target_ip != candidate.base.target_ip)
    throw InputError("ground truth targets " + truth.target_ip +
                     " but candidate targets " + candidate.base.target_ip);
  if (truth.related_alert_ids.empty())
    throw InputError("ground truth has no related alert ids");

  std::unordered_set<std::string> connected_types;
  for (const auto& edge : graph.edges) {
    connected_types.insert(edge.from);
    connected_types.insert(edge.to);
  }

  EvaluationReport report;
  report.related = truth.related_alert_ids.size();
  for (const auto& alert : candidate.base.alerts) {
    if (!connected_types.contains(alert.alert_type)) continue;
    ++report.correlated;
    if (truth.related_alert_ids.contains(alert.id))
      ++report.correctly_correlated;
  }
  report.completeness = static_cast<double>(report.correctly_correlated) /
                        static_cast<double>(report.related);
  report.soundness =
      report.correlated == 0
          ? 0.0
          : static_cast<double>(report.correctly_correlated) /
                static_cast<double>(report.correlated);
  return report;
}

}  // namespace scenario_forge
