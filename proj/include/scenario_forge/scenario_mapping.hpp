// Mapping hyper alert groups into candidate attack scenarios: drop groups
// that do not cover the required attack stages, then drop alerts observed
// after the final attack stage (they belong to a fresh attempt, not this
// scenario).

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "scenario_forge/alert_model.hpp"

namespace scenario_forge {

struct CandidateSelection {
  std::vector<HyperAlertGroup> candidates;  ///< cover required_stages
  std::vector<HyperAlertGroup> rejected;    ///< everything else
};

/// Partitions groups by stage completeness: a candidate's stages_present
/// must be a superset of taxonomy.required_stages. Group contents are never
/// modified, only the list is split; candidates ∪ rejected = input.
inline CandidateSelection select_candidates(
    const std::vector<HyperAlertGroup>& groups,
    const StageTaxonomy& taxonomy) {
  CandidateSelection selection;
  for (const auto& group : groups) {
    bool complete = std::includes(
        group.stages_present.begin(), group.stages_present.end(),
        taxonomy.required_stages.begin(), taxonomy.required_stages.end());
    (complete ? selection.candidates : selection.rejected).push_back(group);
  }
  return selection;
}

/// Which last-stage alert timestamp anchors the cutoff. The default is the
/// maximum: anything an attacker does after their final observed action is
/// a new attempt. The minimum variant exists for sensitivity analysis.
enum class LateReference { max_last_stage, min_last_stage };

struct LateFilterResult {
  CandidateGroup group;
  /// True when the removal emptied a required stage; the group no longer
  /// satisfies stage completeness and must not enter scenario construction.
  bool demoted = false;
};

/// Removes alerts of earlier stages whose timestamp exceeds the reference
/// timestamp of the last attack stage; removed alerts land in
/// removed_late_alerts as an audit trail. Ties (timestamp == reference) are
/// kept, and last-stage alerts are never removed. Idempotent.
inline LateFilterResult filter_late_alerts(
    const HyperAlertGroup& candidate, const StageTaxonomy& taxonomy,
    LateReference reference = LateReference::max_last_stage) {
  if (candidate.alerts.empty() || candidate.stages_present.empty())
    throw std::logic_error("filter_late_alerts: empty candidate group");

  const StageIndex last_stage = *candidate.stages_present.rbegin();

  auto stage_of = [&](const Alert& alert) {
    auto stage = taxonomy.stage_of(alert.alert_type);
    if (!stage)
      throw std::logic_error("filter_late_alerts: unclassified alert type \"" +
                             alert.alert_type + "\"");
    return *stage;
  };

  bool found = false;
  double cutoff = 0.0;
  for (const auto& alert : candidate.alerts) {
    if (stage_of(alert) != last_stage) continue;
    if (!found) {
      cutoff = alert.timestamp;
      found = true;
    } else if (reference == LateReference::max_last_stage) {
      cutoff = std::max(cutoff, alert.timestamp);
    } else {
      cutoff = std::min(cutoff, alert.timestamp);
    }
  }
  if (!found)
    throw std::logic_error("filter_late_alerts: no alert in last stage");

  LateFilterResult result;
  auto& group = result.group;
  group.last_stage_reference_time = cutoff;
  group.base.target_ip = candidate.target_ip;
  for (const auto& alert : candidate.alerts) {
    StageIndex stage = stage_of(alert);
    if (stage < last_stage && alert.timestamp > cutoff) {
      group.removed_late_alerts.push_back(alert);
    } else {
      group.base.alerts.push_back(alert);
      group.base.stages_present.insert(stage);
    }
  }

  result.demoted = !std::includes(
      group.base.stages_present.begin(), group.base.stages_present.end(),
      taxonomy.required_stages.begin(), taxonomy.required_stages.end());
  return result;
}

}  // namespace scenario_forge
