// Related-alert identification: partition each stage's alerts by exact
// target-IP equality, then merge groups that share a target IP across
// stages into hyper alert groups.
//
// Source IPs never participate in grouping (they are easily spoofed);
// target equality is exact normalized-string equality, no subnet logic.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "scenario_forge/alert_model.hpp"
#include "scenario_forge/ingestion.hpp"

namespace scenario_forge {

/// One stage's alerts sharing a target IP.
struct IntraStageGroup {
  std::string target_ip;
  std::vector<Alert> alerts;
};

/// stage index -> groups, group order within a stage = first-seen order.
using StageGroups = std::map<StageIndex, std::vector<IntraStageGroup>>;

/// Partitions each stage's alerts into groups keyed by target IP.
/// Empty input yields an empty map.
inline StageGroups group_intra_stage(
    const std::vector<ClassifiedAlert>& classified) {
  StageGroups per_stage;
  std::map<StageIndex, std::unordered_map<std::string, std::size_t>> index;
  for (const auto& entry : classified) {
    auto& groups = per_stage[entry.stage];
    auto& by_ip = index[entry.stage];
    auto it = by_ip.find(entry.alert.target_ip);
    if (it == by_ip.end()) {
      by_ip.emplace(entry.alert.target_ip, groups.size());
      groups.push_back({entry.alert.target_ip, {entry.alert}});
    } else {
      groups[it->second].alerts.push_back(entry.alert);
    }
  }
  return per_stage;
}

/// Merges intra-stage groups that share a target IP into one hyper alert
/// group per distinct target, accumulating stages_present. Alerts keep
/// (stage, first-seen) order; the group list is ordered by lowest stage
/// present, then earliest alert timestamp, then target IP, so numbering is
/// reproducible across runs.
inline std::vector<HyperAlertGroup> merge_inter_stage(
    const StageGroups& per_stage) {
  std::vector<HyperAlertGroup> merged;
  std::unordered_map<std::string, std::size_t> by_ip;
  for (const auto& [stage, groups] : per_stage) {
    for (const auto& group : groups) {
      auto it = by_ip.find(group.target_ip);
      if (it == by_ip.end()) {
        by_ip.emplace(group.target_ip, merged.size());
        merged.push_back({group.target_ip, group.alerts, {stage}});
      } else {
        auto& hyper = merged[it->second];
        hyper.alerts.insert(hyper.alerts.end(), group.alerts.begin(),
                            group.alerts.end());
        hyper.stages_present.insert(stage);
      }
    }
  }

  auto earliest = [](const HyperAlertGroup& g) {
    double t = std::numeric_limits<double>::infinity();
    for (const auto& a : g.alerts) t = std::min(t, a.timestamp);
    return t;
  };
  std::stable_sort(merged.begin(), merged.end(),
                   [&](const HyperAlertGroup& a, const HyperAlertGroup& b) {
                     StageIndex sa = *a.stages_present.begin();
                     StageIndex sb = *b.stages_present.begin();
                     if (sa != sb) return sa < sb;
                     double ta = earliest(a);
                     double tb = earliest(b);
                     if (ta != tb) return ta < tb;
                     return a.target_ip < b.target_ip;
                   });
  return merged;
}

}  // namespace scenario_forge
