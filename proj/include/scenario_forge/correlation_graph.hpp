// Attack scenario construction: per-type time-binned count series over a
// candidate group, pairwise Pearson correlation between those series, and
// the stage-ordered scenario DAG whose edges carry correlation strength.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scenario_forge/alert_model.hpp"

namespace scenario_forge {

/// Occurrence counts of one alert type over fixed-width time bins. All
/// series built from one candidate share origin, bin_width and length.
struct CountSeries {
  std::string alert_type;
  std::vector<std::uint64_t> bins;
  double bin_width = 0.0;  ///< seconds
  double origin = 0.0;     ///< timestamp of bin 0 (candidate's earliest alert)
};

/// Builds one count series per distinct alert type in the candidate.
///
/// The candidate's time span [min ts, max ts] is covered by half-open bins
/// [origin + k*w, origin + (k+1)*w); the bin count is chosen so the latest
/// alert falls inside the last bin (a span that is an exact multiple of the
/// width gets one extra bin for its right endpoint). When every alert shares
/// one bin, an empty trailing bin is appended so a series can still be
/// non-constant; series length is therefore always >= 2.
///
/// Series are ordered by alert type name.
inline std::vector<CountSeries> build_count_series(
    const CandidateGroup& candidate, double bin_width) {
  if (bin_width <= 0.0)
    throw InputError("bin width must be positive, got " +
                     std::to_string(bin_width));
  const auto& alerts = candidate.base.alerts;
  if (alerts.empty())
    throw std::logic_error("build_count_series: empty candidate group");

  double min_ts = alerts.front().timestamp;
  double max_ts = alerts.front().timestamp;
  for (const auto& alert : alerts) {
    min_ts = std::min(min_ts, alert.timestamp);
    max_ts = std::max(max_ts, alert.timestamp);
  }

  auto bin_of = [&](double ts) {
    return static_cast<std::size_t>(std::floor((ts - min_ts) / bin_width));
  };
  std::size_t bin_count = std::max<std::size_t>(bin_of(max_ts) + 1, 2);

  std::map<std::string, CountSeries> by_type;
  for (const auto& alert : alerts) {
    auto [it, inserted] = by_type.try_emplace(alert.alert_type);
    if (inserted) {
      it->second.alert_type = alert.alert_type;
      it->second.bins.assign(bin_count, 0);
      it->second.bin_width = bin_width;
      it->second.origin = min_ts;
    }
    ++it->second.bins[bin_of(alert.timestamp)];
  }

  std::vector<CountSeries> series;
  series.reserve(by_type.size());
  for (auto& [type, s] : by_type) series.push_back(std::move(s));
  return series;
}

/// Pearson correlation coefficient between two count series, evaluated in
/// the centered (mean-subtracted) form and clamped to [-1, 1]. Returns
/// nullopt when either series is constant: the coefficient is undefined
/// there, which is not the same thing as uncorrelated.
inline std::optional<double> pearson(const CountSeries& x,
                                     const CountSeries& y) {
  if (x.bins.size() != y.bins.size())
    throw std::invalid_argument("pearson: series length mismatch (" +
                                std::to_string(x.bins.size()) + " vs " +
                                std::to_string(y.bins.size()) + ")");
  if (x.bins.size() < 2)
    throw std::invalid_argument("pearson: need at least 2 samples");
  if (x.origin != y.origin || x.bin_width != y.bin_width)
    throw std::invalid_argument("pearson: series binning mismatch");

  const std::size_t n = x.bins.size();
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += static_cast<double>(x.bins[i]);
    mean_y += static_cast<double>(y.bins[i]);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = static_cast<double>(x.bins[i]) - mean_x;
    double dy = static_cast<double>(y.bins[i]) - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Computes the full symmetric correlation matrix over all unordered type
/// pairs. Only occurrence counts over time enter the computation; IP fields
/// never do. Diagonal entries are 1 for non-constant series and undefined
/// for constant ones.
inline CorrelationMatrix correlation_matrix(
    const std::vector<CountSeries>& series) {
  if (series.size() < 2)
    throw InputError("correlation matrix requires at least 2 series, got " +
                     std::to_string(series.size()));

  CorrelationMatrix matrix;
  matrix.bin_width = series.front().bin_width;
  for (const auto& s : series) matrix.types.push_back(s.alert_type);
  const std::size_t n = series.size();
  matrix.entries.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& bins = series[i].bins;
    const bool constant =
        std::adjacent_find(bins.begin(), bins.end(),
                           std::not_equal_to<>()) == bins.end();
    if (!constant) matrix.entries[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      auto r = pearson(series[i], series[j]);
      matrix.entries[i][j] = r;
      matrix.entries[j][i] = r;
    }
  }
  return matrix;
}

/// Which forward stage pairs may carry an edge.
enum class EdgeScope {
  adjacent_stages,  ///< only consecutive stages among those in the group
  any_forward       ///< any lower stage to any higher stage
};

struct GraphOptions {
  double theta = 0.5;  ///< edge acceptance threshold, in (0, 1]
  EdgeScope scope = EdgeScope::adjacent_stages;
  bool positive_only = false;  ///< accept r >= theta instead of |r| >= theta
};

/// Builds the scenario DAG for one candidate group. Nodes are the distinct
/// alert types (with stage and occurrence count); a directed edge t1 -> t2
/// exists iff stage(t1) < stage(t2), the pair is within the configured edge
/// scope, r(t1, t2) is defined, and it passes the threshold. Types occurring
/// at least twice get a self-loop (repeated attack attempts). Because edges
/// always climb stages, the graph is acyclic apart from self-loops.
inline ScenarioGraph build_scenario_graph(const CandidateGroup& candidate,
                                          const CorrelationMatrix& matrix,
                                          const StageTaxonomy& taxonomy,
                                          const GraphOptions& options = {}) {
  if (!(options.theta > 0.0 && options.theta <= 1.0))
    throw InputError("theta must lie in (0, 1], got " +
                     std::to_string(options.theta));

  ScenarioGraph graph;
  graph.target_ip = candidate.base.target_ip;
  graph.theta = options.theta;
  graph.bin_width = matrix.bin_width;

  std::map<std::string, std::size_t> counts;
  for (const auto& alert : candidate.base.alerts) ++counts[alert.alert_type];

  for (const auto& [type, count] : counts) {
    auto stage = taxonomy.stage_of(type);
    if (!stage)
      throw InputError("alert type \"" + type + "\" missing from taxonomy");
    if (!matrix.index_of(type))
      throw InputError("alert type \"" + type +
                       "\" missing from correlation matrix");
    graph.nodes.push_back({type, *stage, count});
    if (count >= 2) graph.self_loops.insert(type);
  }
  std::sort(graph.nodes.begin(), graph.nodes.end(),
            [](const ScenarioNode& a, const ScenarioNode& b) {
              if (a.stage != b.stage) return a.stage < b.stage;
              return a.alert_type < b.alert_type;
            });

  // Stage adjacency is relative to the stages actually present: in a group
  // covering stages {2,3,4}, 2 -> 3 and 3 -> 4 are adjacent.
  std::vector<StageIndex> stages;
  for (const auto& node : graph.nodes)
    if (stages.empty() || stages.back() != node.stage)
      stages.push_back(node.stage);
  std::map<StageIndex, StageIndex> next_stage;
  for (std::size_t i = 0; i + 1 < stages.size(); ++i)
    next_stage[stages[i]] = stages[i + 1];

  for (const auto& from : graph.nodes) {
    for (const auto& to : graph.nodes) {
      if (from.stage >= to.stage) continue;
      if (options.scope == EdgeScope::adjacent_stages &&
          next_stage[from.stage] != to.stage)
        continue;
      auto r = matrix.at(*matrix.index_of(from.alert_type),
                         *matrix.index_of(to.alert_type));
      if (!r) continue;
      double strength = options.positive_only ? *r : std::abs(*r);
      if (strength >= options.theta)
        graph.edges.push_back({from.alert_type, to.alert_type, *r});
    }
  }
  return graph;
}

}  // namespace scenario_forge
