// Synthetic multi-stage alert dataset generator with exact ground truth.
//
// Each planted host gets one alert block per plan stage, stages spaced by
// inter_stage_gap. Correlation between planted types is steerable through
// the time layout:
//   - with a gap smaller than the bin width the stage blocks collapse into
//     one bin, so every planted type's count series is proportional and all
//     pairwise correlations are exactly +1;
//   - a type marked "decorrelated" is pushed into its own distant bin
//     (before the block for earlier stages, after it for the final stage),
//     which drives its correlation with everything else towards 0.
// Late alerts reuse earlier-stage types but are stamped strictly after the
// scenario's final-stage maximum, so the mapping phase must remove them.
// Noise alerts each get their own target IP and a single stage, so stage
// completeness must reject their groups.
//
// Same seed, same output, byte for byte. The RNG only ever touches noise.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenario_forge/alert_model.hpp"
#include "scenario_forge/evaluation.hpp"

namespace scenario_forge {

struct PlannedType {
  std::string alert_type;
  std::size_t count = 1;
  bool repeat_attempts = false;  ///< marks deliberate retries; needs count >= 2
  bool decorrelated = false;     ///< isolate this type's bin pattern
};

struct StagePlanEntry {
  std::string stage;  ///< taxonomy stage name
  std::vector<PlannedType> types;
};

struct ScenarioSpec {
  std::vector<std::string> hosts;  ///< target IPs to compromise
  std::vector<StagePlanEntry> stage_plan;
  double inter_stage_gap = 300.0;  ///< seconds between stage blocks
  std::size_t noise_alerts = 0;  ///< single-stage alerts on fresh IPs, total
  std::size_t late_alerts = 0;   ///< injected post-final-stage alerts, total,
                                 ///< spread round-robin over the hosts
  std::uint64_t seed = 1;
  double bin_width = 60.0;  ///< bin geometry the layout is aligned to
};

struct SynthResult {
  std::vector<Alert> alerts;  ///< global timestamp order
  std::vector<GroundTruth> truths;  ///< one per planted host
  std::vector<std::string> late_alert_ids;
  std::vector<std::string> noise_alert_ids;
};

inline ScenarioSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("scenario spec: not an object");
  ScenarioSpec spec;
  if (!doc.contains("hosts") || !doc["hosts"].is_array())
    throw InputError("scenario spec: missing \"hosts\" array");
  for (const auto& host : doc["hosts"])
    spec.hosts.push_back(host.get<std::string>());
  if (!doc.contains("stage_plan") || !doc["stage_plan"].is_array())
    throw InputError("scenario spec: missing \"stage_plan\" array");
  for (const auto& entry : doc["stage_plan"]) {
    StagePlanEntry plan;
    plan.stage = entry.at("stage").get<std::string>();
    for (const auto& t : entry.at("types")) {
      PlannedType type;
      type.alert_type = t.at("type").get<std::string>();
      type.count = t.value("count", std::size_t{1});
      type.repeat_attempts = t.value("repeat", false);
      type.decorrelated = t.value("decorrelated", false);
      plan.types.push_back(std::move(type));
    }
    spec.stage_plan.push_back(std::move(plan));
  }
  spec.inter_stage_gap = doc.value("inter_stage_gap", 300.0);
  spec.noise_alerts = doc.value("noise_alerts", std::size_t{0});
  spec.late_alerts = doc.value("late_alerts", std::size_t{0});
  spec.seed = doc.value("seed", std::uint64_t{1});
  spec.bin_width = doc.value("bin_width", 60.0);
  return spec;
}

inline nlohmann::json spec_to_json(const ScenarioSpec& spec) {
  nlohmann::json doc;
  doc["hosts"] = spec.hosts;
  doc["stage_plan"] = nlohmann::json::array();
  for (const auto& entry : spec.stage_plan) {
    nlohmann::json types = nlohmann::json::array();
    for (const auto& t : entry.types)
      types.push_back({{"type", t.alert_type},
                       {"count", t.count},
                       {"repeat", t.repeat_attempts},
                       {"decorrelated", t.decorrelated}});
    doc["stage_plan"].push_back({{"stage", entry.stage}, {"types", types}});
  }
  doc["inter_stage_gap"] = spec.inter_stage_gap;
  doc["noise_alerts"] = spec.noise_alerts;
  doc["late_alerts"] = spec.late_alerts;
  doc["seed"] = spec.seed;
  doc["bin_width"] = spec.bin_width;
  return doc;
}

namespace detail {

struct PlannedStage {
  StageIndex stage = 0;
  std::vector<PlannedType> types;
};

inline std::vector<PlannedStage> validate_spec(const ScenarioSpec& spec,
                                               const StageTaxonomy& taxonomy) {
  if (spec.bin_width <= 0.0)
    throw InputError("scenario spec: bin_width must be positive");
  if (spec.inter_stage_gap < 0.0)
    throw InputError("scenario spec: inter_stage_gap must be non-negative");

  std::vector<PlannedStage> plan;
  for (const auto& entry : spec.stage_plan) {
    auto stage = taxonomy.stage_index_of_name(entry.stage);
    if (!stage)
      throw InputError("scenario spec: unknown stage \"" + entry.stage + "\"");
    for (const auto& type : entry.types) {
      auto mapped = taxonomy.stage_of(type.alert_type);
      if (!mapped)
        throw InputError("scenario spec: alert type \"" + type.alert_type +
                         "\" is not in the taxonomy");
      if (*mapped != *stage)
        throw InputError("scenario spec: alert type \"" + type.alert_type +
                         "\" belongs to stage \"" +
                         taxonomy.stage_name(*mapped) + "\", not \"" +
                         entry.stage + "\"");
      if (type.repeat_attempts && type.count < 2)
        throw InputError("scenario spec: repeat-attempt type \"" +
                         type.alert_type + "\" needs count >= 2");
    }
    plan.push_back({*stage, entry.types});
  }
  std::sort(plan.begin(), plan.end(),
            [](const PlannedStage& a, const PlannedStage& b) {
              return a.stage < b.stage;
            });
  for (std::size_t i = 0; i + 1 < plan.size(); ++i)
    if (plan[i].stage == plan[i + 1].stage)
      throw InputError("scenario spec: stage \"" +
                       taxonomy.stage_name(plan[i].stage) +
                       "\" appears twice in stage_plan");

  std::set<StageIndex> covered;
  for (const auto& entry : plan)
    for (const auto& type : entry.types)
      if (type.count > 0) covered.insert(entry.stage);
  for (StageIndex required : taxonomy.required_stages)
    if (!covered.contains(required))
      throw InputError("scenario spec: stage_plan missing required stage \"" +
                       taxonomy.stage_name(required) + "\"");

  if (!spec.hosts.empty() && spec.late_alerts > 0) {
    bool has_earlier = false;
    for (const auto& entry : plan)
      if (entry.stage != plan.back().stage)
        for (const auto& type : entry.types)
          if (type.count > 0) has_earlier = true;
    if (!has_earlier)
      throw InputError(
          "scenario spec: late alerts need an earlier-stage type to reuse");
  }

  for (const auto& host : spec.hosts) {
    auto normalized = normalize_ip(host);
    if (!normalized)
      throw InputError("scenario spec: invalid host IP \"" + host + "\"");
    if (normalized->rfind("10.200.", 0) == 0)
      throw InputError("scenario spec: host " + *normalized +
                       " collides with the 10.200.0.0/16 noise pool");
  }
  return plan;
}

}  // namespace detail

/// Generates the alert stream and ground truth for a scenario spec.
inline SynthResult generate(const ScenarioSpec& spec,
                            const StageTaxonomy& taxonomy) {
  const auto plan = detail::validate_spec(spec, taxonomy);
  const double w = spec.bin_width;
  constexpr double kBaseTime = 1000000.0;

  struct Pending {
    double timestamp;
    std::string alert_type;
    std::string source_ip;
    std::string target_ip;
    std::size_t creation_order;
    int kind;  // 0 scenario, 1 late, 2 noise
    std::size_t host;
  };
  std::vector<Pending> pending;
  auto add = [&](double ts, const std::string& type, const std::string& src,
                 const std::string& dst, int kind, std::size_t host) {
    pending.push_back({ts, type, src, dst, pending.size(), kind, host});
  };

  const StageIndex last_stage = plan.empty() ? 0 : plan.back().stage;
  std::vector<std::string> earlier_types;
  for (const auto& entry : plan)
    if (entry.stage != last_stage)
      for (const auto& type : entry.types)
        if (type.count > 0) earlier_types.push_back(type.alert_type);

  std::vector<double> scenario_max(spec.hosts.size(), kBaseTime);
  std::vector<std::string> attackers(spec.hosts.size());

  for (std::size_t h = 0; h < spec.hosts.size(); ++h) {
    const std::string target = *normalize_ip(spec.hosts[h]);
    const std::string attacker =
        "203.0.113." + std::to_string(h % 253 + 1);
    attackers[h] = attacker;
    // Hosts are independent targets; 1000 bins apart keeps the CSV readable.
    const double anchor = kBaseTime + static_cast<double>(h) * w * 1000.0;

    scenario_max[h] = anchor;
    std::size_t sequence = 0;     // 1 ms steps inside the stage blocks
    std::size_t decorr_rank = 0;  // each decorrelated type gets its own bin

    for (std::size_t p = 0; p < plan.size(); ++p) {
      const double block = anchor + static_cast<double>(p) * spec.inter_stage_gap;
      for (const auto& type : plan[p].types) {
        double slot = block;
        if (type.decorrelated) {
          const double offset =
              (5.0 + 5.0 * static_cast<double>(decorr_rank++)) * w;
          slot = plan[p].stage == last_stage ? anchor + offset : anchor - offset;
        }
        for (std::size_t copy = 0; copy < type.count; ++copy) {
          const double ts =
              slot + (type.decorrelated
                          ? static_cast<double>(copy) * 0.001
                          : static_cast<double>(sequence++) * 0.001);
          add(ts, type.alert_type, attacker, target, 0, h);
          scenario_max[h] = std::max(scenario_max[h], ts);
        }
      }
    }
  }

  // Injected late alerts: earlier-stage types stamped strictly after the
  // owning host's final-stage maximum, spread round-robin over the hosts.
  // The mapping phase must peel exactly these off again.
  if (!spec.hosts.empty()) {
    for (std::size_t m = 0; m < spec.late_alerts; ++m) {
      const std::size_t h = m % spec.hosts.size();
      const std::size_t round = m / spec.hosts.size();
      const auto& type = earlier_types[m % earlier_types.size()];
      add(scenario_max[h] + static_cast<double>(round + 1) * w, type,
          attackers[h], *normalize_ip(spec.hosts[h]), 1, h);
    }
  }

  // Noise: one alert on one fresh IP each, so every noise group is
  // single-stage by construction.
  std::vector<std::string> noise_types;
  {
    std::map<std::string, StageIndex> sorted(taxonomy.type_to_stage.begin(),
                                             taxonomy.type_to_stage.end());
    const bool avoid_required = taxonomy.required_stages.size() == 1;
    for (const auto& [type, stage] : sorted)
      if (!avoid_required || !taxonomy.required_stages.contains(stage))
        noise_types.push_back(type);
    if (noise_types.empty())
      for (const auto& [type, stage] : sorted) noise_types.push_back(type);
  }
  if (spec.noise_alerts > 0 && noise_types.empty())
    throw InputError("scenario spec: taxonomy has no types to use as noise");

  double global_min = kBaseTime;
  double global_max = kBaseTime;
  for (const auto& p : pending) {
    global_min = std::min(global_min, p.timestamp);
    global_max = std::max(global_max, p.timestamp);
  }
  std::mt19937_64 rng(spec.seed);
  for (std::size_t m = 0; m < spec.noise_alerts; ++m) {
    const std::string target = "10.200." + std::to_string(m / 254) + "." +
                               std::to_string(m % 254 + 1);
    const std::string source =
        "198.51.100." + std::to_string(rng() % 253 + 1);
    const auto& type = noise_types[rng() % noise_types.size()];
    const double span = global_max - global_min;
    const double ts =
        span > 0.0
            ? global_min + (static_cast<double>(rng() % 100000) / 100000.0) *
                               span
            : global_min + static_cast<double>(m) * w;
    add(std::floor(ts * 1000.0) / 1000.0, type, source, target, 2, 0);
  }

  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) {
                     if (a.timestamp != b.timestamp)
                       return a.timestamp < b.timestamp;
                     return a.creation_order < b.creation_order;
                   });

  SynthResult result;
  std::vector<std::set<std::string>> related(spec.hosts.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto& p = pending[i];
    Alert alert;
    alert.id = std::to_string(i + 1);
    alert.timestamp = p.timestamp;
    alert.alert_type = p.alert_type;
    alert.source_ip = p.source_ip;
    alert.target_ip = p.target_ip;
    result.alerts.push_back(alert);
    switch (p.kind) {
      case 0: related[p.host].insert(alert.id); break;
      case 1: result.late_alert_ids.push_back(alert.id); break;
      case 2: result.noise_alert_ids.push_back(alert.id); break;
    }
  }
  for (std::size_t h = 0; h < spec.hosts.size(); ++h) {
    GroundTruth truth;
    truth.scenario_id = "scenario-" + std::to_string(h + 1);
    truth.target_ip = *normalize_ip(spec.hosts[h]);
    truth.related_alert_ids = std::move(related[h]);
    result.truths.push_back(std::move(truth));
  }
  return result;
}

}  // namespace scenario_forge
