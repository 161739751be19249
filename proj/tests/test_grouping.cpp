#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "test_helpers.hpp"

using namespace scenario_forge;
using testutil::mk;

namespace {

std::vector<ClassifiedAlert> random_classified(std::size_t count,
                                               std::size_t ip_count,
                                               std::uint64_t seed) {
  const auto taxonomy = testutil::darpa_taxonomy();
  std::vector<std::string> types;
  for (const auto& [type, stage] : taxonomy.type_to_stage)
    types.push_back(type);
  std::sort(types.begin(), types.end());

  std::mt19937_64 rng(seed);
  std::vector<Alert> alerts;
  for (std::size_t i = 0; i < count; ++i) {
    const auto ip = "10.1." + std::to_string(rng() % ip_count) + ".5";
    const auto& type = types[rng() % types.size()];
    alerts.push_back(mk(std::to_string(i + 1),
                        1000.0 + static_cast<double>(rng() % 100000) / 10.0,
                        type, ip));
  }
  return classify_alerts(alerts, taxonomy).classified;
}

}  // namespace

TEST_CASE("alerts with one target across stages form one group", "[group]") {
  const auto taxonomy = testutil::darpa_taxonomy();
  const auto classified =
      classify_alerts({mk("1", 10.0, "Sadmind_Ping", "172.16.112.50"),
                       mk("2", 20.0, "Admind", "172.16.112.50"),
                       mk("3", 30.0, "Rsh", "172.16.112.50")},
                      taxonomy)
          .classified;
  const auto groups = merge_inter_stage(group_intra_stage(classified));
  REQUIRE(groups.size() == 1);
  CHECK(groups.front().target_ip == "172.16.112.50");
  CHECK(groups.front().stages_present == std::set<StageIndex>{1, 2, 3});
  CHECK(groups.front().alerts.size() == 3);
}

TEST_CASE("intra-stage grouping partitions each stage by target", "[group]") {
  const auto taxonomy = testutil::darpa_taxonomy();
  const auto classified =
      classify_alerts({mk("1", 10.0, "Sadmind_Ping", "10.0.0.1"),
                       mk("2", 11.0, "FTP_Syst", "10.0.0.2"),
                       mk("3", 12.0, "Sadmind_Ping", "10.0.0.1"),
                       mk("4", 13.0, "Admind", "10.0.0.1")},
                      taxonomy)
          .classified;
  const auto stage_groups = group_intra_stage(classified);
  REQUIRE(stage_groups.size() == 2);
  REQUIRE(stage_groups.at(1).size() == 2);
  CHECK(stage_groups.at(1)[0].target_ip == "10.0.0.1");
  CHECK(stage_groups.at(1)[0].alerts.size() == 2);
  CHECK(stage_groups.at(1)[1].target_ip == "10.0.0.2");
  REQUIRE(stage_groups.at(2).size() == 1);
}

TEST_CASE("merging partitions the input alerts", "[group]") {
  const auto classified = random_classified(1000, 20, 99);
  const auto groups = merge_inter_stage(group_intra_stage(classified));

  std::map<std::string, std::string> owner;
  std::size_t total = 0;
  for (const auto& group : groups) {
    for (const auto& alert : group.alerts) {
      ++total;
      CHECK(alert.target_ip == group.target_ip);
      auto [it, inserted] = owner.emplace(alert.id, group.target_ip);
      CHECK(inserted);
    }
  }
  CHECK(total == classified.size());

  for (const auto& group : groups) {
    std::set<StageIndex> stages;
    const auto taxonomy = testutil::darpa_taxonomy();
    for (const auto& alert : group.alerts)
      stages.insert(*taxonomy.stage_of(alert.alert_type));
    CHECK(stages == group.stages_present);
  }
}

TEST_CASE("regrouping merged output is a no-op", "[group]") {
  const auto taxonomy = testutil::darpa_taxonomy();
  const auto classified = random_classified(500, 10, 7);
  const auto groups = merge_inter_stage(group_intra_stage(classified));

  std::vector<Alert> flattened;
  for (const auto& group : groups)
    for (const auto& alert : group.alerts) flattened.push_back(alert);
  const auto regrouped = merge_inter_stage(
      group_intra_stage(classify_alerts(flattened, taxonomy).classified));

  REQUIRE(regrouped.size() == groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(regrouped[i].target_ip == groups[i].target_ip);
    CHECK(regrouped[i].stages_present == groups[i].stages_present);
    CHECK(regrouped[i].alerts == groups[i].alerts);
  }
}

TEST_CASE("group order is deterministic and stage-then-time sorted", "[group]") {
  const auto taxonomy = testutil::darpa_taxonomy();
  const auto classified =
      classify_alerts({mk("1", 50.0, "Rsh", "10.0.0.3"),
                       mk("2", 40.0, "Sadmind_Ping", "10.0.0.2"),
                       mk("3", 10.0, "Sadmind_Ping", "10.0.0.1"),
                       mk("4", 5.0, "Admind", "10.0.0.1")},
                      taxonomy)
          .classified;
  const auto groups = merge_inter_stage(group_intra_stage(classified));
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].target_ip == "10.0.0.1");
  CHECK(groups[1].target_ip == "10.0.0.2");
  CHECK(groups[2].target_ip == "10.0.0.3");
}

TEST_CASE("empty input yields no groups", "[group]") {
  CHECK(merge_inter_stage(group_intra_stage({})).empty());
}
