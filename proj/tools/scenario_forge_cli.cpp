// scenario-forge: reconstruct multi-stage attack scenarios from NIDS alert
// logs. Subcommands cover each pipeline phase plus synthetic fixtures.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <scenario_forge/scenario_forge.hpp>

namespace sf = scenario_forge;
namespace fs = std::filesystem;

namespace {

int log_threshold() {
  static const int level = [] {
    const char* env = std::getenv("SCENARIO_FORGE_LOG");
    if (!env) return 2;
    std::string v(env);
    for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "debug") return 0;
    if (v == "info") return 1;
    if (v == "warn" || v == "warning") return 2;
    if (v == "error") return 3;
    return 2;
  }();
  return level;
}

void logx(int lvl, const char* tag, const std::string& msg) {
  if (lvl >= log_threshold())
    std::fprintf(stderr, "scenario-forge %s: %s\n", tag, msg.c_str());
}
void log_debug(const std::string& msg) { logx(0, "debug", msg); }
void log_info(const std::string& msg) { logx(1, "info", msg); }
void log_error(const std::string& msg) { logx(3, "error", msg); }

struct Options {
  std::string alerts_path;
  std::string taxonomy_path;
  std::string spec_path;
  std::string graph_path;
  std::string truth_path;
  std::string out_dir;
  bool dedup = false;
  bool json_report = false;
  sf::PipelineOptions pipeline;
};

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw sf::InputError("cannot create output directory " + dir);
}

sf::StageTaxonomy load_taxonomy(const std::string& path, std::string& bytes) {
  bytes = sf::read_text_file(path);
  auto doc = nlohmann::json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) throw sf::InputError(path + ": not valid JSON");
  return sf::validate_taxonomy(doc);
}

nlohmann::json pipeline_manifest(const Options& o,
                                 const sf::StageTaxonomy& taxonomy,
                                 const std::string& alerts_bytes,
                                 const std::string& taxonomy_bytes) {
  return sf::make_manifest(o.pipeline.graph.theta, o.pipeline.bin_width,
                           taxonomy,
                           {{"alerts", sf::fnv1a64_hex(alerts_bytes)},
                            {"taxonomy", sf::fnv1a64_hex(taxonomy_bytes)}});
}

struct LoadedRun {
  sf::StageTaxonomy taxonomy;
  std::string alerts_bytes;
  std::string taxonomy_bytes;
  sf::PipelineResult result;
};

LoadedRun run_from_files(Options& o) {
  LoadedRun run;
  o.pipeline.policy.dedup_exact = o.dedup;
  run.taxonomy = load_taxonomy(o.taxonomy_path, run.taxonomy_bytes);
  run.alerts_bytes = sf::read_text_file(o.alerts_path);
  run.result = sf::run_pipeline(run.alerts_bytes, run.taxonomy, o.pipeline);
  log_info("parsed " + std::to_string(run.result.parsed.records_total) +
           " records, " + std::to_string(run.result.classified.classified.size()) +
           " classified alerts");
  log_info(std::to_string(run.result.groups.size()) + " hyper alert groups, " +
           std::to_string(run.result.scenarios.size()) + " scenarios");
  return run;
}

nlohmann::json candidates_report(const sf::PipelineResult& result,
                                 const sf::StageTaxonomy& taxonomy) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& scenario : result.scenarios) {
    auto doc = sf::candidate_to_json(scenario.candidate, taxonomy);
    doc["correlated"] = true;
    candidates.push_back(std::move(doc));
  }
  for (const auto& candidate : result.single_type) {
    auto doc = sf::candidate_to_json(candidate, taxonomy);
    doc["correlated"] = false;
    candidates.push_back(std::move(doc));
  }
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& group : result.rejected)
    rejected.push_back(sf::group_to_json(group, taxonomy));
  nlohmann::json demoted = nlohmann::json::array();
  for (const auto& candidate : result.demoted)
    demoted.push_back(sf::candidate_to_json(candidate, taxonomy));
  return {{"candidates", std::move(candidates)},
          {"rejected", std::move(rejected)},
          {"demoted", std::move(demoted)}};
}

void emit(const Options& o, const std::string& filename,
          const std::string& content) {
  if (o.out_dir.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  const auto path = fs::path(o.out_dir) / filename;
  sf::write_text_file(path, content);
  log_info("wrote " + path.string());
}

void cmd_ingest(Options& o) {
  LoadedRun run = run_from_files(o);
  if (!o.out_dir.empty()) ensure_out_dir(o.out_dir);
  emit(o, "alerts.json",
       dump(sf::ingest_report_to_json(run.result.parsed, run.result.classified,
                                      run.taxonomy)));
  if (!o.out_dir.empty())
    emit(o, "manifest.json",
         dump(pipeline_manifest(o, run.taxonomy, run.alerts_bytes,
                                run.taxonomy_bytes)));
}

void cmd_group(Options& o) {
  LoadedRun run = run_from_files(o);
  if (!o.out_dir.empty()) ensure_out_dir(o.out_dir);
  emit(o, "groups.json",
       dump(sf::groups_to_json(run.result.groups, run.taxonomy)));
  if (!o.out_dir.empty())
    emit(o, "manifest.json",
         dump(pipeline_manifest(o, run.taxonomy, run.alerts_bytes,
                                run.taxonomy_bytes)));
}

void cmd_map(Options& o) {
  LoadedRun run = run_from_files(o);
  if (!o.out_dir.empty()) ensure_out_dir(o.out_dir);
  emit(o, "candidates.json",
       dump(candidates_report(run.result, run.taxonomy)));
  if (!o.out_dir.empty())
    emit(o, "manifest.json",
         dump(pipeline_manifest(o, run.taxonomy, run.alerts_bytes,
                                run.taxonomy_bytes)));
}

void cmd_correlate(Options& o) {
  LoadedRun run = run_from_files(o);
  if (!o.out_dir.empty()) ensure_out_dir(o.out_dir);
  for (const auto& scenario : run.result.scenarios) {
    const auto& ip = scenario.candidate.base.target_ip;
    if (o.out_dir.empty()) {
      emit(o, "", "# target " + ip + "\n" + sf::matrix_to_csv(scenario.matrix));
    } else {
      emit(o, "matrix_" + sf::sanitize_filename(ip) + ".csv",
           sf::matrix_to_csv(scenario.matrix));
    }
  }
  if (!o.out_dir.empty())
    emit(o, "manifest.json",
         dump(pipeline_manifest(o, run.taxonomy, run.alerts_bytes,
                                run.taxonomy_bytes)));
}

void cmd_graph(Options& o) {
  LoadedRun run = run_from_files(o);
  if (!o.out_dir.empty()) ensure_out_dir(o.out_dir);
  for (const auto& scenario : run.result.scenarios) {
    const auto& ip = scenario.candidate.base.target_ip;
    if (o.out_dir.empty()) {
      emit(o, "", sf::graph_to_dot(scenario.graph));
    } else {
      const auto stem = "scenario_" + sf::sanitize_filename(ip);
      emit(o, stem + ".dot", sf::graph_to_dot(scenario.graph));
      emit(o, stem + ".json",
           dump(sf::graph_to_json(scenario.graph, &scenario.candidate)));
    }
  }
  if (!o.out_dir.empty())
    emit(o, "manifest.json",
         dump(pipeline_manifest(o, run.taxonomy, run.alerts_bytes,
                                run.taxonomy_bytes)));
}

void cmd_all(Options& o) {
  LoadedRun run = run_from_files(o);
  ensure_out_dir(o.out_dir);
  emit(o, "groups.json",
       dump(sf::groups_to_json(run.result.groups, run.taxonomy)));
  emit(o, "candidates.json", dump(candidates_report(run.result, run.taxonomy)));
  for (const auto& scenario : run.result.scenarios) {
    const auto ip = sf::sanitize_filename(scenario.candidate.base.target_ip);
    emit(o, "matrix_" + ip + ".csv", sf::matrix_to_csv(scenario.matrix));
    emit(o, "scenario_" + ip + ".dot", sf::graph_to_dot(scenario.graph));
    emit(o, "scenario_" + ip + ".json",
         dump(sf::graph_to_json(scenario.graph, &scenario.candidate)));
  }
  emit(o, "manifest.json",
       dump(pipeline_manifest(o, run.taxonomy, run.alerts_bytes,
                              run.taxonomy_bytes)));
}

void cmd_eval(Options& o) {
  const auto graph_bytes = sf::read_text_file(o.graph_path);
  auto graph_doc = nlohmann::json::parse(graph_bytes, nullptr, false);
  if (graph_doc.is_discarded())
    throw sf::InputError(o.graph_path + ": not valid JSON");
  auto loaded = sf::graph_from_json(graph_doc);
  if (!loaded.has_alert_ids)
    throw sf::InputError(
        "graph file carries no alert_ids; re-export the graph with this tool");

  const auto truth_bytes = sf::read_text_file(o.truth_path);
  auto truth_doc = nlohmann::json::parse(truth_bytes, nullptr, false);
  if (truth_doc.is_discarded())
    throw sf::InputError(o.truth_path + ": not valid JSON");
  const auto truths = sf::truths_from_json(truth_doc);

  const sf::GroundTruth* match = nullptr;
  for (const auto& truth : truths)
    if (truth.target_ip == loaded.graph.target_ip) match = &truth;
  if (!match) {
    if (truths.size() == 1)
      match = &truths.front();  // evaluate() reports the IP mismatch
    else
      throw sf::InputError("no ground truth entry targets " +
                           loaded.graph.target_ip);
  }

  const auto report = sf::evaluate(loaded.graph, loaded.candidate, *match);
  const auto report_json = sf::eval_report_to_json(report);
  if (o.json_report)
    std::fputs(dump(report_json).c_str(), stdout);
  else
    std::fputs(sf::eval_report_table(report).c_str(), stdout);

  if (!o.out_dir.empty()) {
    ensure_out_dir(o.out_dir);
    emit(o, "report.json", dump(report_json));
    nlohmann::json manifest{
        {"theta", loaded.graph.theta},
        {"bin_width", loaded.graph.bin_width},
        {"taxonomy_hash", nullptr},
        {"inputs",
         {{"graph", sf::fnv1a64_hex(graph_bytes)},
          {"truth", sf::fnv1a64_hex(truth_bytes)}}}};
    emit(o, "manifest.json", dump(manifest));
  }
}

void cmd_synth(Options& o) {
  const auto spec_bytes = sf::read_text_file(o.spec_path);
  auto spec_doc = nlohmann::json::parse(spec_bytes, nullptr, false);
  if (spec_doc.is_discarded())
    throw sf::InputError(o.spec_path + ": not valid JSON");
  const auto spec = sf::spec_from_json(spec_doc);

  sf::StageTaxonomy taxonomy;
  std::string taxonomy_bytes;
  if (!o.taxonomy_path.empty()) {
    taxonomy = load_taxonomy(o.taxonomy_path, taxonomy_bytes);
  } else if (spec_doc.contains("taxonomy")) {
    taxonomy = sf::validate_taxonomy(spec_doc["taxonomy"]);
    taxonomy_bytes = spec_doc["taxonomy"].dump();
  } else {
    throw sf::InputError(
        "synth needs --taxonomy or a \"taxonomy\" object in the spec file");
  }

  const auto synth = sf::generate(spec, taxonomy);
  log_info("generated " + std::to_string(synth.alerts.size()) + " alerts (" +
           std::to_string(synth.late_alert_ids.size()) + " late, " +
           std::to_string(synth.noise_alert_ids.size()) + " noise)");
  ensure_out_dir(o.out_dir);
  emit(o, "alerts.csv", sf::alerts_to_csv(synth.alerts));
  emit(o, "truth.json", dump(sf::truths_to_json(synth.truths)));
  emit(o, "manifest.json",
       dump(sf::make_manifest(
           o.pipeline.graph.theta, spec.bin_width, taxonomy,
           {{"spec", sf::fnv1a64_hex(spec_bytes)},
            {"taxonomy", sf::fnv1a64_hex(taxonomy_bytes)}})));
}

void add_input_flags(CLI::App* sub, Options& o) {
  sub->add_option("--alerts", o.alerts_path, "alert log file")->required();
  sub->add_option("--taxonomy", o.taxonomy_path, "stage taxonomy JSON")
      ->required();
  sub->add_option("--format", o.pipeline.format, "log format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, sf::LogFormat>{
              {"csv", sf::LogFormat::csv},
              {"jsonl", sf::LogFormat::json_lines}},
          CLI::ignore_case));
  sub->add_option("--policy", o.pipeline.policy.unknown_type_action,
                  "unknown alert type handling")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, sf::UnknownTypeAction>{
              {"drop", sf::UnknownTypeAction::drop},
              {"error", sf::UnknownTypeAction::error},
              {"quarantine", sf::UnknownTypeAction::quarantine}},
          CLI::ignore_case));
  sub->add_flag("--strict", o.pipeline.strict, "abort on first parse error");
  sub->add_flag("--dedup", o.dedup, "drop byte-identical duplicate records");
}

void add_mapping_flags(CLI::App* sub, Options& o) {
  sub->add_option("--late-ref", o.pipeline.late_reference,
                  "reference time for late-alert removal")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, sf::LateReference>{
              {"max", sf::LateReference::max_last_stage},
              {"min", sf::LateReference::min_last_stage}},
          CLI::ignore_case));
}

void add_graph_flags(CLI::App* sub, Options& o) {
  sub->add_option("--bin", o.pipeline.bin_width,
                  "time bin width in seconds");
  sub->add_option("--theta", o.pipeline.graph.theta,
                  "correlation threshold in (0,1]");
  sub->add_option("--edges", o.pipeline.graph.scope, "edge scope")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, sf::EdgeScope>{
              {"adjacent", sf::EdgeScope::adjacent_stages},
              {"any-forward", sf::EdgeScope::any_forward}},
          CLI::ignore_case));
  sub->add_flag("--positive-only", o.pipeline.graph.positive_only,
                "keep only edges with r >= theta");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "scenario-forge: reconstructs multi-stage attack scenarios from NIDS "
      "alert streams"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "parse and classify an alert log");
  add_input_flags(ingest, o);
  ingest->add_option("--out", o.out_dir, "output directory");
  ingest->callback([&] { cmd_ingest(o); });

  auto* group = app.add_subcommand("group", "build hyper alert groups");
  add_input_flags(group, o);
  group->add_option("--out", o.out_dir, "output directory");
  group->callback([&] { cmd_group(o); });

  auto* map_cmd = app.add_subcommand(
      "map", "select candidate groups and remove late alerts");
  add_input_flags(map_cmd, o);
  add_mapping_flags(map_cmd, o);
  map_cmd->add_option("--out", o.out_dir, "output directory");
  map_cmd->callback([&] { cmd_map(o); });

  auto* correlate = app.add_subcommand(
      "correlate", "emit a correlation matrix per candidate");
  add_input_flags(correlate, o);
  add_mapping_flags(correlate, o);
  add_graph_flags(correlate, o);
  correlate->add_option("--out", o.out_dir, "output directory");
  correlate->callback([&] { cmd_correlate(o); });

  auto* graph = app.add_subcommand(
      "graph", "build scenario graphs (DOT and JSON) per candidate");
  add_input_flags(graph, o);
  add_mapping_flags(graph, o);
  add_graph_flags(graph, o);
  graph->add_option("--out", o.out_dir, "output directory");
  graph->callback([&] { cmd_graph(o); });

  auto* eval = app.add_subcommand(
      "eval", "score a scenario graph against ground truth");
  eval->add_option("--graph", o.graph_path, "graph JSON from this tool")
      ->required();
  eval->add_option("--truth", o.truth_path, "ground truth JSON")->required();
  eval->add_flag("--json", o.json_report, "print the report as JSON");
  eval->add_option("--out", o.out_dir, "output directory");
  eval->callback([&] { cmd_eval(o); });

  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic alert log with ground truth");
  synth->add_option("--spec", o.spec_path, "scenario spec JSON")->required();
  synth->add_option("--taxonomy", o.taxonomy_path,
                    "stage taxonomy JSON (or embed \"taxonomy\" in the spec)");
  synth->add_option("--out", o.out_dir, "output directory")->required();
  synth->callback([&] { cmd_synth(o); });

  auto* all = app.add_subcommand("all", "run the full pipeline");
  add_input_flags(all, o);
  add_mapping_flags(all, o);
  add_graph_flags(all, o);
  all->add_option("--out", o.out_dir, "output directory")->required();
  all->callback([&] { cmd_all(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const sf::InputError& e) {
    log_error(e.what());
    return 1;
  } catch (const std::exception& e) {
    log_error(std::string("internal error: ") + e.what());
    return 2;
  }
  log_debug("done");
  return 0;
}
