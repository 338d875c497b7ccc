#include "travelkit/cli/dispatch.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "travelkit/agent/session.hpp"
#include "travelkit/bench/matcher.hpp"
#include "travelkit/bench/mcq.hpp"
#include "travelkit/bench/scoring.hpp"
#include "travelkit/core/jsonl.hpp"
#include "travelkit/forge/composition.hpp"
#include "travelkit/forge/pipeline.hpp"
#include "travelkit/forge/split.hpp"
#include "travelkit/plan/feasibility.hpp"
#include "travelkit/plan/solver.hpp"
#include "travelkit/study/sus.hpp"
#include "travelkit/tools/server.hpp"

namespace travelkit::cli {
namespace {

namespace fs = std::filesystem;

constexpr int kRecordFormat = 1;

// A field that is missing or does not parse. Reported with exit status 1.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error("invalid config: field '" + field + "': " + what) {}
};

// Flag values for one command. Flags win over --config entries.
class Options {
 public:
  std::map<std::string, std::string> flags;

  void merge_config(const fs::path& path) {
    Json cfg;
    try {
      cfg = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
      throw ConfigError("config", std::string("not valid JSON: ") + e.what());
    } catch (const Error& e) {
      throw ConfigError("config", e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config", "must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      if (!known_.contains(key)) throw ConfigError(key, "not an option of this command");
      if (flags.contains(key) && !flags[key].empty()) continue;
      if (value.is_string()) {
        flags[key] = value.get<std::string>();
      } else if (value.is_number() || value.is_boolean()) {
        flags[key] = value.dump();
      } else {
        throw ConfigError(key, "must be a string, number or boolean");
      }
    }
  }

  void declare(const std::string& name) { known_.insert(name); }

  bool has(const std::string& name) const {
    auto it = flags.find(name);
    return it != flags.end() && !it->second.empty();
  }

  std::string str(const std::string& name) const {
    if (!has(name)) throw ConfigError(name, "missing");
    return flags.at(name);
  }
  std::string str_or(const std::string& name, const std::string& fallback) const {
    return has(name) ? flags.at(name) : fallback;
  }

  fs::path input_file(const std::string& name) const {
    fs::path p = str(name);
    if (!fs::is_regular_file(p)) throw ConfigError(name, "no such file: " + p.string());
    return p;
  }
  fs::path input_dir(const std::string& name) const {
    fs::path p = str(name);
    if (!fs::is_directory(p)) throw ConfigError(name, "no such directory: " + p.string());
    return p;
  }

  std::uint64_t u64(const std::string& name) const {
    const std::string s = str(name);
    try {
      std::size_t used = 0;
      if (s.starts_with("-")) throw std::invalid_argument("negative");
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(name, "expected a non-negative integer, got '" + s + "'");
    }
  }
  std::uint64_t u64_or(const std::string& name, std::uint64_t fallback) const {
    return has(name) ? u64(name) : fallback;
  }
  int int_in(const std::string& name, int fallback, int lo, int hi) const {
    if (!has(name)) return fallback;
    const auto v = u64(name);
    if (v < static_cast<std::uint64_t>(lo) || v > static_cast<std::uint64_t>(hi)) {
      throw ConfigError(name, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
  }
  double real_in(const std::string& name, double fallback, double lo, double hi) const {
    if (!has(name)) return fallback;
    const std::string s = str(name);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(name, "expected a number, got '" + s + "'");
    }
    if (!(v >= lo && v <= hi)) {
      throw ConfigError(name, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

 private:
  std::set<std::string> known_;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<std::pair<std::string, std::string>> options;  // name, help
  std::function<int(const Options&, std::ostream&)> run;
};

void print_summary(std::ostream& out, const plan::Itinerary& it) {
  for (const auto& v : it.visits) {
    out << "  " << format_clock(v.start) << "-" << format_clock(v.end) << "  " << v.poi_id << "\n";
  }
  out << "  total cost " << format_money(it.total_cost) << ", utility " << it.total_utility << "\n";
}

int cmd_ingest(const Options& o, std::ostream& out) {
  const auto pois = o.input_file("pois");
  const auto store = forge::ingest_pois_file(pois);
  out << "ingested " << store.size() << " POIs in " << store.cities().size() << " cities\n";
  if (o.has("out")) write_jsonl(o.str("out"), store.all());
  return 0;
}

int cmd_build_dataset(const Options& o, std::ostream& out) {
  const auto pois = o.input_file("pois");
  const auto facts_path = o.input_file("facts");
  const fs::path dir = o.str("out");
  forge::BuildConfig cfg;
  cfg.verify.seed = o.u64("seed");
  cfg.questions_per_fact = o.int_in("questions-per-fact", forge::kDefaultQuestionsPerFact, 1, 100);
  cfg.verify.manual_rate = o.real_in("manual-rate", cfg.verify.manual_rate, 0.0, 1.0);

  const auto store = forge::ingest_pois_file(pois);
  const auto facts = read_jsonl<forge::Fact>(facts_path);
  forge::ReferenceGenerator gen;
  const auto build = forge::build_dataset(store, facts, gen, cfg);

  fs::create_directories(dir);
  write_jsonl(dir / "qa.jsonl", build.qa);
  write_jsonl(dir / "manual_queue.jsonl", build.manual_queue);
  std::string rejected;
  for (const auto& r : build.rejected) {
    rejected += Json{{"id", r.qa.id}, {"reasons", r.verdict.reasons}}.dump() + "\n";
  }
  write_file_atomic(dir / "rejected.jsonl", rejected);
  const auto stats =
      forge::composition_report(store, build.qa, {}, forge::CompositionConfig{cfg.questions_per_fact, 3});
  std::ostringstream report;
  report << "accepted " << build.qa.size() << ", rejected " << build.rejected.size()
         << ", manual review " << build.manual_queue.size() << "\n"
         << stats.to_text();
  write_file_atomic(dir / "report.txt", report.str());
  out << report.str();
  return 0;
}

int cmd_split(const Options& o, std::ostream& out) {
  const auto pois = o.input_file("pois");
  const auto qa_path = o.input_file("qa");
  std::optional<fs::path> cot_path;
  if (o.has("cot")) cot_path = o.input_file("cot");
  const fs::path dir = o.str("out");
  forge::SplitConfig cfg;
  cfg.seed = o.u64("seed");
  cfg.train_ratio = o.real_in("ratio", cfg.train_ratio, 0.0, 1.0);

  const auto store = forge::ingest_pois_file(pois);
  auto qa = read_jsonl<QaPair>(qa_path);
  auto cot = cot_path ? read_jsonl<CotRecord>(*cot_path) : std::vector<CotRecord>{};
  const auto assignment = forge::split_dataset(store, qa, cfg);
  const auto result = forge::apply_split(std::move(qa), std::move(cot), assignment);
  const auto violations = forge::disjointness_violations(result.qa, result.cot);

  fs::create_directories(dir);
  write_jsonl(dir / "qa.jsonl", result.qa);
  write_jsonl(dir / "cot.jsonl", result.cot);
  write_jsonl(dir / "dropped_cot.jsonl", result.dropped_cot);
  std::size_t train = 0;
  for (const auto& q : result.qa) train += q.split == Split::kTrain;
  std::ostringstream report;
  report << "qa train " << train << ", test " << result.qa.size() - train << "\n"
         << "cot kept " << result.cot.size() << ", dropped " << result.dropped_cot.size() << "\n"
         << "disjointness violations " << violations.size() << "\n";
  write_file_atomic(dir / "report.txt", report.str());
  out << report.str();
  return violations.empty() ? 0 : 1;
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto pois = o.input_file("pois");
  const auto qa_path = o.input_file("qa");
  std::optional<fs::path> cot_path;
  if (o.has("cot")) cot_path = o.input_file("cot");
  forge::CompositionConfig cfg;
  cfg.questions_per_fact = o.int_in("questions-per-fact", 5, 1, 100);
  if (o.str_or("vl-types-per-image", "3") == "none") {
    cfg.vl_types_per_image.reset();
  } else {
    cfg.vl_types_per_image = o.int_in("vl-types-per-image", 3, 1, 100);
  }
  const auto store = forge::ingest_pois_file(pois);
  const auto qa = read_jsonl<QaPair>(qa_path);
  const auto cot = cot_path ? read_jsonl<CotRecord>(*cot_path) : std::vector<CotRecord>{};
  const auto stats = forge::composition_report(store, qa, cot, cfg);
  const std::string text = stats.to_text();
  if (o.has("out")) write_file_atomic(o.str("out"), text);
  out << text;
  return stats.identities_pass() ? 0 : 1;
}

int cmd_convert_mcq(const Options& o, std::ostream& out) {
  const auto qa_path = o.input_file("qa");
  const auto pois = o.input_file("pois");
  const auto seed = o.u64("seed");
  const fs::path dest = o.str("out");
  std::optional<fs::path> pool_path;
  if (o.has("pool")) pool_path = o.input_file("pool");

  const auto store = forge::ingest_pois_file(pois);
  const auto qa = read_jsonl<QaPair>(qa_path);
  const auto pool = pool_path ? read_jsonl<QaPair>(*pool_path) : qa;
  const auto items = bench::convert_mcq(qa, store, pool, seed);
  write_jsonl(dest, items);
  out << "converted " << items.size() << " items\n";
  return 0;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto items_path = o.input_file("items");
  const auto pred_path = o.input_file("predictions");
  bench::MatcherConfig matcher;
  matcher.jaccard_threshold = o.real_in("threshold", matcher.jaccard_threshold, 0.0, 1.0);
  std::optional<bench::ScoreWeights> weights;
  const std::string mode = o.str_or("weights", "from-counts");
  if (mode == "explicit") {
    if (!o.has("text-weight")) throw ConfigError("text-weight", "missing");
    if (!o.has("vqa-weight")) throw ConfigError("vqa-weight", "missing");
    weights = bench::ScoreWeights{o.real_in("text-weight", 0.0, 0.0, 1.0),
                                  o.real_in("vqa-weight", 0.0, 0.0, 1.0)};
  } else if (mode != "from-counts") {
    throw ConfigError("weights", "expected from-counts or explicit");
  }

  const auto items = read_jsonl<bench::McqItem>(items_path);
  std::map<std::string, const bench::McqItem*> by_id;
  for (const auto& it : items) by_id[it.qa_id] = &it;
  bench::Predictions predictions;
  for (const auto& it : items) predictions[it.qa_id] = std::nullopt;

  const std::string text = read_file(pred_path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw RecordError(pred_path.filename().string() + ": " + e.what(), line_no);
    }
    const auto id = j.at("qa_id").get<std::string>();
    const auto response = j.at("response").get<std::string>();
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw RecordError(pred_path.filename().string() + ": unknown item '" + id + "'", line_no);
    }
    predictions[id] = bench::match_answer(response, *it->second, matcher);
  }
  const auto report = bench::score_run(predictions, items, weights);
  const std::string out_text = report.to_text();
  if (o.has("out")) write_file_atomic(o.str("out"), out_text);
  out << out_text;
  return 0;
}

std::size_t beam_of(const Options& o) {
  const std::string b = o.str_or("beam", std::to_string(plan::kDefaultBeamWidth));
  if (b == "unbounded") return plan::kUnboundedBeam;
  return static_cast<std::size_t>(o.int_in("beam", static_cast<int>(plan::kDefaultBeamWidth), 0, 1 << 20));
}

int cmd_plan(const Options& o, std::ostream& out) {
  const auto path = o.input_file("instance");
  const auto beam = beam_of(o);
  plan::PlanInstance inst;
  try {
    inst = Json::parse(read_file(path)).get<plan::PlanInstance>();
  } catch (const Json::exception& e) {
    throw RecordError(path.filename().string() + ": " + e.what());
  }
  const auto v = plan::validate_instance(inst);
  if (!v.ok()) throw Error("invalid instance: " + v.violations.front());
  const auto it = plan::solve(inst, beam);
  const auto check = plan::feasible(it, inst);
  if (o.has("out")) write_file_atomic(o.str("out"), Json(it).dump(2) + "\n");
  out << "itinerary (" << it.visits.size() << " visits)\n";
  print_summary(out, it);
  for (const auto& viol : check.violations) out << "  violation: " << viol << "\n";
  return check.ok() ? 0 : 1;
}

int cmd_plan_session(const Options& o, std::ostream& out) {
  const auto dir = o.input_dir("city-fixture");
  agent::SessionConfig cfg;
  cfg.max_steps = o.int_in("max-steps", cfg.max_steps, 1, 100000);
  cfg.beam_width = beam_of(o);
  cfg.seed = o.u64_or("seed", 0);
  std::optional<std::string> image;
  // The descriptor is the file name, so any copy of a fixture image works.
  if (o.has("image")) image = fs::path(o.str("image")).filename().string();
  std::optional<agent::Refinement> refinement;
  if (o.has("refine")) {
    try {
      refinement = Json::parse(o.str("refine")).get<agent::Refinement>();
    } catch (const std::exception& e) {
      throw ConfigError("refine", e.what());
    }
  }
  const auto fixtures = tools::FixtureStore::load(dir);
  auto trace = agent::run_session(o.str_or("query", ""), image, cfg, fixtures);
  if (refinement) trace = agent::refine_session(trace, *refinement, fixtures);
  if (o.has("out")) write_file_atomic(o.str("out"), Json(trace).dump() + "\n");

  out << "outcome: " << agent::to_string(trace.outcome) << "\n";
  out << "tool calls: " << trace.calls.size() << "\n";
  for (std::size_t d = 0; d < trace.days.size(); ++d) {
    out << "day " << d + 1 << ":\n";
    print_summary(out, trace.days[d]);
  }
  if (!trace.days.empty()) {
    out << "total " << format_money(trace.total_cost()) << " of " << format_money(trace.state.draft.budget)
        << "\n";
  }
  for (const auto& n : trace.notes) out << "note: " << n << "\n";
  for (const auto& v : trace.violations) out << "violation: " << v << "\n";
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  const auto dir = o.input_dir("city-fixture");
  tools::ServerConfig cfg = tools::apply_bind_env({});
  if (o.has("bind")) {
    const std::string bind = o.str("bind");
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos) throw ConfigError("bind", "expected host:port");
    if (colon > 0) cfg.host = bind.substr(0, colon);
    Options port;
    port.flags["bind"] = bind.substr(colon + 1);
    cfg.port = port.int_in("bind", 0, 0, 65535);
  }
  return tools::serve_until_signal(tools::FixtureStore::load(dir), cfg, out);
}

int cmd_sus_score(const Options& o, std::ostream& out) {
  const auto path = o.input_file("responses");
  std::optional<std::string> group_by;
  if (o.has("group-by")) group_by = o.str("group-by");
  const auto responses = study::read_responses(path, group_by);
  if (responses.empty()) throw Error("no responses in " + path.string());

  std::vector<std::string> labels;
  std::map<std::string, std::vector<study::SusResponse>> groups;
  for (const auto& r : responses) {
    const std::string label = group_by ? r.group : "all";
    if (!groups.contains(label)) labels.push_back(label);
    groups[label].push_back(r);
  }
  std::string text;
  if (labels.size() == 2) {
    text = study::aggregate_study(groups[labels[0]], groups[labels[1]], labels[0], labels[1]).to_text();
  } else {
    std::ostringstream s;
    for (const auto& label : labels) {
      const auto g = study::summarize_group(groups[label], label);
      s << "group " << g.label << ": n=" << g.n << " mean=" << g.mean << " sd=" << g.sd;
      if (g.ci95) {
        s << " ci95=[" << g.ci95->first << ", " << g.ci95->second << "]";
      } else {
        s << " ci95=undefined (n=1)";
      }
      s << "\n";
    }
    text = s.str();
  }
  if (o.has("out")) write_file_atomic(o.str("out"), text);
  out << text;
  return 0;
}

std::vector<Command> commands() {
  const std::pair<std::string, std::string> seed{"seed", "random seed (required)"};
  return {
      {"ingest", "validate a POI file", {{"pois", "POI records"}, {"out", "canonical copy"}}, cmd_ingest},
      {"build-dataset",
       "generate and verify QA pairs",
       {{"pois", "POI records"},
        {"facts", "fact records"},
        {"out", "output directory"},
        seed,
        {"questions-per-fact", "questions per fact (5)"},
        {"manual-rate", "share of accepted pairs queued for review (0.05)"}},
       cmd_build_dataset},
      {"split",
       "POI-disjoint train/test split",
       {{"pois", "POI records"},
        {"qa", "QA records"},
        {"cot", "CoT records"},
        {"out", "output directory"},
        {"ratio", "train share (0.8)"},
        seed},
       cmd_split},
      {"report",
       "composition counts and identity checks",
       {{"pois", "POI records"},
        {"qa", "QA records"},
        {"cot", "CoT records"},
        {"questions-per-fact", "expected questions per fact (5)"},
        {"vl-types-per-image", "expected QA types per image (3), or none"},
        {"out", "report file"}},
       cmd_report},
      {"convert-mcq",
       "turn QA pairs into four-option items",
       {{"qa", "QA records to convert"},
        {"pois", "POI records"},
        {"pool", "QA records to draw distractor answers from (defaults to --qa)"},
        seed,
        {"out", "item file"}},
       cmd_convert_mcq},
      {"evaluate",
       "score free-form predictions against items",
       {{"items", "MCQ items"},
        {"predictions", "lines of {\"qa_id\", \"response\"}"},
        {"out", "report file"},
        {"threshold", "matcher Jaccard threshold (0.5)"},
        {"weights", "from-counts or explicit"},
        {"text-weight", "explicit text weight"},
        {"vqa-weight", "explicit vision-language weight"}},
       cmd_evaluate},
      {"plan",
       "solve one itinerary instance",
       {{"instance", "instance record"}, {"beam", "beam width (8), 0 or unbounded for exhaustive"}, {"out", "itinerary file"}},
       cmd_plan},
      {"plan-session",
       "run the agent on one query",
       {{"query", "query text"},
        {"image", "image file or descriptor"},
        {"city-fixture", "fixture directory"},
        {"out", "trace file"},
        {"max-steps", "tool-call limit (32)"},
        {"beam", "beam width (8)"},
        {"seed", "recorded in the trace (0)"},
        {"refine", "refinement record applied after the first plan"}},
       cmd_plan_session},
      {"serve",
       "HTTP session server",
       {{"city-fixture", "fixture directory"}, {"bind", "host:port (overrides TRAVELKIT_BIND)"}},
       cmd_serve},
      {"sus-score",
       "SUS scores and group statistics",
       {{"responses", "delimited table with q1..q10"},
        {"group-by", "column naming each row's group"},
        {"out", "report file"}},
       cmd_sus_score},
  };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto cmds = commands();
  CLI::App app{"travelkit: travel QA dataset, benchmark and planning toolkit", "travelkit"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print artifact and record-format versions");

  std::map<std::string, Options> options;
  std::map<std::string, std::string> config_paths;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    auto& o = options[c.name];
    for (const auto& [name, help] : c.options) {
      o.declare(name);
      sub->add_option("--" + name, o.flags[name], help);
    }
    sub->add_option("--config", config_paths[c.name], "JSON file of option values; flags win");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << "run 'travelkit --help' for usage\n";
    return 2;
  }
  if (version) {
    out << "travelkit " << TRAVELKIT_VERSION << "\nrecord format " << kRecordFormat << "\n";
    return 0;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return 2;
  }
  const std::string name = chosen.front()->get_name();
  const auto& cmd = *std::find_if(cmds.begin(), cmds.end(), [&](const Command& c) { return c.name == name; });
  try {
    auto& o = options[name];
    if (!config_paths[name].empty()) o.merge_config(config_paths[name]);
    return cmd.run(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int dispatch(std::span<char*> argv) {
  std::vector<std::string> args;
  for (std::size_t i = 1; i < argv.size(); ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace travelkit::cli
