// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "agentdock/config.hpp"
#include "agentdock/error.hpp"
#include "agentdock/text.hpp"

namespace agentdock {
namespace {

using nlohmann::json;

EvalResult evaluate_one(const DatasetRecord& record, const PipelineConfig& config, bool lite) {
  EvalResult result;
  result.id = record.id;
  try {
    const Document doc = Document::from_file(record.image_path, record.id);
    const Question question = Question::make(record.id, record.question);
    PipelineResult run_result = lite ? run_lite(question, doc, config) : run(question, doc, config);
    result.answer = run_result.answer.text;
    result.stage_path = run_result.trace.stage_path;
    result.timings_ms = run_result.trace.timings_ms;
    result.flags = run_result.trace.flags;
    result.activation = run_activation(run_result.trace);
  } catch (const PipelineError& e) {
    result.error = e.what();
    result.stage_path = e.trace().stage_path;
    result.timings_ms = e.trace().timings_ms;
    result.flags = e.trace().flags;
    result.activation = run_activation(e.trace());
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  if (record.answers) {
    result.anls = result.error.empty() ? anls_single(result.answer, *record.answers) : 0.0;
  }
  return result;
}

void print_stats(std::ostream& out, const ActivationStats& s) {
  out << std::fixed << std::setprecision(4);
  out << "runs: " << s.total << "\n";
  out << "disagreements: " << s.disagreements << " (rate " << s.disagreement_rate << ")\n";
  out << "stress failures: " << s.stress_failures << " (conditional rate " << s.stress_failure_rate
      << ")\n";
  out << "debates: " << s.debates << " (rate " << s.debate_rate << "), argued: " << s.full_debates
      << "\n";
  out << std::defaultfloat;
}

}  // namespace

std::vector<DatasetRecord> read_dataset(std::istream& in, const std::filesystem::path& base_dir) {
  std::vector<DatasetRecord> records;
  std::set<std::string> ids;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (trim(line).empty()) continue;
    const std::string where = "dataset line " + std::to_string(number);
    DatasetRecord r;
    try {
      const json j = json::parse(line);
      r.id = j.at("id").get<std::string>();
      r.image_path = j.at("image_path").get<std::string>();
      r.question = j.at("question").get<std::string>();
      if (j.contains("answers") && !j["answers"].is_null()) {
        r.answers = j["answers"].get<std::vector<std::string>>();
      }
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (r.answers && r.answers->empty()) throw ParseError(where + ": empty answers list");
    if (!ids.insert(r.id).second) throw ParseError(where + ": duplicate id '" + r.id + "'");
    if (r.image_path.is_relative()) r.image_path = base_dir / r.image_path;
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset " + path.string());
  return read_dataset(in, path.parent_path());
}

nlohmann::json to_json(const EvalResult& r) {
  json stage_path = json::array();
  for (Stage s : r.stage_path) stage_path.push_back(to_string(s));
  json timings = json::object();
  for (std::size_t i = 0; i < kStageCount; ++i) {
    timings[to_string(static_cast<Stage>(i))] = r.timings_ms[i];
  }
  json flags = json::array();
  for (TraceFlag f : r.flags) flags.push_back(to_string(f));
  json j = {{"id", r.id}, {"answer", r.answer}};
  if (r.anls) j["anls"] = *r.anls;
  j["stage_path"] = stage_path;
  j["timings_ms"] = timings;
  j["flags"] = flags;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

EvalReport evaluate(const std::vector<DatasetRecord>& dataset, const PipelineConfig& config,
                    const EvalOptions& options) {
  EvalReport report;
  report.results.resize(dataset.size());
  std::size_t workers = options.parallel;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(dataset.size(), 1));

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < dataset.size(); i = next++) {
          report.results[i] = evaluate_one(dataset[i], config, options.lite);
        }
      });
    }
  }

  // Fixed-order summation keeps the corpus score independent of scheduling.
  double sum = 0.0;
  std::size_t scored = 0;
  std::vector<RunActivation> runs;
  for (const auto& r : report.results) {
    runs.push_back(r.activation);
    if (r.anls) {
      sum += *r.anls;
      ++scored;
    }
  }
  if (scored > 0) report.corpus_anls = sum / static_cast<double>(scored);
  if (!runs.empty()) report.stats = activation_stats(std::span<const RunActivation>(runs));
  return report;
}

int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  Question question;
  std::optional<Document> doc;
  try {
    config = load_config(cmd.config);
    question = Question::make("cli", cmd.question);
    doc = Document::from_file(cmd.image, cmd.image.filename().string());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::optional<PipelineTrace> trace;
  int status = 0;
  try {
    PipelineResult result = cmd.lite ? run_lite(question, *doc, config) : run(question, *doc, config);
    out << result.answer.text << "\n";
    trace = std::move(result.trace);
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << "\n";
    trace = e.trace();
    status = 1;
  }
  if (cmd.trace) {
    std::ofstream file(*cmd.trace);
    if (!file) {
      err << "error: cannot write trace " << cmd.trace->string() << "\n";
      return 1;
    }
    file << to_json(*trace).dump(2) << "\n";
  }
  return status;
}

int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  std::vector<DatasetRecord> dataset;
  try {
    config = load_config(cmd.config);
    dataset = read_dataset(cmd.dataset);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (dataset.empty()) {
    err << "error: dataset " << cmd.dataset.string() << " has no records\n";
    return 2;
  }

  const EvalReport report = evaluate(dataset, config, {cmd.parallel, cmd.lite});

  std::ofstream file(cmd.out);
  if (!file) {
    err << "error: cannot write results " << cmd.out.string() << "\n";
    return 1;
  }
  std::size_t failures = 0;
  for (const auto& r : report.results) {
    file << to_json(r).dump() << "\n";
    if (!r.error.empty()) {
      ++failures;
      err << "record " << r.id << " failed: " << r.error << "\n";
    }
  }

  out << "records: " << report.results.size() << " (failed " << failures << ")\n";
  if (report.corpus_anls) {
    out << "corpus ANLS: " << std::fixed << std::setprecision(4) << *report.corpus_anls
        << std::defaultfloat << "\n";
  }
  print_stats(out, report.stats);
  return 0;
}

int cmd_trace_show(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  PipelineTrace t;
  try {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open trace " + path.string());
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError("trace " + path.string() + " is not valid JSON: " + e.what());
    }
    t = trace_from_json(doc);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  out << "question: " << t.question_id << "  document: " << t.document_id
      << (t.lite ? "  (lite)" : "") << "\n";
  out << "stages:";
  for (Stage s : t.stage_path) out << " " << to_string(s);
  out << "\n";
  const auto show = [&](const char* name, const std::optional<Answer>& a) {
    if (a) out << "  " << name << ": " << a->text << "\n";
  };
  out << "answers:\n";
  show("thinker", t.answers.thinker);
  show("expert", t.answers.expert);
  show("stress", t.answers.stress);
  show("debate", t.answers.debate);
  show("final", t.answers.final);
  out << "plan:";
  for (AgentKind k : t.plan.order) out << " " << label(k);
  out << "\n";
  out << "masked: " << (t.masked ? "yes" : "no") << " (" << t.answer_occurrences
      << " occurrences)\n";
  if (t.stress) {
    out << "stress test: " << (t.stress->passed ? "passed" : "failed") << " after "
        << t.stress->turns.size() << " turn(s)\n";
  }
  if (t.debate) {
    out << "debate: " << to_string(t.debate->resolution) << ", " << t.debate->transcript.size()
        << " turn(s)";
    if (t.debate->winner) out << ", winner " << to_string(*t.debate->winner);
    out << "\n";
  }
  if (t.refinement) {
    out << "refinement: "
        << (t.refinement->rejected ? "rejected" : t.refinement->changed ? "changed" : "unchanged")
        << "\n";
  }
  out << "timings_ms:";
  for (std::size_t i = 0; i < kStageCount; ++i) {
    out << " " << to_string(static_cast<Stage>(i)) << "=" << t.timings_ms[i];
  }
  out << "\n";
  if (!t.flags.empty()) {
    out << "flags:";
    for (TraceFlag f : t.flags) out << " " << to_string(f);
    out << "\n";
  }
  return 0;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-agent document question answering"};
  app.require_subcommand(1);

  RunCommand run_cmd;
  std::string trace_path;
  auto* run_app = app.add_subcommand("run", "Answer one question about one page image");
  run_app->add_option("--config", run_cmd.config, "Configuration file")->required();
  run_app->add_option("--question", run_cmd.question, "Question text")->required();
  run_app->add_option("--image", run_cmd.image, "Page image")->required();
  run_app->add_flag("--lite", run_cmd.lite, "Skip stress testing and debate");
  run_app->add_option("--trace", trace_path, "Write the run trace as JSON");

  EvalCommand eval_cmd;
  auto* eval_app = app.add_subcommand("eval", "Evaluate a JSONL dataset");
  eval_app->add_option("--config", eval_cmd.config, "Configuration file")->required();
  eval_app->add_option("--dataset", eval_cmd.dataset, "Dataset JSONL")->required();
  eval_app->add_option("--out", eval_cmd.out, "Results JSONL")->required();
  eval_app->add_option("--parallel", eval_cmd.parallel, "Worker count cap")
      ->check(CLI::PositiveNumber);
  eval_app->add_flag("--lite", eval_cmd.lite, "Skip stress testing and debate");

  std::filesystem::path show_path;
  auto* trace_app = app.add_subcommand("trace", "Inspect traces");
  trace_app->require_subcommand(1);
  auto* show_app = trace_app->add_subcommand("show", "Summarize a trace file");
  show_app->add_option("path", show_path, "Trace JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  if (*run_app) {
    if (!trace_path.empty()) run_cmd.trace = trace_path;
    return cmd_run(run_cmd, out, err);
  }
  if (*eval_app) return cmd_eval(eval_cmd, out, err);
  return cmd_trace_show(show_path, out, err);
}

}  // namespace agentdock
