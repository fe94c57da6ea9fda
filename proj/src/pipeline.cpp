// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/pipeline.hpp"

#include <chrono>

#include "agentdock/text.hpp"

namespace agentdock {
namespace {

using nlohmann::json;

constexpr std::array<const char*, kStageCount> kStageNames = {"S1", "S2", "S3", "S4", "S5"};

constexpr std::array<std::pair<TraceFlag, const char*>, 4> kFlagNames = {{
    {TraceFlag::kUnionFallback, "UnionFallback"},
    {TraceFlag::kRefinementRejected, "RefinementRejected"},
    {TraceFlag::kDebateEarlyExit, "DebateEarlyExit"},
    {TraceFlag::kThinkerEmptyAnswer, "ThinkerEmptyAnswer"},
}};

// Serialization helpers. Every reader throws nlohmann exceptions on schema
// violations; trace_from_json converts them.

json answer_json(const Answer& a) { return {{"text", a.text}, {"origin", to_string(a.origin)}}; }

Answer read_answer(const json& j) {
  const auto origin = answer_origin_from_string(j.at("origin").get<std::string>());
  if (!origin) throw ParseError("unknown answer origin " + j.at("origin").dump());
  return {j.at("text").get<std::string>(), *origin};
}

json optional_answer_json(const std::optional<Answer>& a) {
  return a ? answer_json(*a) : json(nullptr);
}

std::optional<Answer> read_optional_answer(const json& j) {
  if (j.is_null()) return std::nullopt;
  return read_answer(j);
}

AgentKind read_agent(const json& j) {
  const auto kind = agent_from_label(j.get<std::string>());
  if (!kind) throw ParseError("unknown agent " + j.dump());
  return *kind;
}

json agents_json(std::span<const AgentKind> kinds) {
  json out = json::array();
  for (AgentKind k : kinds) out.push_back(std::string(label(k)));
  return out;
}

json activation_json(const ActivationVector& v) {
  json candidates = json::array();
  for (const auto& c : v.provenance) {
    candidates.push_back({{"tokens", c.tokens},
                          {"score", c.score},
                          {"probability", c.probability},
                          {"greedy", c.greedy}});
  }
  return {{"agents", agents_json(v.active())}, {"fallback", v.fallback}, {"candidates", candidates}};
}

ActivationVector read_activation(const json& j) {
  ActivationVector v;
  for (const auto& a : j.at("agents")) v.bits[index_of(read_agent(a))] = true;
  v.fallback = j.at("fallback").get<bool>();
  for (const auto& c : j.at("candidates")) {
    v.provenance.push_back({c.at("tokens").get<std::vector<std::string>>(),
                            c.at("score").get<double>(), c.at("probability").get<double>(),
                            c.at("greedy").get<bool>()});
  }
  return v;
}

json stress_json(const StressOutcome& s) {
  json turns = json::array();
  for (const auto& t : s.turns) {
    turns.push_back({{"debate_question", t.debate_question},
                     {"response", t.response},
                     {"revised_answer", t.revised_answer},
                     {"verdict", t.verdict == Verdict::kPass ? "pass" : "fail"},
                     {"evaluator_passed", t.evaluator_passed},
                     {"answer_drift", t.answer_drift}});
  }
  return {{"passed", s.passed},
          {"settled_answer", optional_answer_json(s.settled_answer)},
          {"turns", turns}};
}

StressOutcome read_stress(const json& j) {
  StressOutcome s;
  s.passed = j.at("passed").get<bool>();
  s.settled_answer = read_optional_answer(j.at("settled_answer"));
  for (const auto& t : j.at("turns")) {
    const std::string verdict = t.at("verdict").get<std::string>();
    if (verdict != "pass" && verdict != "fail") throw ParseError("unknown verdict " + verdict);
    s.turns.push_back({t.at("debate_question").get<std::string>(),
                       t.at("response").get<std::string>(),
                       t.at("revised_answer").get<std::string>(),
                       verdict == "pass" ? Verdict::kPass : Verdict::kFail,
                       t.at("evaluator_passed").get<bool>(), t.at("answer_drift").get<bool>()});
  }
  return s;
}

std::optional<DebateSide> read_side(const json& j) {
  if (j.is_null()) return std::nullopt;
  const std::string s = j.get<std::string>();
  if (s == "thesis") return DebateSide::kThesis;
  if (s == "antithesis") return DebateSide::kAntithesis;
  throw ParseError("unknown debate side " + s);
}

json side_json(const std::optional<DebateSide>& side) {
  return side ? json(to_string(*side)) : json(nullptr);
}

json debate_json(const DebateOutcome& d) {
  json turns = json::array();
  for (const auto& t : d.transcript) {
    json convinced = nullptr;
    if (t.verdict.convinced) {
      convinced = {{"winner", to_string(t.verdict.convinced->winner)},
                   {"answer", t.verdict.convinced->answer}};
    }
    turns.push_back({{"antithesis",
                      {{"reference", t.antithesis.reference},
                       {"criticism", t.antithesis.criticism},
                       {"conclusion", t.antithesis.conclusion}}},
                     {"thesis_reply", t.thesis_reply},
                     {"verdict", {{"convinced", convinced}, {"summary", t.verdict.summary}}}});
  }
  return {{"answer", answer_json(d.answer)},
          {"alternative", d.alternative},
          {"resolution", to_string(d.resolution)},
          {"winner", side_json(d.winner)},
          {"final_summary", d.final_summary},
          {"turns", turns}};
}

DebateOutcome read_debate(const json& j) {
  DebateOutcome d;
  d.answer = read_answer(j.at("answer"));
  d.alternative = j.at("alternative").get<std::string>();
  const std::string resolution = j.at("resolution").get<std::string>();
  bool known = false;
  for (auto r : {DebateResolution::kEarlyExit, DebateResolution::kConvinced,
                 DebateResolution::kFinalJudgment}) {
    if (resolution == to_string(r)) {
      d.resolution = r;
      known = true;
    }
  }
  if (!known) throw ParseError("unknown debate resolution " + resolution);
  d.winner = read_side(j.at("winner"));
  d.final_summary = j.at("final_summary").get<std::string>();
  for (const auto& t : j.at("turns")) {
    DebateTurn turn;
    const auto& a = t.at("antithesis");
    turn.antithesis = {a.at("reference").get<std::string>(), a.at("criticism").get<std::string>(),
                       a.at("conclusion").get<std::string>()};
    turn.thesis_reply = t.at("thesis_reply").get<std::string>();
    const auto& v = t.at("verdict");
    turn.verdict.summary = v.at("summary").get<std::string>();
    if (!v.at("convinced").is_null()) {
      const auto& c = v.at("convinced");
      turn.verdict.convinced = Convinced{*read_side(c.at("winner")), c.at("answer").get<std::string>()};
    }
    d.transcript.push_back(std::move(turn));
  }
  return d;
}

json refinement_json(const RefinementResult& r) {
  json edits = json::array();
  for (const auto& e : r.edits) {
    edits.push_back({{"kind", to_string(e.kind)}, {"before", e.before}, {"after", e.after}});
  }
  return {{"answer", answer_json(r.answer)},
          {"changed", r.changed},
          {"rejected", r.rejected},
          {"proposed", r.proposed},
          {"edits", edits}};
}

RefinementResult read_refinement(const json& j) {
  RefinementResult r;
  r.answer = read_answer(j.at("answer"));
  r.changed = j.at("changed").get<bool>();
  r.rejected = j.at("rejected").get<bool>();
  r.proposed = j.at("proposed").get<std::string>();
  for (const auto& e : j.at("edits")) {
    const auto kind = edit_kind_from_string(e.at("kind").get<std::string>());
    if (!kind) throw ParseError("unknown edit kind " + e.at("kind").dump());
    r.edits.push_back({*kind, e.at("before").get<std::string>(), e.at("after").get<std::string>()});
  }
  return r;
}

class StageRunner {
 public:
  explicit StageRunner(PipelineTrace& trace) : trace_(trace) {}

  template <typename Body>
  void operator()(Stage stage, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const Error& e) {
      throw PipelineError(stage, e.kind(), std::string("stage ") + to_string(stage) + ": " + e.what(),
                          trace_);
    }
    trace_.timings_ms[static_cast<std::size_t>(stage)] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    trace_.stage_path.push_back(stage);
  }

 private:
  PipelineTrace& trace_;
};

PipelineResult execute(const Question& question, const Document& doc, const PipelineConfig& config,
                       bool lite) {
  config.validate();
  Session session(config.endpoints);
  PipelineTrace trace;
  trace.question_id = question.id;
  trace.document_id = doc.id();
  trace.lite = lite;
  StageRunner stage(trace);

  stage(Stage::kS1, [&] {
    ThinkerOutput thought = think(session, question, doc);
    trace.reasoning = std::move(thought.path);
    trace.answers.thinker = thought.answer;
    if (thought.answer_empty) trace.flags.insert(TraceFlag::kThinkerEmptyAnswer);
  });
  const Answer thinker_answer = *trace.answers.thinker;

  stage(Stage::kS2, [&] {
    trace.activation = route(session, question, doc, trace.reasoning, config.decode);
    if (trace.activation.fallback) trace.flags.insert(TraceFlag::kUnionFallback);
    trace.plan = orchestrate(trace.activation, trace.reasoning);
    trace.answer_occurrences =
        count_answer_occurrences(trace.reasoning, thinker_answer.text, config.mask.mask_token);
    trace.masked_reasoning = mask_answer(trace.reasoning, thinker_answer, config.mask);
    trace.masked = trace.masked_reasoning != trace.reasoning;
    ChainResult chain = execute_chain(session, trace.plan, question, doc, trace.masked_reasoning);
    trace.chain = std::move(chain.steps);
    trace.answers.expert = chain.answer;
  });
  Answer current = *trace.answers.expert;

  if (!lite && !answers_equal(current.text, thinker_answer.text)) {
    stage(Stage::kS3, [&] {
      trace.stress = stress_test(session, question, doc, current, trace.plan.order.back(),
                                 config.stress_turns);
    });
    if (trace.stress->passed) {
      trace.answers.stress = trace.stress->settled_answer;
      current = *trace.answers.stress;
    } else {
      stage(Stage::kS4, [&] {
        trace.debate = debate(session, question, doc, current, config.debate_turns);
        if (trace.debate->resolution == DebateResolution::kEarlyExit) {
          trace.flags.insert(TraceFlag::kDebateEarlyExit);
        }
      });
      trace.answers.debate = trace.debate->answer;
      current = *trace.answers.debate;
    }
  }

  stage(Stage::kS5, [&] {
    trace.refinement = sanity_check(session, question, doc, current, "sanity", config.refinement);
    if (trace.refinement->rejected) trace.flags.insert(TraceFlag::kRefinementRejected);
    trace.answers.final = trace.refinement->answer;
  });
  return {*trace.answers.final, std::move(trace)};
}

}  // namespace

const char* to_string(Stage stage) { return kStageNames[static_cast<std::size_t>(stage)]; }

std::optional<Stage> stage_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kStageCount; ++i) {
    if (s == kStageNames[i]) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

const char* to_string(TraceFlag flag) {
  for (const auto& [f, name] : kFlagNames) {
    if (f == flag) return name;
  }
  return "unknown";
}

std::optional<TraceFlag> trace_flag_from_string(std::string_view s) {
  for (const auto& [f, name] : kFlagNames) {
    if (s == name) return f;
  }
  return std::nullopt;
}

std::vector<std::string> required_roles() {
  std::vector<std::string> roles = {"thinker", "router"};
  for (AgentKind k : kAllAgents) roles.emplace_back(label(k));
  for (const char* r : {"debate", "eval", "thesis", "antithesis", "judge", "sanity"}) {
    roles.emplace_back(r);
  }
  return roles;
}

void PipelineConfig::validate() const {
  for (const auto& role : required_roles()) {
    const auto it = endpoints.find(role);
    if (it == endpoints.end() || !it->second.backend) {
      throw ConfigError("no endpoint configured for role '" + role + "'");
    }
  }
  if (stress_turns < 1 || stress_turns > 2) throw ConfigError("stress_turns must be 1 or 2");
  if (debate_turns < 1 || debate_turns > 3) throw ConfigError("debate_turns must be 1 to 3");
  try {
    decode.validate();
    mask.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

bool PipelineTrace::visited(Stage stage) const {
  return std::find(stage_path.begin(), stage_path.end(), stage) != stage_path.end();
}

RunActivation run_activation(const PipelineTrace& trace) {
  return {trace.visited(Stage::kS3), trace.visited(Stage::kS4),
          trace.debate ? trace.debate->transcript.size() : 0};
}

nlohmann::json to_json(const PipelineTrace& t) {
  json stage_path = json::array();
  for (Stage s : t.stage_path) stage_path.push_back(to_string(s));
  json timings = json::object();
  for (std::size_t i = 0; i < kStageCount; ++i) timings[kStageNames[i]] = t.timings_ms[i];
  json flags = json::array();
  for (TraceFlag f : t.flags) flags.push_back(to_string(f));
  json chain = json::array();
  for (const auto& step : t.chain) {
    chain.push_back({{"agent", std::string(label(step.agent))}, {"answer", step.answer}});
  }

  return {
      {"question_id", t.question_id},
      {"document_id", t.document_id},
      {"lite", t.lite},
      {"stage_path", stage_path},
      {"answers",
       {{"thinker", optional_answer_json(t.answers.thinker)},
        {"expert", optional_answer_json(t.answers.expert)},
        {"stress", optional_answer_json(t.answers.stress)},
        {"debate", optional_answer_json(t.answers.debate)},
        {"final", optional_answer_json(t.answers.final)}}},
      {"reasoning", t.reasoning.steps},
      {"masked_reasoning", t.masked_reasoning.steps},
      {"masked", t.masked},
      {"answer_occurrences", t.answer_occurrences},
      {"activation", activation_json(t.activation)},
      {"plan", agents_json(t.plan.order)},
      {"chain", chain},
      {"stress", t.stress ? stress_json(*t.stress) : json(nullptr)},
      {"debate", t.debate ? debate_json(*t.debate) : json(nullptr)},
      {"refinement", t.refinement ? refinement_json(*t.refinement) : json(nullptr)},
      {"timings_ms", timings},
      {"flags", flags},
  };
}

PipelineTrace trace_from_json(const nlohmann::json& j) {
  try {
    PipelineTrace t;
    t.question_id = j.at("question_id").get<std::string>();
    t.document_id = j.at("document_id").get<std::string>();
    t.lite = j.at("lite").get<bool>();
    for (const auto& s : j.at("stage_path")) {
      const auto stage = stage_from_string(s.get<std::string>());
      if (!stage) throw ParseError("unknown stage " + s.dump());
      t.stage_path.push_back(*stage);
    }
    const auto& answers = j.at("answers");
    t.answers = {read_optional_answer(answers.at("thinker")),
                 read_optional_answer(answers.at("expert")),
                 read_optional_answer(answers.at("stress")),
                 read_optional_answer(answers.at("debate")),
                 read_optional_answer(answers.at("final"))};
    t.reasoning.steps = j.at("reasoning").get<std::vector<std::string>>();
    t.masked_reasoning.steps = j.at("masked_reasoning").get<std::vector<std::string>>();
    t.masked = j.at("masked").get<bool>();
    t.answer_occurrences = j.at("answer_occurrences").get<std::size_t>();
    t.activation = read_activation(j.at("activation"));
    for (const auto& a : j.at("plan")) t.plan.order.push_back(read_agent(a));
    for (const auto& c : j.at("chain")) {
      t.chain.push_back({read_agent(c.at("agent")), c.at("answer").get<std::string>()});
    }
    if (!j.at("stress").is_null()) t.stress = read_stress(j.at("stress"));
    if (!j.at("debate").is_null()) t.debate = read_debate(j.at("debate"));
    if (!j.at("refinement").is_null()) t.refinement = read_refinement(j.at("refinement"));
    for (std::size_t i = 0; i < kStageCount; ++i) {
      t.timings_ms[i] = j.at("timings_ms").at(kStageNames[i]).get<double>();
    }
    for (const auto& f : j.at("flags")) {
      const auto flag = trace_flag_from_string(f.get<std::string>());
      if (!flag) throw ParseError("unknown flag " + f.dump());
      t.flags.insert(*flag);
    }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed trace: ") + e.what());
  }
}

PipelineResult run(const Question& question, const Document& doc, const PipelineConfig& config) {
  return execute(question, doc, config, /*lite=*/false);
}

PipelineResult run_lite(const Question& question, const Document& doc,
                        const PipelineConfig& config) {
  return execute(question, doc, config, /*lite=*/true);
}

}  // namespace agentdock
