#include "discotrace/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "discotrace/agreement.hpp"
#include "discotrace/bigram_model.hpp"
#include "discotrace/communities.hpp"
#include "discotrace/corpus_io.hpp"
#include "discotrace/error.hpp"
#include "discotrace/interpretation_metrics.hpp"
#include "discotrace/interpretation_space.hpp"
#include "discotrace/pipeline_config.hpp"
#include "discotrace/post_filter.hpp"
#include "discotrace/prompts.hpp"
#include "discotrace/segmentation.hpp"
#include "discotrace/trace_pipeline.hpp"

namespace discotrace::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kRawPostSchema =
    "raw posts: {post_id, title, score, created_at, community, profanity_prob?, "
    "comments: [{comment_id, text, score, top_level}]}";
constexpr const char* kQuestionSchema = "questions: {schema_version, question_id, title, community}";
constexpr const char* kAnswerSchema =
    "answers: {schema_version, answer_id, question_id, text, rst_tree, question?}";
constexpr const char* kSegmentSchema =
    "segments: {schema_version, answer_id, question_id, segments: [{edu_indices, text}]}";
constexpr const char* kSpaceSchema =
    "spaces: {schema_version, question_id, threshold, members: [{id, text, sources}]}";
constexpr const char* kTraceSchema =
    "traces: {schema_version, answer_id, question_id, steps: [{act_id, interpretation_id, "
    "edu_indices}], diagnostics}";

struct Options {
  std::string config;
  std::string in;
  std::string out = "-";
  std::optional<std::uint64_t> seed;
  std::string backend_profile;
  std::optional<std::size_t> max_in_flight;
  std::string smoothing;
  std::optional<double> dedup_threshold;
  bool family_level = false;

  std::string report;
  std::string diagnostics;
  std::string questions;
  std::string spaces;
  std::string answers_out;
  std::string json_out;
  std::string long_out;
  std::string csv_out;
  std::string model_traces;
  std::string against;
  std::string agreement;
  std::string community;
  std::optional<std::size_t> n;
  std::vector<std::string> corpora;
  std::vector<std::string> names;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "pipeline config JSON");
  cmd->add_option("--out", o.out, "output path, - for stdout");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--backend-profile", o.backend_profile, "backend profile from the config");
  cmd->add_option("--max-in-flight", o.max_in_flight, "concurrent answers and requests")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--smoothing", o.smoothing, "mle | add_lambda | add_lambda:<value>");
  cmd->add_option("--dedup-threshold", o.dedup_threshold, "cosine merge threshold in (0, 1]");
  cmd->add_flag("--family-level", o.family_level, "model act families instead of acts");
}

PipelineConfig load_config(const Options& o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig::defaults() : PipelineConfig::load(o.config);
  if (o.seed) c.seed = *o.seed;
  if (!o.backend_profile.empty()) c.active_profile = o.backend_profile;
  if (!o.smoothing.empty()) c.smoothing = Smoothing::parse(o.smoothing);
  if (o.dedup_threshold) c.dedup_threshold = *o.dedup_threshold;
  if (o.max_in_flight) {
    c.max_in_flight = *o.max_in_flight;
    for (auto& [name, p] : c.profiles) {
      for (auto* s : {&p.act_labeler, &p.interp_labeler, &p.embedder, &p.answerer}) {
        if (*s) (*s)->max_in_flight = *o.max_in_flight;
      }
      for (auto& g : p.interp_generators) g.max_in_flight = *o.max_in_flight;
    }
  }
  c.validate();
  return c;
}

nlohmann::json plain(const Record& r) { return nlohmann::json::parse(r.dump()); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  f << text;
}

void emit_records(const std::string& path, const std::vector<Record>& records, std::ostream& out) {
  emit(path, serialize_corpus(records), out);
}

std::string require_backend_msg(const char* role) {
  return std::string("the selected backend profile has no ") + role;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Work stops being
// handed out after the first failure; the failure with the lowest index is
// rethrown once every thread has joined.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  const auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(workers, n));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string default_diagnostics_path(const Options& o) {
  if (!o.diagnostics.empty()) return o.diagnostics;
  if (o.out.empty() || o.out == "-") return "";
  return o.out + ".diagnostics.jsonl";
}

std::vector<RawPost> read_posts(const std::string& path) {
  std::vector<RawPost> posts;
  for (const auto& r : read_corpus(path)) posts.push_back(RawPost::from_json(r));
  return posts;
}

std::vector<Answer> read_answers(const std::string& path) {
  std::vector<Answer> answers;
  for (const auto& r : read_corpus(path)) answers.push_back(Answer::from_json(r));
  return answers;
}

std::vector<DiscoTrace> read_traces(const std::string& path) {
  std::vector<DiscoTrace> traces;
  for (const auto& r : read_corpus(path)) traces.push_back(DiscoTrace::from_json(plain(r)));
  return traces;
}

SpaceMap read_spaces(const std::string& path) {
  SpaceMap spaces;
  for (const auto& r : read_corpus(path)) {
    auto s = InterpretationSpace::from_json(plain(r));
    auto qid = s.question_id;
    spaces.insert_or_assign(std::move(qid), std::move(s));
  }
  return spaces;
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_filter(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = load_config(o);
  const auto result = filter_corpus(read_posts(o.in), config.filter);
  std::vector<Record> records;
  for (const auto& p : result.kept) records.push_back(stamp_version(p.to_json()));
  emit_records(o.out, records, out);
  const auto report = result.report().dump(2) + "\n";
  if (o.report.empty()) {
    err << report;
  } else {
    emit(o.report, report, out);
  }
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = load_config(o);
  const auto posts = read_posts(o.in);
  const auto sample = sample_questions(posts, o.n.value_or(config.sample_size), config.seed);
  std::vector<Record> questions, answers;
  for (const auto& p : sample) {
    questions.push_back(stamp_version(Question{p.post_id, p.title, p.community}.to_json()));
    for (std::size_t i = 0; i < p.comments.size(); ++i) {
      const auto& c = p.comments[i];
      Answer a;
      a.answer_id = c.comment_id.empty() ? p.post_id + "_" + std::to_string(i) : c.comment_id;
      a.question_id = p.post_id;
      a.text = c.text;
      answers.push_back(stamp_version(a.to_json()));
    }
  }
  emit_records(o.out, questions, out);
  if (!o.answers_out.empty()) emit_records(o.answers_out, answers, out);
  return kExitOk;
}

int cmd_segment(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = load_config(o);
  std::vector<Record> records;
  for (const auto& a : read_answers(o.in)) {
    if (!a.tree) throw Error(ErrorCode::MalformedDocument, "answer " + a.answer_id + " has no rst_tree");
    Record r;
    r["answer_id"] = a.answer_id;
    r["question_id"] = a.question_id;
    r["segments"] = Record::array();
    for (const auto& s : segment_answer(*a.tree, config.boundaries, a.answer_id)) {
      r["segments"].push_back({{"edu_indices", s.edu_indices}, {"text", s.text}});
    }
    records.push_back(stamp_version(r));
  }
  emit_records(o.out, records, out);
  return kExitOk;
}

int cmd_interp(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = load_config(o);
  const auto& profile = config.profile();
  if (profile.interp_generators.empty()) {
    throw Error(ErrorCode::InvalidConfig, require_backend_msg("interp_generators"));
  }
  if (!profile.embedder) throw Error(ErrorCode::InvalidConfig, require_backend_msg("embedder"));
  std::vector<std::unique_ptr<ChatBackend>> owned;
  std::vector<ChatBackend*> generators;
  for (const auto& spec : profile.interp_generators) {
    owned.push_back(make_chat_backend(spec));
    generators.push_back(owned.back().get());
  }
  auto embedder = make_embedding_backend(*profile.embedder);

  std::vector<Question> questions;
  for (const auto& r : read_corpus(o.in)) questions.push_back(Question::from_json(r));
  std::vector<Record> spaces(questions.size());
  std::vector<std::vector<GenerationWarning>> warnings(questions.size());
  parallel_for(questions.size(), config.max_in_flight, [&](std::size_t i) {
    const auto& q = questions[i];
    const auto community = find_community(q.community);
    auto raw = generate_raw(q.title, community ? community->description : std::string(), generators);
    warnings[i] = std::move(raw.warnings);
    spaces[i] = stamp_version(
        deduplicate(raw.items, *embedder, config.dedup_threshold, q.question_id).to_json());
  });
  emit_records(o.out, spaces, out);

  std::vector<Record> diag;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    for (const auto& w : warnings[i]) {
      diag.push_back({{"question_id", questions[i].question_id},
                      {"generator", w.generator},
                      {"message", w.message}});
    }
  }
  if (!diag.empty()) {
    const auto path = default_diagnostics_path(o);
    if (path.empty()) {
      err << serialize_corpus(diag);
    } else {
      write_corpus(path, diag);
    }
  }
  return kExitOk;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  const auto config = load_config(o);
  const auto& profile = config.profile();
  if (!profile.act_labeler) throw Error(ErrorCode::InvalidConfig, require_backend_msg("act_labeler"));
  const auto ontology = load_ontology_file(config.ontology_path);

  std::map<std::string, std::string> titles;
  if (!o.questions.empty()) {
    for (const auto& r : read_corpus(o.questions)) {
      auto q = Question::from_json(r);
      titles[q.question_id] = q.title;
    }
  }
  const SpaceMap spaces = o.spaces.empty() ? SpaceMap{} : read_spaces(o.spaces);
  bool needs_labeler = false;
  for (const auto& [qid, s] : spaces) needs_labeler = needs_labeler || !s.empty();
  if (needs_labeler && !profile.interp_labeler) {
    throw Error(ErrorCode::InvalidConfig, require_backend_msg("interp_labeler"));
  }
  auto act_labeler = make_chat_backend(*profile.act_labeler);
  std::unique_ptr<ChatBackend> interp_labeler =
      profile.interp_labeler ? make_chat_backend(*profile.interp_labeler) : nullptr;
  ChatBackend& pairing = interp_labeler ? *interp_labeler : *act_labeler;

  const auto answers = read_answers(o.in);
  std::vector<AnswerInput> inputs;
  for (const auto& a : answers) {
    if (!a.tree) throw Error(ErrorCode::MalformedDocument, "answer " + a.answer_id + " has no rst_tree");
    std::string question;
    if (a.extra.contains("question") && a.extra["question"].is_string()) {
      question = a.extra["question"].get<std::string>();
    } else if (auto it = titles.find(a.question_id); it != titles.end()) {
      question = it->second;
    } else {
      throw Error(ErrorCode::MalformedDocument,
                  "no question text for answer " + a.answer_id + " (pass --questions)");
    }
    inputs.push_back({a.answer_id, a.question_id, question, a.text, *a.tree});
  }

  std::vector<DiscoTrace> traces(inputs.size());
  parallel_for(inputs.size(), config.max_in_flight, [&](std::size_t i) {
    InterpretationSpace empty;
    empty.question_id = inputs[i].question_id;
    auto it = spaces.find(inputs[i].question_id);
    const auto& space = it == spaces.end() ? empty : it->second;
    traces[i] = trace_answer(inputs[i], space, ontology, config.boundaries, *act_labeler, pairing,
                             config.pipeline);
  });

  std::vector<Record> records, diag;
  for (const auto& t : traces) {
    records.push_back(t.to_json());
    for (const auto& d : t.diagnostics) {
      Record r;
      r["answer_id"] = t.answer_id;
      const auto dj = d.to_json();
      for (auto it = dj.begin(); it != dj.end(); ++it) r[it.key()] = it.value();
      diag.push_back(std::move(r));
    }
  }
  emit_records(o.out, records, out);
  if (!diag.empty()) {
    const auto path = default_diagnostics_path(o);
    if (path.empty()) {
      err << serialize_corpus(diag);
    } else {
      write_corpus(path, diag);
    }
  }
  return kExitOk;
}

int cmd_model(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = load_config(o);
  const auto ontology = load_ontology_file(config.ontology_path);
  const auto projection = o.family_level ? Projection::Family : Projection::Act;
  const auto model = BigramModel::fit(act_sequences(read_traces(o.in), ontology, projection),
                                      strategy_vocabulary(ontology, projection), config.smoothing);
  emit(o.out, model.to_json().dump(2) + "\n", out);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = load_config(o);
  const auto ontology = load_ontology_file(config.ontology_path);
  const auto projection = o.family_level ? Projection::Family : Projection::Act;
  if (!o.names.empty() && o.names.size() != o.corpora.size()) {
    throw Error(ErrorCode::InvalidArgument, "--names needs one name per corpus");
  }
  std::vector<NamedCorpus> corpora;
  for (std::size_t i = 0; i < o.corpora.size(); ++i) {
    corpora.emplace_back(o.names.empty() ? stem(o.corpora[i]) : o.names[i],
                         act_sequences(read_traces(o.corpora[i]), ontology, projection));
  }
  const auto matrix = cross_perplexity_matrix(corpora, strategy_vocabulary(ontology, projection),
                                              config.smoothing, config.pooling);
  emit(o.out, matrix.to_csv(), out);
  if (!o.json_out.empty()) emit(o.json_out, matrix.to_json().dump(2) + "\n", out);
  if (!o.long_out.empty()) emit(o.long_out, matrix.to_long_csv(), out);
  return kExitOk;
}

// Act label of every EDU, in order.
std::vector<std::string> edu_labels(const DiscoTrace& trace) {
  std::vector<std::pair<std::size_t, std::string>> pairs;
  for (const auto& step : trace.steps) {
    for (auto i : step.edu_indices) pairs.emplace_back(i, step.act_id);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::string> labels;
  for (auto& [i, label] : pairs) labels.push_back(std::move(label));
  return labels;
}

int cmd_metrics(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = load_config(o);
  const auto ontology = load_ontology_file(config.ontology_path);
  const auto traces = read_traces(o.in);
  Record report;
  if (!o.spaces.empty()) {
    const auto spaces = read_spaces(o.spaces);
    const auto m = interpretation_metrics(traces, spaces, ontology, config.addressing);
    report["interpretation"] = m.to_json();
    if (!o.csv_out.empty()) emit(o.csv_out, m.answers_csv(), out);
    if (!o.model_traces.empty()) {
      const auto bins = overanswering_bins(traces, read_traces(o.model_traces), spaces, ontology,
                                           config.overanswering_bins, config.addressing);
      report["overanswering"] = bins.to_json();
    }
  }
  if (!o.against.empty()) {
    report["act_proportions"] =
        act_proportion_test(traces, read_traces(o.against), ontology, config.alpha, o.family_level)
            .to_json();
  }
  if (!o.agreement.empty()) {
    std::map<std::string, const DiscoTrace*> by_id;
    const auto other = read_traces(o.agreement);
    for (const auto& t : other) by_id[t.answer_id] = &t;
    std::vector<std::string> a, b;
    for (const auto& t : traces) {
      auto it = by_id.find(t.answer_id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::LengthMismatch, "answer " + t.answer_id + " missing from " + o.agreement);
      }
      auto la = edu_labels(t);
      auto lb = edu_labels(*it->second);
      if (la.size() != lb.size()) {
        throw Error(ErrorCode::LengthMismatch, "answer " + t.answer_id + " covers different EDUs");
      }
      for (std::size_t i = 0; i < la.size(); ++i) {
        a.push_back(o.family_level ? ontology.family_token(la[i]) : la[i]);
        b.push_back(o.family_level ? ontology.family_token(lb[i]) : lb[i]);
      }
    }
    report["agreement"] = cohens_kappa(a, b, o.family_level ? "family" : "act").to_json();
  }
  if (report.is_null()) {
    throw Error(ErrorCode::InvalidArgument, "nothing to compute: pass --spaces, --against or --agreement");
  }
  emit(o.out, report.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_mimic(const Options& o, std::ostream& out, std::ostream&) {
  const auto config = load_config(o);
  const auto& profile = config.profile();
  if (!profile.answerer) throw Error(ErrorCode::InvalidConfig, require_backend_msg("answerer"));
  auto answerer = make_chat_backend(*profile.answerer);
  std::vector<Question> questions;
  for (const auto& r : read_corpus(o.in)) questions.push_back(Question::from_json(r));
  std::vector<ChatRequest> requests;
  for (const auto& q : questions) {
    const auto name = o.community.empty() ? q.community : o.community;
    const auto community = find_community(name);
    if (!community) throw Error(ErrorCode::UnknownCommunity, "unknown community " + name);
    if (community->guidelines.empty()) {
      throw Error(ErrorCode::InvalidArgument, "community " + community->name + " has no guidelines");
    }
    requests.push_back(
        build_mimic_prompt(q.title, community->name, community->description, community->guidelines));
  }
  std::vector<Record> answers(questions.size());
  parallel_for(questions.size(), config.max_in_flight, [&](std::size_t i) {
    Answer a;
    a.answer_id = questions[i].question_id + "_" + answerer->name();
    a.question_id = questions[i].question_id;
    a.text = answerer->complete(requests[i]);
    answers[i] = stamp_version(a.to_json());
  });
  emit_records(o.out, answers, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discourse-act traces for community QA answers"};
  app.require_subcommand(1);
  Options o;

  auto* filter = app.add_subcommand("filter", "apply title and thread filters to raw posts");
  add_common(filter, o);
  filter->add_option("--in", o.in, "raw posts JSONL")->required();
  filter->add_option("--report", o.report, "per-rule rejection report (JSON)");
  filter->footer(kRawPostSchema);

  auto* sample = app.add_subcommand("sample", "draw questions from filtered posts");
  add_common(sample, o);
  sample->add_option("--in", o.in, "filtered posts JSONL")->required();
  sample->add_option("-n,--count", o.n, "questions to draw");
  sample->add_option("--answers-out", o.answers_out, "answer records for the sampled comments");
  sample->footer(std::string(kQuestionSchema) + "\n" + kAnswerSchema);

  auto* segment = app.add_subcommand("segment", "split answers into action segments");
  add_common(segment, o);
  segment->add_option("--in", o.in, "answers JSONL")->required();
  segment->footer(std::string(kAnswerSchema) + "\n" + kSegmentSchema);

  auto* interp = app.add_subcommand("interp", "build interpretation spaces");
  add_common(interp, o);
  interp->add_option("--in", o.in, "questions JSONL")->required();
  interp->add_option("--diagnostics", o.diagnostics, "generator warnings JSONL");
  interp->footer(std::string(kQuestionSchema) + "\n" + kSpaceSchema);

  auto* trace = app.add_subcommand("trace", "tag answers and pair interpretations");
  add_common(trace, o);
  trace->add_option("--in", o.in, "answers JSONL")->required();
  trace->add_option("--questions", o.questions, "questions JSONL");
  trace->add_option("--spaces", o.spaces, "interpretation spaces JSONL");
  trace->add_option("--diagnostics", o.diagnostics, "degraded-call records JSONL");
  trace->footer(std::string(kAnswerSchema) + "\n" + kSpaceSchema + "\n" + kTraceSchema);

  auto* model = app.add_subcommand("model", "fit a bigram model over act sequences");
  add_common(model, o);
  model->add_option("--in", o.in, "traces JSONL")->required();
  model->footer(kTraceSchema);

  auto* compare = app.add_subcommand("compare", "cross-perplexity matrix between corpora");
  add_common(compare, o);
  compare->add_option("--corpora", o.corpora, "traces JSONL per corpus")->required()->expected(1, -1);
  compare->add_option("--names", o.names, "corpus names, default file stems")->expected(1, -1);
  compare->add_option("--json", o.json_out, "matrix as JSON");
  compare->add_option("--long", o.long_out, "train,eval,perplexity CSV");
  compare->footer(kTraceSchema);

  auto* metrics = app.add_subcommand("metrics", "interpretation, overanswering, proportion and agreement statistics");
  add_common(metrics, o);
  metrics->add_option("--in", o.in, "traces JSONL")->required();
  metrics->add_option("--spaces", o.spaces, "interpretation spaces JSONL");
  metrics->add_option("--csv", o.csv_out, "per-answer interpretation metrics CSV");
  metrics->add_option("--model-traces", o.model_traces, "model traces for overanswering bins");
  metrics->add_option("--against", o.against, "second corpus for the act proportion test");
  metrics->add_option("--agreement", o.agreement, "second labeling of the same answers for kappa");
  metrics->footer(std::string(kTraceSchema) + "\n" + kSpaceSchema);

  auto* mimic = app.add_subcommand("mimic-answer", "answer questions as a community member");
  add_common(mimic, o);
  mimic->add_option("--in", o.in, "questions JSONL")->required();
  mimic->add_option("--community", o.community, "community name, default the question's");
  mimic->footer(std::string(kQuestionSchema) + "\n" + kAnswerSchema);

  std::vector<std::string> argv_store{"discotrace"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) {
      for (auto* sub : app.get_subcommands()) err << sub->help();
      return kExitInputError;
    }
    return kExitOk;
  }

  try {
    if (filter->parsed()) return cmd_filter(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out, err);
    if (segment->parsed()) return cmd_segment(o, out, err);
    if (interp->parsed()) return cmd_interp(o, out, err);
    if (trace->parsed()) return cmd_trace(o, out, err);
    if (model->parsed()) return cmd_model(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
    if (metrics->parsed()) return cmd_metrics(o, out, err);
    if (mimic->parsed()) return cmd_mimic(o, out, err);
  } catch (const Error& e) {
    err << "discotrace: " << e.what() << "\n";
    return e.is_backend_failure() ? kExitBackendFailure : kExitInputError;
  } catch (const std::exception& e) {
    err << "discotrace: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace discotrace::cli
