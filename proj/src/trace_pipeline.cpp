#include "discotrace/trace_pipeline.hpp"

#include <algorithm>

#include "discotrace/error.hpp"
#include "discotrace/prompts.hpp"
#include "discotrace/schema.hpp"

namespace discotrace {

namespace {

bool is_parse_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnparsableResponse:
    case ErrorCode::InvalidActId:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::MixedForm:
      return true;
    default:
      return false;
  }
}

std::string segment_text(const RstTree& tree, const std::vector<std::size_t>& indices) {
  std::vector<std::string> texts;
  texts.reserve(indices.size());
  for (std::size_t i : indices) texts.push_back(tree.edu(i).text);
  return join_texts(texts);
}

void check_partition(const std::vector<ActionSegment>& segments, std::size_t edu_count) {
  std::size_t expected = 0;
  for (const auto& segment : segments) {
    if (segment.edu_indices.empty()) {
      throw Error(ErrorCode::EmptySegment, "action segment without EDUs");
    }
    for (std::size_t i : segment.edu_indices) {
      if (i != expected) {
        throw Error(ErrorCode::InvalidArgument,
                    "segments must partition EDUs 0.." + std::to_string(edu_count - 1) +
                        " in order");
      }
      ++expected;
    }
  }
  if (expected != edu_count) {
    throw Error(ErrorCode::InvalidArgument, "segments cover " + std::to_string(expected) +
                                                " of " + std::to_string(edu_count) + " EDUs");
  }
}

// Expands parsed assignments to one label per subsegment. Subsegments the
// response skipped inherit the nearest labeled subsegment before them (or the
// first labeled one when none precedes).
std::vector<std::string> labels_per_subsegment(const std::vector<ActAssignment>& assignments,
                                               std::size_t n) {
  if (!assignments.front().subsegment_index) {
    return std::vector<std::string>(n, assignments.front().action_id);
  }
  std::vector<std::optional<std::string>> sparse(n);
  for (const auto& a : assignments) sparse[*a.subsegment_index] = a.action_id;
  std::vector<std::string> labels(n);
  std::optional<std::string> carry;
  for (std::size_t i = 0; i < n; ++i) {
    if (sparse[i]) carry = sparse[i];
    if (carry) labels[i] = *carry;
  }
  const auto first = std::find_if(sparse.begin(), sparse.end(),
                                  [](const auto& s) { return s.has_value(); });
  for (std::size_t i = 0; i < n && !sparse[i]; ++i) labels[i] = **first;
  return labels;
}

}  // namespace

nlohmann::ordered_json Diagnostic::to_json() const {
  nlohmann::ordered_json j;
  j["stage"] = stage;
  j["segment_index"] = segment_index;
  j["request_digest"] = request_digest;
  j["message"] = message;
  return j;
}

Diagnostic Diagnostic::from_json(const nlohmann::json& j) {
  Diagnostic d;
  d.stage = j.value("stage", std::string{});
  d.segment_index = j.value("segment_index", std::size_t{0});
  d.request_digest = j.value("request_digest", std::string{});
  d.message = j.value("message", std::string{});
  return d;
}

std::vector<std::string> DiscoTrace::act_sequence() const {
  std::vector<std::string> acts;
  acts.reserve(steps.size());
  for (const auto& step : steps) acts.push_back(step.act_id);
  return acts;
}

nlohmann::ordered_json DiscoTrace::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["answer_id"] = answer_id;
  j["question_id"] = question_id;
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& step : steps) {
    nlohmann::ordered_json s;
    s["act_id"] = step.act_id;
    if (step.interpretation_id) s["interpretation_id"] = *step.interpretation_id;
    s["edu_indices"] = step.edu_indices;
    j["steps"].push_back(std::move(s));
  }
  j["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& d : diagnostics) j["diagnostics"].push_back(d.to_json());
  return j;
}

DiscoTrace DiscoTrace::from_json(const nlohmann::json& j) {
  DiscoTrace trace;
  try {
    trace.answer_id = j.at("answer_id").get<std::string>();
    trace.question_id = j.value("question_id", std::string{});
    for (const auto& s : j.at("steps")) {
      TraceStep step;
      step.act_id = s.at("act_id").get<std::string>();
      if (s.contains("interpretation_id") && !s.at("interpretation_id").is_null()) {
        step.interpretation_id = s.at("interpretation_id").get<std::string>();
      }
      step.edu_indices = s.value("edu_indices", std::vector<std::size_t>{});
      trace.steps.push_back(std::move(step));
    }
    if (j.contains("diagnostics")) {
      for (const auto& d : j.at("diagnostics")) trace.diagnostics.push_back(Diagnostic::from_json(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("trace: ") + e.what());
  }
  return trace;
}

TagResult tag_answer(const std::string& question, const std::string& answer_text,
                     const std::vector<ActionSegment>& segments, const RstTree& tree,
                     const Ontology& ontology, ChatBackend& backend,
                     const PipelineOptions& options) {
  check_partition(segments, tree.edu_count());
  TagResult result;
  std::optional<std::string> prev_text;
  std::optional<std::string> prev_label;

  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& segment = segments[s];
    ActPromptInput input;
    input.question = question;
    input.answer = answer_text;
    input.prev_segment = prev_text;
    input.prev_label = prev_label;
    input.segment = segment_text(tree, segment.edu_indices);
    for (std::size_t i : segment.edu_indices) input.subsegments.push_back(tree.edu(i).text);

    ChatRequest request = build_act_prompt(input, ontology);
    request.model_name = backend.model();
    const std::size_t n = input.subsegments.size();

    std::vector<std::string> labels;
    std::string failure;
    for (std::size_t attempt = 0; attempt <= options.parse_retry_limit; ++attempt) {
      try {
        labels = labels_per_subsegment(
            parse_act_response(backend.complete(request), ontology, n), n);
        break;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::AuthError) throw;
        failure = e.what();
        if (!is_parse_failure(e.code())) break;
      }
    }
    if (labels.empty()) {
      labels.assign(n, std::string(kNoneAct));
      result.diagnostics.push_back({"tag", s, request_digest(request), failure});
    }

    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t edu = segment.edu_indices[k];
      if (!result.segments.empty() && result.segments.back().act_id == labels[k]) {
        auto& last = result.segments.back();
        last.edu_indices.push_back(edu);
        last.continuation = true;
      } else {
        result.segments.push_back({{edu}, labels[k], false});
      }
    }
    prev_text = input.segment;
    prev_label = labels.back();
  }
  return result;
}

DiscoTrace pair_interpretations(const std::string& question, const InterpretationSpace& space,
                                const TagResult& tagged, const std::string& answer_text,
                                const RstTree& tree, const Ontology& ontology,
                                ChatBackend& backend, const PipelineOptions& options) {
  DiscoTrace trace;
  trace.question_id = space.question_id;
  trace.diagnostics = tagged.diagnostics;

  InterpretationList interpretations;
  for (const auto& m : space.members) interpretations.emplace_back(m.id, m.text);
  const auto known_ids = space.ids();

  for (std::size_t k = 0; k < tagged.segments.size(); ++k) {
    const auto& segment = tagged.segments[k];
    TraceStep step{segment.act_id, std::nullopt, segment.edu_indices};
    if (space.empty() || segment.act_id == kNoneAct || !ontology.is_eligible(segment.act_id)) {
      trace.steps.push_back(std::move(step));
      continue;
    }

    ChatRequest request = build_interp_label_prompt(
        question, interpretations, answer_text, segment_text(tree, segment.edu_indices),
        ontology.at(segment.act_id).display_name);
    request.model_name = backend.model();

    std::string failure;
    bool resolved = false;
    for (std::size_t attempt = 0; attempt <= options.parse_retry_limit; ++attempt) {
      try {
        step.interpretation_id = parse_interp_label(backend.complete(request), known_ids);
        resolved = true;
        break;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::AuthError) throw;
        failure = e.what();
        if (e.code() != ErrorCode::UnparsableResponse) break;
      }
    }
    if (!resolved) {
      trace.diagnostics.push_back({"pair", k, request_digest(request), failure});
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

DiscoTrace trace_answer(const AnswerInput& answer, const InterpretationSpace& space,
                        const Ontology& ontology, const BoundaryConfig& boundaries,
                        ChatBackend& act_labeler, ChatBackend& interp_labeler,
                        const PipelineOptions& options) {
  const auto segments = segment_answer(answer.tree, boundaries, answer.answer_id);
  const auto tagged = tag_answer(answer.question, answer.text, segments, answer.tree, ontology,
                                 act_labeler, options);
  auto trace = pair_interpretations(answer.question, space, tagged, answer.text, answer.tree,
                                    ontology, interp_labeler, options);
  trace.answer_id = answer.answer_id;
  trace.question_id = answer.question_id;
  return trace;
}

std::vector<std::string> validate_trace(const DiscoTrace& trace, const Ontology& ontology,
                                        std::size_t edu_count,
                                        const InterpretationSpace* space) {
  std::vector<std::string> problems;
  std::size_t expected = 0;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& step = trace.steps[k];
    const std::string where = "step " + std::to_string(k) + ": ";
    if (step.act_id != kNoneAct && !ontology.contains(step.act_id)) {
      problems.push_back(where + "act " + step.act_id + " not in ontology");
    }
    if (step.interpretation_id) {
      const bool eligible = ontology.contains(step.act_id) && ontology.is_eligible(step.act_id);
      if (!eligible) problems.push_back(where + "interpretation on ineligible act " + step.act_id);
      if (space && !space->find(*step.interpretation_id)) {
        problems.push_back(where + "unknown interpretation " + *step.interpretation_id);
      }
    }
    if (k > 0 && trace.steps[k - 1].act_id == step.act_id) {
      problems.push_back(where + "repeats the previous act without merging");
    }
    if (step.edu_indices.empty()) problems.push_back(where + "no EDUs");
    for (std::size_t i : step.edu_indices) {
      if (i != expected) {
        problems.push_back(where + "EDU " + std::to_string(i) + " out of order (expected " +
                           std::to_string(expected) + ")");
        expected = i;
      }
      ++expected;
    }
  }
  if (expected != edu_count) {
    problems.push_back("steps cover " + std::to_string(expected) + " of " +
                       std::to_string(edu_count) + " EDUs");
  }
  return problems;
}

}  // namespace discotrace
