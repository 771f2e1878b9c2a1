#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/interpretation_space.hpp"
#include "discotrace/llm_gateway.hpp"
#include "discotrace/ontology.hpp"
#include "discotrace/rst_tree.hpp"
#include "discotrace/segmentation.hpp"

namespace discotrace {

struct TaggedSegment {
  std::vector<std::size_t> edu_indices;
  std::string act_id;
  // Set when this segment absorbed a following piece labeled with the same act.
  bool continuation = false;

  bool operator==(const TaggedSegment&) const = default;
};

// Record of a degraded call: the segment fell back to NONE (tagging) or to no
// interpretation (pairing).
struct Diagnostic {
  std::string stage;  // "tag" or "pair"
  std::size_t segment_index = 0;
  std::string request_digest;
  std::string message;

  nlohmann::ordered_json to_json() const;
  static Diagnostic from_json(const nlohmann::json& j);
  bool operator==(const Diagnostic&) const = default;
};

struct TagResult {
  std::vector<TaggedSegment> segments;
  std::vector<Diagnostic> diagnostics;
};

struct TraceStep {
  std::string act_id;
  std::optional<std::string> interpretation_id;
  std::vector<std::size_t> edu_indices;

  bool operator==(const TraceStep&) const = default;
};

struct DiscoTrace {
  std::string answer_id;
  std::string question_id;
  std::vector<TraceStep> steps;
  std::vector<Diagnostic> diagnostics;

  std::vector<std::string> act_sequence() const;

  nlohmann::ordered_json to_json() const;
  static DiscoTrace from_json(const nlohmann::json& j);
  bool operator==(const DiscoTrace&) const = default;
};

struct PipelineOptions {
  // Extra attempts when a response cannot be parsed.
  std::size_t parse_retry_limit = 2;
};

// Labels segments left to right, giving each call the previous segment and its
// label. Per-subsegment answers split a segment at EDU boundaries; adjacent
// pieces with the same act are merged. A segment whose responses stay
// unusable, or whose backend call fails, is labeled NONE with a diagnostic.
// Only Error(AuthError) propagates.
TagResult tag_answer(const std::string& question, const std::string& answer_text,
                     const std::vector<ActionSegment>& segments, const RstTree& tree,
                     const Ontology& ontology, ChatBackend& backend,
                     const PipelineOptions& options = {});

// Issues one labeling call per eligible segment when the space is non-empty.
DiscoTrace pair_interpretations(const std::string& question, const InterpretationSpace& space,
                                const TagResult& tagged, const std::string& answer_text,
                                const RstTree& tree, const Ontology& ontology,
                                ChatBackend& backend, const PipelineOptions& options = {});

struct AnswerInput {
  std::string answer_id;
  std::string question_id;
  std::string question;
  std::string text;
  RstTree tree;
};

// Segment, tag and pair one answer.
DiscoTrace trace_answer(const AnswerInput& answer, const InterpretationSpace& space,
                        const Ontology& ontology, const BoundaryConfig& boundaries,
                        ChatBackend& act_labeler, ChatBackend& interp_labeler,
                        const PipelineOptions& options = {});

// Checks ontology membership, eligibility gating, interpretation membership
// and that steps partition 0..edu_count-1 in order. Returns the violations.
std::vector<std::string> validate_trace(const DiscoTrace& trace, const Ontology& ontology,
                                        std::size_t edu_count,
                                        const InterpretationSpace* space = nullptr);

}  // namespace discotrace
