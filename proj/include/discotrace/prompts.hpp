#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "discotrace/llm_gateway.hpp"
#include "discotrace/ontology.hpp"

namespace discotrace {

// Shown in the "Previous Segment" block for the first segment of an answer.
inline constexpr std::string_view kNoPreviousPlaceholder = "(none)";

struct ActPromptInput {
  std::string question;
  std::string answer;
  std::optional<std::string> prev_segment;
  std::optional<std::string> prev_label;
  std::string segment;
  std::vector<std::string> subsegments;
};

// Throws Error(EmptySegment) when the segment or its subsegment list is empty.
ChatRequest build_act_prompt(const ActPromptInput& input, const Ontology& ontology);

struct ActAssignment {
  std::optional<std::size_t> subsegment_index;
  std::string action_id;

  bool operator==(const ActAssignment&) const = default;
};

// Accepts the whole-segment form [{"action_id": ...}] or the per-subsegment
// form [{"subsegment_index": i, "action_id": ...}, ...]. Code fences and
// surrounding whitespace are stripped first.
std::vector<ActAssignment> parse_act_response(std::string_view raw, const Ontology& ontology,
                                              std::size_t n_subsegments);
std::string serialize_act_assignments(const std::vector<ActAssignment>& assignments);

// An empty community context drops the context paragraph entirely.
ChatRequest build_interp_gen_prompt(const std::string& question,
                                    const std::string& community_context);

// "NONE" (any case) yields an empty list; otherwise the numbered items.
std::vector<std::string> parse_interp_list(std::string_view raw);

// (id, text) pairs in display order.
using InterpretationList = std::vector<std::pair<std::string, std::string>>;

ChatRequest build_interp_label_prompt(const std::string& question,
                                      const InterpretationList& interpretations,
                                      const std::string& answer, const std::string& segment,
                                      const std::string& act_label);

// Returns the chosen id, or nullopt for "NONE". Accepts a bare object or a
// one-element array. Throws Error(UnparsableResponse / UnknownInterpretationId).
std::optional<std::string> parse_interp_label(std::string_view raw,
                                              const std::vector<std::string>& known_ids);

// Throws Error(InvalidArgument) when any field is empty.
ChatRequest build_mimic_prompt(const std::string& question, const std::string& subreddit_name,
                               const std::string& subreddit_explanation,
                               const std::string& guidelines);

std::string strip_code_fences(std::string_view raw);

}  // namespace discotrace
