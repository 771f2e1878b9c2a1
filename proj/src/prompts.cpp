#include "discotrace/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <set>

#include <nlohmann/json.hpp>

#include "discotrace/error.hpp"

namespace discotrace {

namespace {

constexpr std::string_view kActSystem = R"(You are an expert discourse analyst trying to understand how people answer questions on Reddit. You will analyze answers by tagging each text segment from a Reddit answer with a discourse action.

**Rules**
1. **Select EXACTLY ONE action_id per segment or subsegment.**
2. If the current segment continues the previous action, reuse the previous action_id.
3. If a new rhetorical move begins, select the appropriate new action_id.
4. If no action fits, use "NONE".

**Subsegment Labeling**
Each segment you receive was produced by a discourse parser. You will also be shown the subsegments (sentences) that make up the segment. If all subsegments serve the same discourse function, return a single-element array with one action_id. If different subsegments serve **different discourse functions**, return an array with one entry per subsegment, each with its subsegment_index and action_id.

Common patterns worth splitting:
- Background/reasoning subsegments followed by an answer subsegment
- An answer subsegment followed by a redirect or recommendation
- A presupposition rejection followed by an alternative answer

Do NOT split when:
- A subsegment contains light framing for the next (e.g., "So basically," followed by an answer -> single Assert Answer)
- The difference is just emphasis vs. substance within the same move

**Caveats and Task Nuances**
1. Consider the expected answer type of the question when labeling actions. Responding to "Where can I find X" with a website recommendation is an "Answer the Question" action, not a "Direct to Resource" action. If the resource is the answer itself, label it as "Assert Answer". If the resource is suggested as additional reading, use Direct to Resource.
2. When a segment contains both an answer and supporting reasoning: if subsegments are provided and the answer and reasoning fall in **different subsegments**, split them. If they are in the **same subsegment** (tightly integrated), label it as "Provide Reasoning or Justification" if the justification is non-trivial, otherwise "Assert Answer".
3. When a segment explains WHY something is the case, determine what it is explaining:
- If it explains why an *answer* is correct -> "Provide Reasoning or Justification"
- If it explains why a *premise of the question* is wrong -> "Reject Presupposition"
Example: For "Why is the sky blue?", the segment "Because of Rayleigh scattering" is justification. For "What's the best liver detox cleanse?", the segment "The concept of 'detoxing' your liver is misleading -- your liver already filters toxins continuously" is rejecting the presupposition.
4. Sharing a personal anecdote or experience is "Provide Example", NOT "Provide Background." Background sets up context, frameworks, or history *before* answering. Examples use concrete cases (including personal ones) to *support or illustrate* an answer.
- "I have a doctorate, and sometimes introduce myself as Dr." -> Provide Example
- "The use of honorifics has a long and contested history in academia." -> Provide Background
5. When a segment follows a recommendation and provides supporting information, ask: does it explain why the recommendation is good *in terms of the original question*, or does it answer a *different* question?
- If it explains why the recommendation addresses the original question -> "Provide Reasoning or Justification"
- If it introduces new information that answers a tangentially related but different question -> "Answer a Question or Interpretation outside of Interpretation Space"
6. When a segment invokes an external source (study, statistic, law, quote, expert consensus) to support a claim, use "Cite External Source" -- NOT "Provide Example" or "Provide Reasoning." The key test: does the credibility derive from an independently verifiable external source, or from the answerer's own experience/logic?
- "A 2019 Lancet study found no significant effect." -> Cite External Source
- "I saw the same thing happen at my last job." -> Provide Example
- "That's because the compiler needs type info at compile time." -> Provide Reasoning

**Action Ontology**
{ontology}

**Output Format**
Always respond with ONLY a JSON array. No explanation, no reasoning, no commentary.

Single action for whole segment:
[{"action_id": "action_AQ_assert_answer"}]

Distinct actions per subsegment:
[{"subsegment_index": 0, "action_id": "action_CQ_reject_presupposition"}, {"subsegment_index": 1, "action_id": "action_AQ_assert_answer"}]

When no action fits:
[{"action_id": "NONE"}])";

constexpr std::string_view kActUser = R"(**Question**
{question}

**Full Answer**
{answer}

**Previous Segment** action="{prev_label}"
{segment_prev}

**Current Segment**
{segment}

**Subsegments**
{subsegments}

Respond with ONLY a JSON array.)";

constexpr std::string_view kInterpGenIntro = R"(Users in a question answering community typically try to express a need for information through a question. Sometimes, from the language of their question alone, it is not clear what their exact information need is. This leads to many distinct interpretations of their question, each representing different information needs. You will be given a **question** asked in a specific online community that may have many distinct interpretations. Your task is to output those interpretations as unambiguous distinct questions.)";

constexpr std::string_view kInterpGenRules = R"(**Critical Rules**
- Each interpretation must be a **different plausible reading** of the SAME question -- a different thing the user could have MEANT by their words.
- Do NOT generate sub-questions, follow-up questions, related questions, or questions that explore different aspects of the topic.
- Ask yourself: "Could the user have typed this exact question while meaning THIS?" If the answer is no, it is not a valid interpretation.
- Interpretations should differ in WHAT the user is asking, not provide additional angles on the same clear question.

If the user's information need is already clear from their question, output 'NONE'. Otherwise, output the numbered list of interpretations as unambiguous questions and nothing else.)";

constexpr std::string_view kQuestionUser = R"(**Question**
{question})";

constexpr std::string_view kInterpLabelSystem = R"(You are an expert discourse analyst. A Reddit answer segment has already been labeled with a discourse action. Your task is to determine which interpretation of the original question the segment best addresses.

**Rules**
1. You are given a question, its possible interpretations, and a segment from an answer that has been labeled with a discourse action.
2. Determine which question interpretation the segment most directly addresses, adopts, or targets. This may be explicit or implicit.
3. If the segment clearly and directly addresses one of the interpretations, return that interpretation's ID.
4. If the segment does not clearly target any specific interpretation, return "NONE".

**Output Format**
Respond with exactly ONE JSON object:
[{"interpretation_id": "id_1"}]

When no specific interpretation is targeted:
[{"interpretation_id": "NONE"}])";

constexpr std::string_view kInterpLabelUser = R"(**Question**
{question}

**Question Interpretations**
{interpretations}

**Full Answer**
{answer}

**Segment** (labeled as "{action_label}")
{segment}

Respond with EXACTLY ONE JSON dictionary (NOT an array).)";

constexpr std::string_view kMimicSystem =
    "r/{subreddit} is a subreddit for {subreddit_explanation}. The community guidelines for "
    "r/{subreddit} are as follows: {community_guidelines}.";

constexpr std::string_view kMimicUser =
    "Answer the question as if you were a redditor in that subreddit: {question}";

using Bindings = std::initializer_list<std::pair<std::string_view, std::string_view>>;

// Single left-to-right pass so placeholders inside substituted values are
// never expanded. Braces that do not name a binding are copied through.
std::string fill(std::string_view tmpl, Bindings bindings) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    bool matched = false;
    for (const auto& [key, value] : bindings) {
      if (tmpl.compare(open + 1, key.size(), key) == 0 &&
          open + 1 + key.size() < tmpl.size() && tmpl[open + 1 + key.size()] == '}') {
        out.append(value);
        pos = open + key.size() + 2;
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.push_back('{');
      pos = open + 1;
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

nlohmann::json parse_json_response(std::string_view raw) {
  const auto body = strip_code_fences(raw);
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorCode::UnparsableResponse, "response is not JSON: " + body.substr(0, 200));
  }
}

bool is_none_marker(std::string_view s) {
  auto t = trim(s);
  while (!t.empty() && (t.front() == '\'' || t.front() == '"' || t.front() == '`')) {
    t.remove_prefix(1);
  }
  while (!t.empty() && (t.back() == '\'' || t.back() == '"' || t.back() == '`' || t.back() == '.')) {
    t.remove_suffix(1);
  }
  return lower(t) == "none";
}

// "1. text", "2) text", "3: text"; returns the text after the numbering.
std::optional<std::string_view> numbered_item(std::string_view line) {
  line = trim(line);
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == 0 || i >= line.size()) return std::nullopt;
  if (line[i] != '.' && line[i] != ')' && line[i] != ':' && line[i] != '-') return std::nullopt;
  return trim(line.substr(i + 1));
}

}  // namespace

std::string strip_code_fences(std::string_view raw) {
  auto body = trim(raw);
  if (body.substr(0, 3) == "```") {
    const auto newline = body.find('\n');
    body = newline == std::string_view::npos ? std::string_view{} : body.substr(newline + 1);
    body = trim(body);
    if (body.size() >= 3 && body.substr(body.size() - 3) == "```") {
      body.remove_suffix(3);
    }
    body = trim(body);
  }
  return std::string(body);
}

ChatRequest build_act_prompt(const ActPromptInput& input, const Ontology& ontology) {
  if (is_blank(input.segment) || input.subsegments.empty()) {
    throw Error(ErrorCode::EmptySegment, "cannot tag an empty segment");
  }
  std::string subsegments;
  for (std::size_t i = 0; i < input.subsegments.size(); ++i) {
    if (i) subsegments += '\n';
    subsegments += "[" + std::to_string(i) + "] " + input.subsegments[i];
  }
  const std::string rendered_ontology = ontology.render();
  const std::string_view prev_label =
      input.prev_label ? std::string_view(*input.prev_label) : kNoPreviousPlaceholder;
  const std::string_view prev_segment =
      input.prev_segment ? std::string_view(*input.prev_segment) : kNoPreviousPlaceholder;

  ChatRequest request;
  request.system = fill(kActSystem, {{"ontology", rendered_ontology}});
  request.user = fill(kActUser, {{"question", input.question},
                                 {"answer", input.answer},
                                 {"prev_label", prev_label},
                                 {"segment_prev", prev_segment},
                                 {"segment", input.segment},
                                 {"subsegments", subsegments}});
  return request;
}

std::vector<ActAssignment> parse_act_response(std::string_view raw, const Ontology& ontology,
                                              std::size_t n_subsegments) {
  if (n_subsegments == 0) {
    throw Error(ErrorCode::InvalidArgument, "n_subsegments must be >= 1");
  }
  const auto document = parse_json_response(raw);
  if (!document.is_array() || document.empty()) {
    throw Error(ErrorCode::UnparsableResponse, "expected a non-empty JSON array");
  }

  std::vector<ActAssignment> out;
  std::size_t indexed = 0;
  for (const auto& entry : document) {
    if (!entry.is_object() || !entry.contains("action_id") || !entry.at("action_id").is_string()) {
      throw Error(ErrorCode::UnparsableResponse, "array entries need a string action_id");
    }
    ActAssignment assignment;
    assignment.action_id = entry.at("action_id").get<std::string>();
    if (assignment.action_id != kNoneAct && !ontology.contains(assignment.action_id)) {
      throw Error(ErrorCode::InvalidActId, "unknown action_id \"" + assignment.action_id + "\"");
    }
    if (entry.contains("subsegment_index") && !entry.at("subsegment_index").is_null()) {
      const auto& idx = entry.at("subsegment_index");
      if (!idx.is_number_integer()) {
        throw Error(ErrorCode::UnparsableResponse, "subsegment_index must be an integer");
      }
      const auto value = idx.get<long long>();
      if (value < 0 || static_cast<std::size_t>(value) >= n_subsegments) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "subsegment_index " + std::to_string(value) + " outside [0, " +
                        std::to_string(n_subsegments) + ")");
      }
      assignment.subsegment_index = static_cast<std::size_t>(value);
      ++indexed;
    }
    out.push_back(std::move(assignment));
  }

  if (indexed != 0 && indexed != out.size()) {
    throw Error(ErrorCode::MixedForm, "some entries carry subsegment_index and some do not");
  }
  if (indexed == 0 && out.size() != 1) {
    throw Error(ErrorCode::UnparsableResponse,
                "whole-segment form must contain exactly one entry");
  }
  if (indexed != 0) {
    if (out.size() > n_subsegments) {
      throw Error(ErrorCode::IndexOutOfRange, "more entries than subsegments");
    }
    std::set<std::size_t> seen;
    for (const auto& a : out) {
      if (!seen.insert(*a.subsegment_index).second) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "duplicate subsegment_index " + std::to_string(*a.subsegment_index));
      }
    }
  }
  return out;
}

std::string serialize_act_assignments(const std::vector<ActAssignment>& assignments) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& a : assignments) {
    nlohmann::ordered_json entry;
    if (a.subsegment_index) entry["subsegment_index"] = *a.subsegment_index;
    entry["action_id"] = a.action_id;
    out.push_back(std::move(entry));
  }
  return out.dump();
}

ChatRequest build_interp_gen_prompt(const std::string& question,
                                    const std::string& community_context) {
  ChatRequest request;
  request.system = std::string(kInterpGenIntro) + "\n\n";
  if (!is_blank(community_context)) request.system += community_context + "\n\n";
  request.system += kInterpGenRules;
  request.user = fill(kQuestionUser, {{"question", question}});
  return request;
}

std::vector<std::string> parse_interp_list(std::string_view raw) {
  const auto body = strip_code_fences(raw);
  if (is_none_marker(body)) return {};

  std::vector<std::string> items;
  bool any_numbered = false;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto end = body.find('\n', pos);
    if (end == std::string::npos) end = body.size();
    const std::string_view line(body.data() + pos, end - pos);
    pos = end + 1;
    if (is_blank(line)) continue;
    if (auto item = numbered_item(line)) {
      any_numbered = true;
      items.emplace_back(*item);
    } else if (!items.empty()) {
      // wrapped continuation of the previous item
      auto& last = items.back();
      if (!last.empty()) last += ' ';
      last += trim(line);
    }
  }
  if (!any_numbered) {
    throw Error(ErrorCode::UnparsableResponse,
                "expected NONE or a numbered list: " + body.substr(0, 200));
  }
  items.erase(std::remove_if(items.begin(), items.end(),
                             [](const std::string& s) { return is_blank(s); }),
              items.end());
  return items;
}

ChatRequest build_interp_label_prompt(const std::string& question,
                                      const InterpretationList& interpretations,
                                      const std::string& answer, const std::string& segment,
                                      const std::string& act_label) {
  std::string rendered;
  for (const auto& [id, text] : interpretations) {
    if (!rendered.empty()) rendered += '\n';
    rendered += id + ": " + text;
  }
  ChatRequest request;
  request.system = std::string(kInterpLabelSystem);
  request.user = fill(kInterpLabelUser, {{"question", question},
                                         {"interpretations", rendered},
                                         {"answer", answer},
                                         {"action_label", act_label},
                                         {"segment", segment}});
  return request;
}

std::optional<std::string> parse_interp_label(std::string_view raw,
                                              const std::vector<std::string>& known_ids) {
  auto document = parse_json_response(raw);
  if (document.is_array()) {
    if (document.size() != 1) {
      throw Error(ErrorCode::UnparsableResponse, "expected exactly one interpretation entry");
    }
    document = document.at(0);
  }
  if (!document.is_object() || !document.contains("interpretation_id") ||
      !document.at("interpretation_id").is_string()) {
    throw Error(ErrorCode::UnparsableResponse, "expected {\"interpretation_id\": ...}");
  }
  const auto id = document.at("interpretation_id").get<std::string>();
  if (id == kNoneAct) return std::nullopt;
  if (std::find(known_ids.begin(), known_ids.end(), id) == known_ids.end()) {
    throw Error(ErrorCode::UnknownInterpretationId, "unknown interpretation id \"" + id + "\"");
  }
  return id;
}

ChatRequest build_mimic_prompt(const std::string& question, const std::string& subreddit_name,
                               const std::string& subreddit_explanation,
                               const std::string& guidelines) {
  if (is_blank(question) || is_blank(subreddit_name) || is_blank(subreddit_explanation) ||
      is_blank(guidelines)) {
    throw Error(ErrorCode::InvalidArgument,
                "mimic prompt needs a question, subreddit name, explanation and guidelines");
  }
  ChatRequest request;
  request.system = fill(kMimicSystem, {{"subreddit", subreddit_name},
                                       {"subreddit_explanation", subreddit_explanation},
                                       {"community_guidelines", guidelines}});
  request.user = fill(kMimicUser, {{"question", question}});
  return request;
}

}  // namespace discotrace
