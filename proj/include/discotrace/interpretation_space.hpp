#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/llm_gateway.hpp"

namespace discotrace {

inline constexpr double kDefaultDedupThreshold = 0.85;

struct RawInterpretation {
  std::string generator;
  std::string text;

  bool operator==(const RawInterpretation&) const = default;
};

struct Interpretation {
  std::string id;  // "id_1", "id_2", ...
  std::string text;
  std::set<std::string> sources;

  bool operator==(const Interpretation&) const = default;
};

struct InterpretationSpace {
  std::string question_id;
  std::vector<Interpretation> members;
  double threshold = kDefaultDedupThreshold;

  bool empty() const noexcept { return members.empty(); }
  std::size_t size() const noexcept { return members.size(); }
  const Interpretation* find(const std::string& id) const;
  std::vector<std::string> ids() const;

  // {question_id, threshold, members: [{id, text, sources}]}
  nlohmann::ordered_json to_json() const;
  static InterpretationSpace from_json(const nlohmann::json& j);

  bool operator==(const InterpretationSpace&) const = default;
};

struct GenerationWarning {
  std::string generator;
  std::string message;
};

struct GenerationResult {
  std::vector<RawInterpretation> items;
  std::vector<GenerationWarning> warnings;
};

// Asks every generator for interpretations and pools the parsed lists in
// generator order. A failing generator becomes a warning as long as at least
// one other generator succeeds; if all fail, the first failure is rethrown.
GenerationResult generate_raw(const std::string& question, const std::string& community_context,
                              const std::vector<ChatBackend*>& generators);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Greedy first-representative clustering: each candidate joins the first
// existing member whose embedding has cosine >= threshold with it (merging
// source sets) and otherwise becomes a new member. Throws
// Error(InvalidArgument) unless 0 < threshold <= 1, and
// Error(EmbeddingDimensionMismatch) on ragged embeddings.
InterpretationSpace deduplicate(const std::vector<RawInterpretation>& raw,
                                EmbeddingBackend& embedder, double threshold,
                                const std::string& question_id = {});

}  // namespace discotrace
