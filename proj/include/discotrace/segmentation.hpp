#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/rst_tree.hpp"

namespace discotrace {

// Relation/nuclearity pairs whose children are split into separate action
// segments, plus the minimum per-side EDU count required before Background
// is allowed to split.
struct BoundaryConfig {
  std::set<std::pair<Relation, Nuclearity>> boundary_pairs;
  std::size_t min_span_k = 3;

  // Contrast(NN), Comparison(NN), Topic-Change(NN,NS,SN), Evaluation(NS,SN,NN),
  // Summary(NN,NS,SN), Background(NS,SN); k = 3.
  static BoundaryConfig defaults();

  // {"min_span_k": 3, "pairs": [{"relation": "Contrast", "nuclearity": ["NN"]}, ...]}
  // Missing keys fall back to defaults(). Throws Error(InvalidConfig) when k < 1.
  static BoundaryConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  bool operator==(const BoundaryConfig&) const = default;
};

// Half-open range of EDU indices [begin, end).
struct EduSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  std::vector<std::size_t> indices() const;

  bool operator==(const EduSpan&) const = default;
};

struct ActionSegment {
  std::string answer_id;
  std::vector<std::size_t> edu_indices;
  std::string text;

  bool operator==(const ActionSegment&) const = default;
};

bool is_boundary(Relation relation, Nuclearity nuclearity, const BoundaryConfig& config);

// Splits a subtree into EDU spans: boundary nodes keep their children's spans
// apart (Background only when both sides hold >= k EDUs), non-boundary nodes
// keep deeper splits when the children produced more than two spans between
// them, and everything else collapses into a single span.
std::vector<EduSpan> get_spans(const RstNode& node, const BoundaryConfig& config);

std::vector<ActionSegment> segment_answer(const RstTree& tree, const BoundaryConfig& config,
                                          const std::string& answer_id = {});

}  // namespace discotrace
