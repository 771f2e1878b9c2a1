#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace discotrace {

// The 18 coarse-grained RST-DT relations.
enum class Relation {
  Elaboration,
  Attribution,
  Joint,
  SameUnit,
  Explanation,
  Enablement,
  Background,
  Evaluation,
  Cause,
  Contrast,
  Temporal,
  Comparison,
  TopicChange,
  MannerMeans,
  TextualOrganization,
  Condition,
  Summary,
  TopicComment,
};

inline constexpr std::size_t kRelationCount = 18;

enum class Nuclearity { NN, NS, SN };

inline constexpr std::size_t kNuclearityCount = 3;

const std::array<Relation, kRelationCount>& all_relations() noexcept;
const std::array<Nuclearity, kNuclearityCount>& all_nuclearities() noexcept;

// Title-Case with hyphens, e.g. "Topic-Change".
std::string_view to_string(Relation relation) noexcept;
std::string_view to_string(Nuclearity nuclearity) noexcept;

// Case-insensitive; throws Error(UnknownRelation / UnknownNuclearity).
Relation parse_relation(std::string_view label);
Nuclearity parse_nuclearity(std::string_view label);

struct Edu {
  std::size_t index = 0;
  std::string text;

  bool operator==(const Edu&) const = default;
};

class RstNode;
using RstNodePtr = std::shared_ptr<const RstNode>;

// Immutable binary discourse tree node. Leaves carry an EDU, internal nodes a
// relation/nuclearity pair and exactly two children.
class RstNode {
 public:
  static RstNodePtr leaf(Edu edu);
  static RstNodePtr internal(Relation relation, Nuclearity nuclearity, RstNodePtr left,
                             RstNodePtr right);

  bool is_leaf() const noexcept { return !left_; }

  const Edu& edu() const;
  Relation relation() const;
  Nuclearity nuclearity() const;
  const RstNode& left() const;
  const RstNode& right() const;

  std::size_t leaf_count() const noexcept { return leaf_count_; }
  // Index of the leftmost EDU under this node.
  std::size_t first_edu() const noexcept { return first_edu_; }

 private:
  RstNode() = default;

  Edu edu_;
  Relation relation_ = Relation::Elaboration;
  Nuclearity nuclearity_ = Nuclearity::NN;
  RstNodePtr left_;
  RstNodePtr right_;
  std::size_t leaf_count_ = 1;
  std::size_t first_edu_ = 0;
};

class RstTree {
 public:
  // Throws Error(MalformedDocument) unless EDU indices are 0..n-1 in leaf order.
  explicit RstTree(RstNodePtr root);

  const RstNode& root() const noexcept { return *root_; }
  RstNodePtr root_ptr() const noexcept { return root_; }
  std::size_t edu_count() const noexcept { return root_->leaf_count(); }

  const Edu& edu(std::size_t index) const { return edus_.at(index); }
  const std::vector<Edu>& edus() const noexcept { return edus_; }

 private:
  RstNodePtr root_;
  std::vector<Edu> edus_;
};

// In-order leaves of a subtree.
std::vector<Edu> get_leaves(const RstNode& node);

// Joins EDU texts with a single space unless one side already carries whitespace.
std::string join_texts(const std::vector<std::string>& pieces);

// Parses the external parser's JSON tree schema:
//   internal = {"relation": str, "nuclearity": "NN"|"NS"|"SN", "left": node, "right": node}
//   leaf     = {"edu": str}
// EDU indices are assigned in left-to-right leaf order.
RstTree parse_rst_tree(const nlohmann::json& document);
RstTree parse_rst_tree(std::string_view serialized);

// Keys in schema order: relation, nuclearity, left, right.
nlohmann::ordered_json to_json(const RstTree& tree);
nlohmann::ordered_json to_json(const RstNode& node);

}  // namespace discotrace
