#include "discotrace/rst_tree.hpp"

#include <algorithm>
#include <cctype>

#include "discotrace/error.hpp"

namespace discotrace {

namespace {

constexpr std::array<Relation, kRelationCount> kRelations = {
    Relation::Elaboration, Relation::Attribution,  Relation::Joint,
    Relation::SameUnit,    Relation::Explanation,  Relation::Enablement,
    Relation::Background,  Relation::Evaluation,   Relation::Cause,
    Relation::Contrast,    Relation::Temporal,     Relation::Comparison,
    Relation::TopicChange, Relation::MannerMeans,  Relation::TextualOrganization,
    Relation::Condition,   Relation::Summary,      Relation::TopicComment,
};

constexpr std::array<Nuclearity, kNuclearityCount> kNuclearities = {
    Nuclearity::NN, Nuclearity::NS, Nuclearity::SN};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

void collect_leaves(const RstNode& node, std::vector<Edu>& out) {
  if (node.is_leaf()) {
    out.push_back(node.edu());
    return;
  }
  collect_leaves(node.left(), out);
  collect_leaves(node.right(), out);
}

constexpr std::size_t kMaxDepth = 4096;

RstNodePtr parse_node(const nlohmann::json& j, std::size_t& next_index, std::size_t depth) {
  if (depth > kMaxDepth) {
    throw Error(ErrorCode::MalformedDocument, "tree nesting exceeds " + std::to_string(kMaxDepth));
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::MalformedDocument, "tree node must be a JSON object");
  }
  if (j.contains("children")) {
    throw Error(ErrorCode::NonBinaryNode, "n-ary \"children\" nodes are not supported");
  }
  if (j.contains("edu")) {
    if (j.contains("left") || j.contains("right") || j.contains("relation")) {
      throw Error(ErrorCode::NonBinaryNode, "leaf node must not carry children or a relation");
    }
    const auto& text = j.at("edu");
    if (!text.is_string()) {
      throw Error(ErrorCode::MalformedDocument, "\"edu\" must be a string");
    }
    return RstNode::leaf(Edu{next_index++, text.get<std::string>()});
  }
  if (!j.contains("left") || !j.contains("right")) {
    throw Error(ErrorCode::NonBinaryNode, "internal node needs both \"left\" and \"right\"");
  }
  if (!j.contains("relation") || !j.at("relation").is_string()) {
    throw Error(ErrorCode::MalformedDocument, "internal node needs a string \"relation\"");
  }
  if (!j.contains("nuclearity") || !j.at("nuclearity").is_string()) {
    throw Error(ErrorCode::MalformedDocument, "internal node needs a string \"nuclearity\"");
  }
  const Relation relation = parse_relation(j.at("relation").get<std::string>());
  const Nuclearity nuclearity = parse_nuclearity(j.at("nuclearity").get<std::string>());
  auto left = parse_node(j.at("left"), next_index, depth + 1);
  auto right = parse_node(j.at("right"), next_index, depth + 1);
  return RstNode::internal(relation, nuclearity, std::move(left), std::move(right));
}

}  // namespace

const std::array<Relation, kRelationCount>& all_relations() noexcept { return kRelations; }
const std::array<Nuclearity, kNuclearityCount>& all_nuclearities() noexcept {
  return kNuclearities;
}

std::string_view to_string(Relation relation) noexcept {
  switch (relation) {
    case Relation::Elaboration: return "Elaboration";
    case Relation::Attribution: return "Attribution";
    case Relation::Joint: return "Joint";
    case Relation::SameUnit: return "Same-Unit";
    case Relation::Explanation: return "Explanation";
    case Relation::Enablement: return "Enablement";
    case Relation::Background: return "Background";
    case Relation::Evaluation: return "Evaluation";
    case Relation::Cause: return "Cause";
    case Relation::Contrast: return "Contrast";
    case Relation::Temporal: return "Temporal";
    case Relation::Comparison: return "Comparison";
    case Relation::TopicChange: return "Topic-Change";
    case Relation::MannerMeans: return "Manner-Means";
    case Relation::TextualOrganization: return "Textual-Organization";
    case Relation::Condition: return "Condition";
    case Relation::Summary: return "Summary";
    case Relation::TopicComment: return "Topic-Comment";
  }
  return "";
}

std::string_view to_string(Nuclearity nuclearity) noexcept {
  switch (nuclearity) {
    case Nuclearity::NN: return "NN";
    case Nuclearity::NS: return "NS";
    case Nuclearity::SN: return "SN";
  }
  return "";
}

Relation parse_relation(std::string_view label) {
  for (Relation r : kRelations) {
    if (iequals(label, to_string(r))) return r;
  }
  throw Error(ErrorCode::UnknownRelation, "unknown RST relation \"" + std::string(label) + "\"");
}

Nuclearity parse_nuclearity(std::string_view label) {
  for (Nuclearity n : kNuclearities) {
    if (iequals(label, to_string(n))) return n;
  }
  throw Error(ErrorCode::UnknownNuclearity, "unknown nuclearity \"" + std::string(label) + "\"");
}

RstNodePtr RstNode::leaf(Edu edu) {
  if (is_blank(edu.text)) {
    throw Error(ErrorCode::MalformedDocument,
                "EDU " + std::to_string(edu.index) + " has no text");
  }
  auto node = std::shared_ptr<RstNode>(new RstNode());
  node->first_edu_ = edu.index;
  node->edu_ = std::move(edu);
  return node;
}

RstNodePtr RstNode::internal(Relation relation, Nuclearity nuclearity, RstNodePtr left,
                             RstNodePtr right) {
  if (!left || !right) {
    throw Error(ErrorCode::NonBinaryNode, "internal node needs two children");
  }
  auto node = std::shared_ptr<RstNode>(new RstNode());
  node->relation_ = relation;
  node->nuclearity_ = nuclearity;
  node->leaf_count_ = left->leaf_count() + right->leaf_count();
  node->first_edu_ = left->first_edu();
  node->left_ = std::move(left);
  node->right_ = std::move(right);
  return node;
}

const Edu& RstNode::edu() const {
  if (!is_leaf()) throw Error(ErrorCode::InvalidArgument, "edu() on an internal node");
  return edu_;
}

Relation RstNode::relation() const {
  if (is_leaf()) throw Error(ErrorCode::InvalidArgument, "relation() on a leaf");
  return relation_;
}

Nuclearity RstNode::nuclearity() const {
  if (is_leaf()) throw Error(ErrorCode::InvalidArgument, "nuclearity() on a leaf");
  return nuclearity_;
}

const RstNode& RstNode::left() const {
  if (is_leaf()) throw Error(ErrorCode::InvalidArgument, "left() on a leaf");
  return *left_;
}

const RstNode& RstNode::right() const {
  if (is_leaf()) throw Error(ErrorCode::InvalidArgument, "right() on a leaf");
  return *right_;
}

RstTree::RstTree(RstNodePtr root) : root_(std::move(root)) {
  if (!root_) throw Error(ErrorCode::MalformedDocument, "empty tree");
  edus_.reserve(root_->leaf_count());
  collect_leaves(*root_, edus_);
  for (std::size_t i = 0; i < edus_.size(); ++i) {
    if (edus_[i].index != i) {
      throw Error(ErrorCode::MalformedDocument,
                  "EDU indices must run 0..n-1 in leaf order; found " +
                      std::to_string(edus_[i].index) + " at position " + std::to_string(i));
    }
  }
}

std::vector<Edu> get_leaves(const RstNode& node) {
  std::vector<Edu> out;
  out.reserve(node.leaf_count());
  collect_leaves(node, out);
  return out;
}

std::string join_texts(const std::vector<std::string>& pieces) {
  std::string out;
  for (const auto& piece : pieces) {
    if (!out.empty() && !piece.empty() &&
        !std::isspace(static_cast<unsigned char>(out.back())) &&
        !std::isspace(static_cast<unsigned char>(piece.front()))) {
      out.push_back(' ');
    }
    out += piece;
  }
  return out;
}

RstTree parse_rst_tree(const nlohmann::json& document) {
  std::size_t next_index = 0;
  return RstTree(parse_node(document, next_index, 0));
}

RstTree parse_rst_tree(std::string_view serialized) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(serialized);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  return parse_rst_tree(document);
}

nlohmann::ordered_json to_json(const RstNode& node) {
  nlohmann::ordered_json j;
  if (node.is_leaf()) {
    j["edu"] = node.edu().text;
    return j;
  }
  j["relation"] = std::string(to_string(node.relation()));
  j["nuclearity"] = std::string(to_string(node.nuclearity()));
  j["left"] = to_json(node.left());
  j["right"] = to_json(node.right());
  return j;
}

nlohmann::ordered_json to_json(const RstTree& tree) { return to_json(tree.root()); }

}  // namespace discotrace
