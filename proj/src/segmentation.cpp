#include "discotrace/segmentation.hpp"

#include "discotrace/error.hpp"

namespace discotrace {

BoundaryConfig BoundaryConfig::defaults() {
  using R = Relation;
  using N = Nuclearity;
  BoundaryConfig config;
  config.boundary_pairs = {
      {R::Contrast, N::NN},    {R::Comparison, N::NN},  {R::TopicChange, N::NN},
      {R::TopicChange, N::NS}, {R::TopicChange, N::SN}, {R::Evaluation, N::NS},
      {R::Evaluation, N::SN},  {R::Evaluation, N::NN},  {R::Summary, N::NN},
      {R::Summary, N::NS},     {R::Summary, N::SN},     {R::Background, N::NS},
      {R::Background, N::SN},
  };
  config.min_span_k = 3;
  return config;
}

BoundaryConfig BoundaryConfig::from_json(const nlohmann::json& j) {
  BoundaryConfig config = defaults();
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "boundary config must be an object");
  try {
    if (j.contains("min_span_k")) {
      const auto k = j.at("min_span_k").get<long long>();
      if (k < 1) throw Error(ErrorCode::InvalidConfig, "min_span_k must be >= 1");
      config.min_span_k = static_cast<std::size_t>(k);
    }
    if (j.contains("pairs")) {
      config.boundary_pairs.clear();
      for (const auto& entry : j.at("pairs")) {
        const Relation relation = parse_relation(entry.at("relation").get<std::string>());
        const auto& nuc = entry.at("nuclearity");
        if (nuc.is_string()) {
          config.boundary_pairs.emplace(relation, parse_nuclearity(nuc.get<std::string>()));
        } else {
          for (const auto& n : nuc) {
            config.boundary_pairs.emplace(relation, parse_nuclearity(n.get<std::string>()));
          }
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  return config;
}

nlohmann::json BoundaryConfig::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (Relation relation : all_relations()) {
    nlohmann::json nucs = nlohmann::json::array();
    for (Nuclearity n : all_nuclearities()) {
      if (boundary_pairs.count({relation, n})) nucs.push_back(std::string(to_string(n)));
    }
    if (!nucs.empty()) {
      pairs.push_back({{"relation", std::string(to_string(relation))}, {"nuclearity", nucs}});
    }
  }
  return {{"min_span_k", min_span_k}, {"pairs", pairs}};
}

std::vector<std::size_t> EduSpan::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::size_t i = begin; i < end; ++i) out.push_back(i);
  return out;
}

bool is_boundary(Relation relation, Nuclearity nuclearity, const BoundaryConfig& config) {
  return config.boundary_pairs.count({relation, nuclearity}) > 0;
}

std::vector<EduSpan> get_spans(const RstNode& node, const BoundaryConfig& config) {
  // Post-order walk with an explicit stack so deep, skewed trees cannot
  // exhaust the call stack. Each finished subtree pushes its span list onto
  // `results`; a parent pops its two children's lists.
  struct Frame {
    const RstNode* node;
    bool expanded;
  };
  std::vector<Frame> stack{{&node, false}};
  std::vector<std::vector<EduSpan>> results;

  while (!stack.empty()) {
    Frame frame = stack.back();
    stack.pop_back();
    const RstNode& v = *frame.node;

    if (v.is_leaf()) {
      results.push_back({EduSpan{v.first_edu(), v.first_edu() + 1}});
      continue;
    }
    if (!frame.expanded) {
      stack.push_back({&v, true});
      stack.push_back({&v.right(), false});
      stack.push_back({&v.left(), false});
      continue;
    }

    std::vector<EduSpan> right = std::move(results.back());
    results.pop_back();
    std::vector<EduSpan> left = std::move(results.back());
    results.pop_back();

    const EduSpan whole{v.first_edu(), v.first_edu() + v.leaf_count()};
    bool keep_split;
    if (is_boundary(v.relation(), v.nuclearity(), config)) {
      keep_split = v.relation() != Relation::Background ||
                   (v.left().leaf_count() >= config.min_span_k &&
                    v.right().leaf_count() >= config.min_span_k);
    } else {
      keep_split = left.size() + right.size() > 2;
    }

    if (keep_split) {
      left.insert(left.end(), right.begin(), right.end());
      results.push_back(std::move(left));
    } else {
      results.push_back({whole});
    }
  }
  return std::move(results.back());
}

std::vector<ActionSegment> segment_answer(const RstTree& tree, const BoundaryConfig& config,
                                          const std::string& answer_id) {
  std::vector<ActionSegment> segments;
  for (const EduSpan& span : get_spans(tree.root(), config)) {
    ActionSegment segment;
    segment.answer_id = answer_id;
    segment.edu_indices = span.indices();
    std::vector<std::string> texts;
    texts.reserve(span.size());
    for (std::size_t i : segment.edu_indices) texts.push_back(tree.edu(i).text);
    segment.text = join_texts(texts);
    segments.push_back(std::move(segment));
  }
  return segments;
}

}  // namespace discotrace
