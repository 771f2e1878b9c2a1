#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/interpretation_space.hpp"
#include "discotrace/llm_gateway.hpp"
#include "discotrace/ontology.hpp"
#include "discotrace/rst_tree.hpp"
#include "discotrace/segmentation.hpp"
#include "discotrace/trace_pipeline.hpp"

namespace testkit {

using namespace discotrace;

// Plain recursive tree used by the oracle, independent of RstNode.
struct SimpleNode {
  std::string relation;
  std::string nuclearity;
  std::unique_ptr<SimpleNode> left;
  std::unique_ptr<SimpleNode> right;
  int edu = -1;  // leaf index, -1 for internal nodes
};

// Random binary tree over n EDUs (1 <= n <= max_edus) with uniformly drawn
// relation and nuclearity labels.
std::unique_ptr<SimpleNode> random_simple_tree(std::mt19937_64& rng, std::size_t max_edus);
nlohmann::json simple_to_json(const SimpleNode& node);
RstTree to_rst_tree(const SimpleNode& node);

// Boundary table written out by hand, keyed by label strings.
bool table_boundary(std::string_view relation, std::string_view nuclearity);

// Straightforward recursive segmentation on EDU index lists.
std::vector<std::vector<int>> naive_spans(const SimpleNode& node, std::size_t k = 3);

std::string data_dir();
Ontology shipped_ontology();

// Directory under the build tree, emptied on creation.
std::string fresh_dir(const std::string& name);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Chat backend answering through a callback.
class ScriptedChat final : public ChatBackend {
 public:
  using Script = std::function<std::string(const ChatRequest&)>;
  ScriptedChat(std::string name, std::string model, Script script);

  std::string complete(ChatRequest request) override;
  const std::string& name() const override { return name_; }
  const std::string& model() const override { return model_; }
  std::size_t call_count() const override { return calls_.load(); }
  std::vector<ChatRequest> requests() const;

 private:
  std::string name_;
  std::string model_;
  Script script_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mutex_;
  std::vector<ChatRequest> requests_;
};

// Deterministic bag-of-words embedding: hashed token counts.
class BagOfWordsEmbedder final : public EmbeddingBackend {
 public:
  explicit BagOfWordsEmbedder(std::size_t dims = 64) : dims_(dims) {}
  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override;
  const std::string& name() const override { return name_; }

 private:
  std::size_t dims_;
  std::string name_ = "bow";
};

// Keyword-driven act labeler: reads the subsegment list out of the tagging
// prompt and answers in the single or per-subsegment form.
std::string heuristic_act_response(const ChatRequest& request);
// Picks the listed interpretation sharing the most words with the segment.
std::string heuristic_interp_response(const ChatRequest& request);

// A small answer corpus with trees, questions and interpretation spaces, and
// the mock fixtures recorded from the heuristic labelers.
struct ReplayCorpus {
  std::string dir;
  std::string questions;
  std::string answers;
  std::string spaces;
  std::string act_fixture;
  std::string interp_fixture;
  std::string config;
  std::size_t answer_count = 0;
};

ReplayCorpus write_replay_corpus(const std::string& dir);

}  // namespace testkit
