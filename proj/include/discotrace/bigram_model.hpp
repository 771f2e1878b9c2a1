#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/ontology.hpp"
#include "discotrace/trace_pipeline.hpp"

namespace discotrace {

inline constexpr std::string_view kStartToken = "<START>";
inline constexpr std::string_view kEndToken = "<END>";

enum class SmoothingMode { Mle, AddLambda };

struct Smoothing {
  SmoothingMode mode = SmoothingMode::AddLambda;
  double lambda = 1.0;

  static Smoothing mle() { return {SmoothingMode::Mle, 0.0}; }
  static Smoothing add_lambda(double lambda) { return {SmoothingMode::AddLambda, lambda}; }
  // "mle", "add_lambda" (lambda 1), or "add_lambda:<value>".
  static Smoothing parse(std::string_view text);
  std::string to_string() const;
};

// Corpus-level mean over all transitions, or mean of per-answer averages.
enum class Pooling { Transition, Answer };

// Full act ids, or their family codes ("AQ", ..., "NONE").
enum class Projection { Act, Family };

using TokenSequence = std::vector<std::string>;

// Token set of the projected ontology, NONE included.
std::vector<std::string> strategy_vocabulary(const Ontology& ontology, Projection projection);
std::vector<TokenSequence> act_sequences(const std::vector<DiscoTrace>& traces,
                                         const Ontology& ontology, Projection projection);

// p(next | prev) over a fixed vocabulary. Contexts are START plus the
// vocabulary; outcomes are the vocabulary plus END, so V' = |V| + 1.
class BigramModel {
 public:
  // Throws Error(EmptyCorpus) for an empty corpus and Error(UnknownToken) for
  // tokens outside the vocabulary.
  static BigramModel fit(const std::vector<TokenSequence>& corpus,
                         std::vector<std::string> vocabulary, Smoothing smoothing = {});

  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const Smoothing& smoothing() const noexcept { return smoothing_; }
  std::size_t training_sequences() const noexcept { return training_sequences_; }

  // prev may be kStartToken and next may be kEndToken.
  std::uint64_t count(std::string_view prev, std::string_view next) const;
  double probability(std::string_view prev, std::string_view next) const;

  // Index-based access used by perplexity: contexts are 0 = START, i + 1 =
  // vocabulary[i]; outcomes are i = vocabulary[i], |V| = END.
  std::size_t context_index(std::string_view token) const;
  std::size_t outcome_index(std::string_view token) const;
  double probability(std::size_t context, std::size_t outcome) const;
  std::size_t outcome_count() const noexcept { return vocabulary_.size() + 1; }

  // {vocabulary, smoothing, training_sequences, transitions: [{prev, next, count, probability}]}
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::size_t> index_;
  Smoothing smoothing_;
  std::size_t training_sequences_ = 0;
  std::vector<std::uint64_t> counts_;  // (|V|+1) x (|V|+1), row = context
  std::vector<std::uint64_t> row_totals_;
};

// exp of the mean negative natural-log probability per transition, the
// START transition and the transition into END included. Throws
// Error(ZeroProbabilityTransition) when any transition has probability 0.
double perplexity(const BigramModel& model, const std::vector<TokenSequence>& eval,
                  Pooling pooling = Pooling::Transition);

struct PerplexityMatrix {
  std::vector<std::string> labels;          // rows = train corpus, cols = eval corpus
  std::vector<std::vector<double>> values;  // values[train][eval]

  std::string to_csv() const;
  // train,eval,perplexity rows for heatmap plotting.
  std::string to_long_csv() const;
  nlohmann::ordered_json to_json() const;
};

using NamedCorpus = std::pair<std::string, std::vector<TokenSequence>>;

PerplexityMatrix cross_perplexity_matrix(const std::vector<NamedCorpus>& corpora,
                                         const std::vector<std::string>& vocabulary,
                                         Smoothing smoothing = {},
                                         Pooling pooling = Pooling::Transition);

}  // namespace discotrace
