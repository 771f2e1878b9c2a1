#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/interpretation_space.hpp"
#include "discotrace/ontology.hpp"
#include "discotrace/trace_pipeline.hpp"

namespace discotrace {

// Which steps count as addressing an interpretation: any eligible act
// carrying the id, or only acts of the AQ family.
enum class AddressingPolicy { AnyEligible, AnswerFamilyOnly };

// Keyed by question id.
using SpaceMap = std::map<std::string, InterpretationSpace>;

struct AnswerInterpretationMetrics {
  std::string answer_id;
  std::string question_id;
  std::size_t space_size = 0;
  std::size_t eligible = 0;  // eligible segments
  std::size_t matched = 0;   // eligible segments with an interpretation id
  std::set<std::string> addressed;
  std::optional<double> coverage;  // only when space_size >= 2
  std::map<std::string, double> dedication;
};

struct InterpretationMetricsReport {
  std::vector<AnswerInterpretationMetrics> answers;
  std::size_t eligible_segments = 0;
  std::size_t unmatched_segments = 0;
  double unmatched_rate = 0.0;  // 0 when there are no eligible segments

  std::size_t questions = 0;
  double mean_space_size = 0.0;
  double sd_space_size = 0.0;
  std::size_t coverage_answers = 0;
  double mean_coverage = 0.0;
  double sd_coverage = 0.0;
  double mean_addressed = 0.0;
  double sd_addressed = 0.0;
  double mean_eligible = 0.0;
  double mean_matched = 0.0;
  double mean_dedication = 0.0;

  nlohmann::ordered_json to_json() const;
  // answer_id,question_id,space_size,eligible,matched,addressed,coverage
  std::string answers_csv() const;
};

// Throws Error(UnknownSpaceReference) when a trace's question has no space
// or a step names an id outside it.
InterpretationMetricsReport interpretation_metrics(
    const std::vector<DiscoTrace>& traces, const SpaceMap& spaces, const Ontology& ontology,
    AddressingPolicy policy = AddressingPolicy::AnyEligible);

// Interpretation ids an answer addresses under the policy.
std::set<std::string> addressed_interpretations(const DiscoTrace& trace, const Ontology& ontology,
                                                AddressingPolicy policy);

struct OveransweringItem {
  std::string question_id;
  std::string interpretation_id;
  double human_frequency = 0.0;    // share of human answers addressing it
  double model_probability = 0.0;  // share of model answers addressing it
};

struct OveransweringBin {
  double lower = 0.0;
  double upper = 0.0;  // exclusive except for the last bin
  std::size_t count = 0;
  std::optional<double> mean_human_frequency;
  std::optional<double> mean_model_probability;
};

struct OveransweringReport {
  std::vector<OveransweringItem> items;
  std::vector<OveransweringBin> bins;

  nlohmann::ordered_json to_json() const;
  // bin_lower,bin_upper,count,mean_human_frequency,mean_model_probability
  std::string to_csv() const;
};

// Bins every interpretation by human addressing frequency into n_bins
// equal-width bins over [0, 1] and averages the model's addressing rate per
// bin. Throws Error(QuestionMismatch) unless both corpora answer the same
// questions, Error(UnknownSpaceReference) and Error(InvalidArgument) for
// n_bins == 0.
OveransweringReport overanswering_bins(const std::vector<DiscoTrace>& human,
                                       const std::vector<DiscoTrace>& model,
                                       const SpaceMap& spaces, const Ontology& ontology,
                                       std::size_t n_bins = 10,
                                       AddressingPolicy policy = AddressingPolicy::AnyEligible);

}  // namespace discotrace
