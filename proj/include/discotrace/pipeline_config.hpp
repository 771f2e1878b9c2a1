#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/bigram_model.hpp"
#include "discotrace/interpretation_metrics.hpp"
#include "discotrace/llm_gateway.hpp"
#include "discotrace/post_filter.hpp"
#include "discotrace/segmentation.hpp"
#include "discotrace/trace_pipeline.hpp"

namespace discotrace {

struct BackendProfile {
  std::optional<BackendSpec> act_labeler;
  std::vector<BackendSpec> interp_generators;
  std::optional<BackendSpec> interp_labeler;
  std::optional<BackendSpec> embedder;
  std::optional<BackendSpec> answerer;  // mimic answers
};

struct PipelineConfig {
  std::string ontology_path;
  BoundaryConfig boundaries = BoundaryConfig::defaults();
  Smoothing smoothing;
  Pooling pooling = Pooling::Transition;
  AddressingPolicy addressing = AddressingPolicy::AnyEligible;
  double dedup_threshold = kDefaultDedupThreshold;
  std::size_t max_in_flight = 4;
  std::uint64_t seed = 0;
  std::size_t sample_size = 300;
  std::size_t overanswering_bins = 10;
  double alpha = 0.05;
  PipelineOptions pipeline;
  FilterConfig filter = FilterConfig::defaults();
  std::map<std::string, BackendProfile> profiles;
  std::string active_profile;

  // Bundled ontology, default thresholds, no backends.
  static PipelineConfig defaults();
  // Relative paths (ontology, fixtures) resolve against base_dir.
  static PipelineConfig from_json(const nlohmann::json& j, const std::string& base_dir);
  // Throws Error(InvalidConfig) or Error(Io); checks referenced files exist.
  static PipelineConfig load(const std::string& path);

  // Throws Error(InvalidConfig) when no profile is selected or it is unknown.
  const BackendProfile& profile() const;
  void validate() const;
};

// Built-in path of the shipped ontology file.
std::string default_ontology_path();

}  // namespace discotrace
