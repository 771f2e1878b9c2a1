#include "discotrace/pipeline_config.hpp"

#include <filesystem>
#include <fstream>

#include "discotrace/error.hpp"

#ifndef DISCOTRACE_DATA_DIR
#define DISCOTRACE_DATA_DIR "data"
#endif

namespace discotrace {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || fs::path(path).is_absolute() || base_dir.empty()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

BackendSpec backend(const nlohmann::json& j, const std::string& role, const std::string& base_dir) {
  auto spec = BackendSpec::from_json(j);
  if (spec.name.empty()) spec.name = role;
  spec.fixture_path = resolve(spec.fixture_path, base_dir);
  return spec;
}

std::optional<BackendSpec> optional_backend(const nlohmann::json& j, const char* key,
                                            const std::string& base_dir) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return backend(j.at(key), key, base_dir);
}

}  // namespace

std::string default_ontology_path() { return std::string(DISCOTRACE_DATA_DIR) + "/ontology.json"; }

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig c;
  c.ontology_path = default_ontology_path();
  return c;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  PipelineConfig c = defaults();
  try {
    if (j.contains("ontology")) c.ontology_path = resolve(j.at("ontology").get<std::string>(), base_dir);
    if (j.contains("boundaries")) c.boundaries = BoundaryConfig::from_json(j.at("boundaries"));
    if (j.contains("smoothing")) c.smoothing = Smoothing::parse(j.at("smoothing").get<std::string>());
    if (j.contains("pooling")) {
      const auto p = j.at("pooling").get<std::string>();
      if (p == "transition") {
        c.pooling = Pooling::Transition;
      } else if (p == "answer") {
        c.pooling = Pooling::Answer;
      } else {
        throw Error(ErrorCode::InvalidConfig, "pooling must be transition or answer");
      }
    }
    if (j.contains("addressing")) {
      const auto a = j.at("addressing").get<std::string>();
      if (a == "any_eligible") {
        c.addressing = AddressingPolicy::AnyEligible;
      } else if (a == "answer_family") {
        c.addressing = AddressingPolicy::AnswerFamilyOnly;
      } else {
        throw Error(ErrorCode::InvalidConfig, "addressing must be any_eligible or answer_family");
      }
    }
    c.dedup_threshold = j.value("dedup_threshold", c.dedup_threshold);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.seed = j.value("seed", c.seed);
    c.sample_size = j.value("sample_size", c.sample_size);
    c.overanswering_bins = j.value("overanswering_bins", c.overanswering_bins);
    c.alpha = j.value("alpha", c.alpha);
    c.pipeline.parse_retry_limit = j.value("parse_retry_limit", c.pipeline.parse_retry_limit);
    if (j.contains("filter")) c.filter = FilterConfig::from_json(j.at("filter"));
    if (j.contains("backend_profiles")) {
      for (const auto& [name, p] : j.at("backend_profiles").items()) {
        BackendProfile profile;
        profile.act_labeler = optional_backend(p, "act_labeler", base_dir);
        profile.interp_labeler = optional_backend(p, "interp_labeler", base_dir);
        profile.embedder = optional_backend(p, "embedder", base_dir);
        profile.answerer = optional_backend(p, "answerer", base_dir);
        if (p.contains("interp_generators")) {
          std::size_t i = 0;
          for (const auto& g : p.at("interp_generators")) {
            profile.interp_generators.push_back(
                backend(g, "interp_generator_" + std::to_string(++i), base_dir));
          }
        }
        c.profiles.emplace(name, std::move(profile));
      }
    }
    c.active_profile = j.value("backend_profile", std::string());
    if (c.active_profile.empty() && c.profiles.size() == 1) c.active_profile = c.profiles.begin()->first;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
  }
  auto c = from_json(j, fs::path(path).parent_path().string());
  if (!fs::exists(c.ontology_path)) {
    throw Error(ErrorCode::InvalidConfig, "ontology file " + c.ontology_path + " does not exist");
  }
  for (const auto& [name, p] : c.profiles) {
    std::vector<const BackendSpec*> specs;
    for (const auto* s : {&p.act_labeler, &p.interp_labeler, &p.embedder, &p.answerer}) {
      if (*s) specs.push_back(&**s);
    }
    for (const auto& g : p.interp_generators) specs.push_back(&g);
    for (const auto* s : specs) {
      if (s->kind == BackendKind::Mock && !fs::exists(s->fixture_path)) {
        throw Error(ErrorCode::InvalidConfig, "fixture " + s->fixture_path + " of backend " +
                                                  s->name + " does not exist");
      }
    }
  }
  return c;
}

const BackendProfile& PipelineConfig::profile() const {
  if (active_profile.empty()) throw Error(ErrorCode::InvalidConfig, "no backend profile selected");
  auto it = profiles.find(active_profile);
  if (it == profiles.end()) {
    throw Error(ErrorCode::InvalidConfig, "unknown backend profile " + active_profile);
  }
  return it->second;
}

void PipelineConfig::validate() const {
  if (!(dedup_threshold > 0.0 && dedup_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "dedup_threshold must lie in (0, 1]");
  }
  if (max_in_flight < 1) throw Error(ErrorCode::InvalidConfig, "max_in_flight must be >= 1");
  if (overanswering_bins < 1) throw Error(ErrorCode::InvalidConfig, "overanswering_bins must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
  if (!active_profile.empty() && !profiles.count(active_profile)) {
    throw Error(ErrorCode::InvalidConfig, "unknown backend profile " + active_profile);
  }
}

}  // namespace discotrace
