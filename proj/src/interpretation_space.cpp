#include "discotrace/interpretation_space.hpp"

#include <cmath>
#include <future>
#include <optional>

#include "discotrace/error.hpp"
#include "discotrace/prompts.hpp"

namespace discotrace {

const Interpretation* InterpretationSpace::find(const std::string& id) const {
  for (const auto& m : members) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

std::vector<std::string> InterpretationSpace::ids() const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.id);
  return out;
}

nlohmann::ordered_json InterpretationSpace::to_json() const {
  nlohmann::ordered_json j;
  j["question_id"] = question_id;
  j["threshold"] = threshold;
  j["members"] = nlohmann::ordered_json::array();
  for (const auto& m : members) {
    nlohmann::ordered_json member;
    member["id"] = m.id;
    member["text"] = m.text;
    member["sources"] = m.sources;
    j["members"].push_back(std::move(member));
  }
  return j;
}

InterpretationSpace InterpretationSpace::from_json(const nlohmann::json& j) {
  InterpretationSpace space;
  try {
    space.question_id = j.at("question_id").get<std::string>();
    space.threshold = j.value("threshold", kDefaultDedupThreshold);
    std::set<std::string> seen;
    for (const auto& m : j.at("members")) {
      Interpretation interp;
      interp.id = m.at("id").get<std::string>();
      interp.text = m.at("text").get<std::string>();
      if (m.contains("sources")) interp.sources = m.at("sources").get<std::set<std::string>>();
      if (!seen.insert(interp.id).second) {
        throw Error(ErrorCode::MalformedDocument, "duplicate interpretation id " + interp.id);
      }
      if (interp.text.empty()) {
        throw Error(ErrorCode::MalformedDocument, "interpretation " + interp.id + " has no text");
      }
      space.members.push_back(std::move(interp));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("interpretation space: ") + e.what());
  }
  return space;
}

GenerationResult generate_raw(const std::string& question, const std::string& community_context,
                              const std::vector<ChatBackend*>& generators) {
  if (generators.empty()) {
    throw Error(ErrorCode::InvalidConfig, "at least one interpretation generator is required");
  }
  const ChatRequest request = build_interp_gen_prompt(question, community_context);

  std::vector<std::future<std::vector<std::string>>> pending;
  pending.reserve(generators.size());
  for (ChatBackend* backend : generators) {
    pending.push_back(std::async(std::launch::async, [backend, request] {
      return parse_interp_list(backend->complete(request));
    }));
  }

  GenerationResult result;
  std::optional<Error> first_failure;
  std::size_t successes = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    try {
      for (auto& text : pending[i].get()) {
        result.items.push_back({generators[i]->name(), std::move(text)});
      }
      ++successes;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AuthError) throw;
      if (!first_failure) first_failure = e;
      result.warnings.push_back({generators[i]->name(), e.what()});
    }
  }
  if (successes == 0) throw *first_failure;
  return result;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::EmbeddingDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

InterpretationSpace deduplicate(const std::vector<RawInterpretation>& raw,
                                EmbeddingBackend& embedder, double threshold,
                                const std::string& question_id) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dedup threshold must lie in (0, 1]");
  }
  InterpretationSpace space;
  space.question_id = question_id;
  space.threshold = threshold;
  if (raw.empty()) return space;

  std::vector<std::string> texts;
  texts.reserve(raw.size());
  for (const auto& item : raw) texts.push_back(item.text);
  const auto embeddings = embedder.embed(texts);
  if (embeddings.size() != raw.size()) {
    throw Error(ErrorCode::EmbeddingDimensionMismatch,
                "embedder returned " + std::to_string(embeddings.size()) + " vectors for " +
                    std::to_string(raw.size()) + " inputs");
  }
  const std::size_t dim = embeddings.front().size();
  for (const auto& e : embeddings) {
    if (e.size() != dim || dim == 0) {
      throw Error(ErrorCode::EmbeddingDimensionMismatch, "embeddings differ in dimension");
    }
  }

  std::vector<std::size_t> representative;  // raw index of each member's first item
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::optional<std::size_t> target;
    for (std::size_t m = 0; m < representative.size(); ++m) {
      const std::size_t rep = representative[m];
      if (raw[rep].text == raw[i].text ||
          cosine_similarity(embeddings[rep], embeddings[i]) >= threshold) {
        target = m;
        break;
      }
    }
    if (target) {
      space.members[*target].sources.insert(raw[i].generator);
      continue;
    }
    Interpretation member;
    member.id = "id_" + std::to_string(space.members.size() + 1);
    member.text = raw[i].text;
    member.sources.insert(raw[i].generator);
    space.members.push_back(std::move(member));
    representative.push_back(i);
  }
  return space;
}

}  // namespace discotrace
