#include "discotrace/ontology.hpp"

#include <array>
#include <fstream>

#include "discotrace/error.hpp"

namespace discotrace {

namespace {

constexpr std::array<ActFamily, 5> kFamilies = {ActFamily::AQ, ActFamily::CQ, ActFamily::SI,
                                                ActFamily::RQ, ActFamily::NO};

std::string_view family_gloss(ActFamily family) {
  switch (family) {
    case ActFamily::AQ: return "Answer the Question";
    case ActFamily::CQ: return "Comment on the Question";
    case ActFamily::SI: return "Seek Information";
    case ActFamily::RQ: return "Redirect the Question";
    case ActFamily::NO: return "No-op";
  }
  return "";
}

}  // namespace

std::string_view to_string(ActFamily family) noexcept {
  switch (family) {
    case ActFamily::AQ: return "AQ";
    case ActFamily::CQ: return "CQ";
    case ActFamily::SI: return "SI";
    case ActFamily::RQ: return "RQ";
    case ActFamily::NO: return "NO";
  }
  return "";
}

ActFamily parse_family(std::string_view code) {
  for (ActFamily f : kFamilies) {
    if (code == to_string(f)) return f;
  }
  throw Error(ErrorCode::UnknownFamily, "unknown act family \"" + std::string(code) + "\"");
}

Ontology::Ontology(std::vector<DiscourseAct> acts, std::string version)
    : acts_(std::move(acts)), version_(std::move(version)) {
  std::array<bool, kFamilies.size()> seen{};
  for (std::size_t i = 0; i < acts_.size(); ++i) {
    auto& act = acts_[i];
    if (!index_.emplace(act.id, i).second) {
      throw Error(ErrorCode::DuplicateActId, "duplicate act id \"" + act.id + "\"");
    }
    if (act.id == kNoneAct) {
      act.family.reset();
      act.interpretation_eligible = false;
      continue;
    }
    if (!act.family) {
      throw Error(ErrorCode::UnknownFamily, "act \"" + act.id + "\" has no family");
    }
    const std::string prefix = "action_" + std::string(to_string(*act.family)) + "_";
    if (act.id.rfind(prefix, 0) != 0 || act.id.size() == prefix.size()) {
      throw Error(ErrorCode::InvalidActId,
                  "act id \"" + act.id + "\" must start with \"" + prefix + "\"");
    }
    seen[static_cast<std::size_t>(*act.family)] = true;
  }
  if (!index_.count(std::string(kNoneAct))) {
    throw Error(ErrorCode::MissingNoneSentinel, "ontology must contain the NONE act");
  }
  for (ActFamily f : kFamilies) {
    if (!seen[static_cast<std::size_t>(f)]) {
      throw Error(ErrorCode::EmptyFamily,
                  "ontology has no act in family " + std::string(to_string(f)));
    }
  }
}

bool Ontology::contains(std::string_view act_id) const {
  return index_.count(std::string(act_id)) > 0;
}

const DiscourseAct& Ontology::at(std::string_view act_id) const {
  auto it = index_.find(std::string(act_id));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownActId, "unknown act id \"" + std::string(act_id) + "\"");
  }
  return acts_[it->second];
}

bool Ontology::is_eligible(std::string_view act_id) const {
  return at(act_id).interpretation_eligible;
}

std::string Ontology::family_token(std::string_view act_id) const {
  const auto& act = at(act_id);
  return act.family ? std::string(to_string(*act.family)) : std::string(kNoneAct);
}

std::vector<std::string> Ontology::act_ids() const {
  std::vector<std::string> ids;
  ids.reserve(acts_.size());
  for (const auto& act : acts_) ids.push_back(act.id);
  return ids;
}

std::string Ontology::render() const {
  std::string out;
  for (ActFamily f : kFamilies) {
    out += std::string(to_string(f)) + " (" + std::string(family_gloss(f)) + ")\n";
    for (const auto& act : acts_) {
      if (act.family != f) continue;
      out += "- " + act.id + ": " + act.display_name;
      if (act.interpretation_eligible) out += " [interpretation-eligible]";
      if (!act.description.empty()) out += " -- " + act.description;
      out += "\n";
    }
    out += "\n";
  }
  const auto& none = at(kNoneAct);
  out += "- NONE: " + (none.description.empty() ? std::string("no action fits") : none.description);
  return out;
}

nlohmann::json Ontology::to_json() const {
  nlohmann::json acts = nlohmann::json::array();
  for (const auto& act : acts_) {
    nlohmann::json j;
    j["id"] = act.id;
    j["family"] = act.family ? nlohmann::json(std::string(to_string(*act.family))) : nullptr;
    j["display_name"] = act.display_name;
    j["interpretation_eligible"] = act.interpretation_eligible;
    j["description"] = act.description;
    acts.push_back(std::move(j));
  }
  return {{"version", version_}, {"acts", acts}};
}

Ontology load_ontology(const nlohmann::json& document) {
  std::vector<DiscourseAct> acts;
  std::string version;
  try {
    version = document.value("version", std::string{});
    for (const auto& entry : document.at("acts")) {
      DiscourseAct act;
      act.id = entry.at("id").get<std::string>();
      if (entry.contains("family") && !entry.at("family").is_null()) {
        const auto code = entry.at("family").get<std::string>();
        if (act.id != kNoneAct || code != kNoneAct) act.family = parse_family(code);
      }
      act.display_name = entry.value("display_name", act.id);
      act.interpretation_eligible = entry.value("interpretation_eligible", false);
      act.description = entry.value("description", std::string{});
      acts.push_back(std::move(act));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("ontology: ") + e.what());
  }
  return Ontology(std::move(acts), std::move(version));
}

Ontology load_ontology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open ontology file " + path);
  nlohmann::json document;
  try {
    in >> document;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, path + ": " + e.what());
  }
  return load_ontology(document);
}

bool is_eligible(const Ontology& ontology, std::string_view act_id) {
  return ontology.is_eligible(act_id);
}

}  // namespace discotrace
