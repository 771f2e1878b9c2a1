#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace discotrace {

// Answer the question, comment on the question, seek information, redirect
// the question, no-op.
enum class ActFamily { AQ, CQ, SI, RQ, NO };

inline constexpr std::string_view kNoneAct = "NONE";

std::string_view to_string(ActFamily family) noexcept;
// Throws Error(UnknownFamily).
ActFamily parse_family(std::string_view code);

struct DiscourseAct {
  std::string id;
  std::optional<ActFamily> family;  // empty only for the NONE sentinel
  std::string display_name;
  bool interpretation_eligible = false;
  std::string description;

  bool operator==(const DiscourseAct&) const = default;
};

class Ontology {
 public:
  Ontology(std::vector<DiscourseAct> acts, std::string version);

  const std::vector<DiscourseAct>& acts() const noexcept { return acts_; }
  const std::string& version() const noexcept { return version_; }

  bool contains(std::string_view act_id) const;
  // Throws Error(UnknownActId).
  const DiscourseAct& at(std::string_view act_id) const;
  bool is_eligible(std::string_view act_id) const;

  // Family code ("AQ", ...) for an act id, or "NONE" for the sentinel.
  std::string family_token(std::string_view act_id) const;

  // Act ids in file order, NONE included.
  std::vector<std::string> act_ids() const;

  // Text block describing every act, grouped by family, for the tagging prompt.
  std::string render() const;

  nlohmann::json to_json() const;

 private:
  std::vector<DiscourseAct> acts_;
  std::string version_;
  std::unordered_map<std::string, std::size_t> index_;
};

// {"version": "...", "acts": [{"id", "family", "display_name",
//   "interpretation_eligible", "description"}, ...]}
// The NONE entry has family null (or omitted). Throws Error(DuplicateActId,
// UnknownFamily, MissingNoneSentinel, EmptyFamily, InvalidActId, MalformedDocument).
Ontology load_ontology(const nlohmann::json& document);
Ontology load_ontology_file(const std::string& path);

bool is_eligible(const Ontology& ontology, std::string_view act_id);

}  // namespace discotrace
