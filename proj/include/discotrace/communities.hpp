#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace discotrace {

struct CommunityProfile {
  std::string name;
  std::string description;  // context handed to the interpretation generator
  std::string guidelines;   // empty when the community has no mimic guidelines
  std::size_t min_comments = 5;
  std::size_t max_comments = 0;
};

// The nine QA communities, with their context descriptions and comment
// limits; AskHistorians and ScienceBasedParenting also carry guidelines.
const std::vector<CommunityProfile>& builtin_communities();

// Case-insensitive lookup; a leading "r/" is ignored.
std::optional<CommunityProfile> find_community(std::string_view name);

}  // namespace discotrace
