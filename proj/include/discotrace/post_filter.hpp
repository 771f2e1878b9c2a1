#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/corpus_io.hpp"

namespace discotrace {

struct CommentLimits {
  std::size_t min_comments = 5;
  std::size_t max_comments = 0;
};

// How the wh-word and trailing "?" checks combine: keep a title that passes
// either one, or only titles passing both.
enum class InterrogativeRule { Either, Both };

struct FilterConfig {
  std::int64_t min_post_score = 5;
  std::size_t min_title_tokens = 4;
  std::int64_t min_comment_score = 3;
  double profanity_threshold = 0.8;
  InterrogativeRule interrogative = InterrogativeRule::Either;

  // Keyed by lower-cased community name.
  std::map<std::string, CommentLimits> community_limits;
  std::optional<CommentLimits> default_limits;

  std::vector<std::string> wh_words;
  std::vector<std::string> reddit_terms;
  std::vector<std::string> first_person;
  std::vector<std::string> relationship_terms;
  std::vector<std::string> deixis_terms;
  std::vector<std::string> first_person_contractions;
  std::vector<std::string> validation_phrases;
  std::vector<std::string> abbreviations;  // not sentence ends, e.g. "mr", "vs"

  static FilterConfig defaults();
  // Starts from defaults() and overrides the keys present.
  static FilterConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  // Throws Error(UnknownCommunity).
  CommentLimits limits_for(std::string_view community) const;
};

// Title rules, in evaluation order.
inline constexpr std::string_view kPostRules[] = {
    "empty_title",     "low_score",        "short_title",       "not_interrogative",
    "reddit_term",     "multiple_sentences", "profanity",       "first_person",
    "relationship_term", "deixis_first_person", "validation_phrase"};

// Thread rules applied after comment filtering.
inline constexpr std::string_view kThreadRules[] = {"too_few_comments", "too_many_comments"};

// First failing title rule, or nullopt when the post passes.
std::optional<std::string> first_failing_rule(const RawPost& post, const FilterConfig& config);

// Title sentence count used by the multiple_sentences rule.
std::size_t count_sentences(std::string_view title, const FilterConfig& config);

struct PostDecision {
  std::string post_id;
  std::optional<std::string> rejected_by;
};

struct FilterResult {
  std::vector<RawPost> kept;
  std::vector<PostDecision> decisions;  // input order
  // Every rule name with its rejection count, in evaluation order.
  std::vector<std::pair<std::string, std::size_t>> tally;
  // Kept posts that had no profanity score.
  std::vector<std::string> unscored;

  std::size_t rejected(std::string_view rule) const;
  nlohmann::ordered_json report() const;
};

FilterResult filter_posts(const std::vector<RawPost>& posts, const FilterConfig& config);

struct ThreadDecision {
  std::vector<RawComment> comments;  // surviving top-level comments
  std::optional<std::string> rejected_by;
};

ThreadDecision filter_comments(const RawPost& post, const FilterConfig& config);

// Title rules, then comment rules; kept posts carry only surviving comments.
FilterResult filter_corpus(const std::vector<RawPost>& posts, const FilterConfig& config);

// Uniform sample without replacement, returned in input order. Throws
// Error(InsufficientPosts) when n exceeds the pool.
std::vector<RawPost> sample_questions(const std::vector<RawPost>& posts, std::size_t n,
                                      std::uint64_t seed);
// Indices of the sample, ascending.
std::vector<std::size_t> sample_indices(std::size_t pool, std::size_t n, std::uint64_t seed);

}  // namespace discotrace
