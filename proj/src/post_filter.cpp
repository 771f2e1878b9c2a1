#include "discotrace/post_filter.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>

#include "discotrace/communities.hpp"
#include "discotrace/error.hpp"

namespace discotrace {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
}

struct Word {
  std::string text;  // lower-cased
  bool acronym = false;
};

// Word tokens: runs of letters, digits and apostrophes; curly apostrophes
// are folded to ASCII first.
std::vector<Word> words(std::string_view title) {
  std::string folded;
  for (std::size_t i = 0; i < title.size(); ++i) {
    if (title.compare(i, 3, "\xE2\x80\x99") == 0) {
      folded += '\'';
      i += 2;
    } else {
      folded += title[i];
    }
  }
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < folded.size()) {
    if (!is_word_char(folded[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < folded.size() && is_word_char(folded[j])) ++j;
    std::string raw = folded.substr(i, j - i);
    while (!raw.empty() && raw.front() == '\'') raw.erase(raw.begin());
    while (!raw.empty() && raw.back() == '\'') raw.pop_back();
    if (!raw.empty()) {
      const bool all_upper = raw.size() >= 2 && std::all_of(raw.begin(), raw.end(), [](char c) {
                               return !std::isalpha(static_cast<unsigned char>(c)) ||
                                      std::isupper(static_cast<unsigned char>(c));
                             });
      out.push_back({lower(raw), all_upper});
    }
    i = j;
  }
  return out;
}

std::vector<std::string> split_phrase(std::string_view phrase) {
  std::vector<std::string> out;
  for (const auto& w : words(phrase)) out.push_back(w.text);
  return out;
}

bool contains_phrase(const std::vector<Word>& ws, const std::string& phrase) {
  const auto parts = split_phrase(phrase);
  if (parts.empty() || parts.size() > ws.size()) return false;
  for (std::size_t i = 0; i + parts.size() <= ws.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < parts.size() && match; ++k) match = ws[i + k].text == parts[k];
    if (match) return true;
  }
  return false;
}

bool any_phrase(const std::vector<Word>& ws, const std::vector<std::string>& phrases) {
  return std::any_of(phrases.begin(), phrases.end(),
                     [&](const std::string& p) { return contains_phrase(ws, p); });
}

bool any_word_prefix(const std::vector<Word>& ws, const std::vector<std::string>& terms) {
  for (const auto& w : ws) {
    for (const auto& t : terms) {
      const auto lt = lower(t);
      if (!lt.empty() && w.text.compare(0, lt.size(), lt) == 0) return true;
    }
  }
  return false;
}

bool any_word(const std::vector<Word>& ws, const std::vector<std::string>& terms,
              bool skip_acronyms) {
  for (const auto& w : ws) {
    if (skip_acronyms && w.acronym) continue;
    for (const auto& t : terms) {
      if (w.text == lower(t)) return true;
    }
  }
  return false;
}

std::size_t whitespace_tokens(std::string_view s) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c));
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::vector<std::string> string_list(const nlohmann::json& j, const char* key,
                                     std::vector<std::string> fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be a list of strings");
  }
}

}  // namespace

FilterConfig FilterConfig::defaults() {
  FilterConfig c;
  for (const auto& profile : builtin_communities()) {
    c.community_limits[lower(profile.name)] = {profile.min_comments, profile.max_comments};
  }
  c.wh_words = {"who", "what", "when", "where", "why", "which", "how"};
  c.reddit_terms = {"subreddit", "redditor", "upvote", "karma"};
  c.first_person = {"i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"};
  c.relationship_terms = {"my husband", "my wife",    "my boyfriend", "my girlfriend",
                          "my partner", "my fiance",  "my fiancee",   "my spouse",
                          "my son",     "my daughter", "my mom",      "my dad",
                          "my ex",      "dh",         "dw",           "lo",
                          "hubby",      "bf",         "gf"};
  c.deixis_terms = {"this", "that", "these", "those", "here", "now", "today", "tonight", "yesterday"};
  c.first_person_contractions = {"i'm",   "i've",  "i'd",    "i'll",  "we're",
                                 "we've", "we'd",  "we'll",  "im",    "ive"};
  c.validation_phrases = {"is this normal", "does anyone else", "is this okay", "is this ok",
                          "is it normal",   "am i the only",    "is it just me"};
  c.abbreviations = {"mr", "mrs", "ms", "dr", "st", "vs", "etc", "jr", "sr", "no", "approx"};
  return c;
}

FilterConfig FilterConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "filter config must be an object");
  FilterConfig c = defaults();
  try {
    c.min_post_score = j.value("min_post_score", c.min_post_score);
    c.min_title_tokens = j.value("min_title_tokens", c.min_title_tokens);
    c.min_comment_score = j.value("min_comment_score", c.min_comment_score);
    c.profanity_threshold = j.value("profanity_threshold", c.profanity_threshold);
    if (j.contains("interrogative")) {
      const auto mode = j.at("interrogative").get<std::string>();
      if (mode == "either") {
        c.interrogative = InterrogativeRule::Either;
      } else if (mode == "both") {
        c.interrogative = InterrogativeRule::Both;
      } else {
        throw Error(ErrorCode::InvalidConfig, "interrogative must be \"either\" or \"both\"");
      }
    }
    if (j.contains("community_limits")) {
      for (const auto& [name, limits] : j.at("community_limits").items()) {
        c.community_limits[lower(name)] = {limits.at("min_comments").get<std::size_t>(),
                                           limits.at("max_comments").get<std::size_t>()};
      }
    }
    if (j.contains("default_limits") && !j.at("default_limits").is_null()) {
      const auto& d = j.at("default_limits");
      c.default_limits = CommentLimits{d.at("min_comments").get<std::size_t>(),
                                       d.at("max_comments").get<std::size_t>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("filter config: ") + e.what());
  }
  c.wh_words = string_list(j, "wh_words", c.wh_words);
  c.reddit_terms = string_list(j, "reddit_terms", c.reddit_terms);
  c.first_person = string_list(j, "first_person", c.first_person);
  c.relationship_terms = string_list(j, "relationship_terms", c.relationship_terms);
  c.deixis_terms = string_list(j, "deixis_terms", c.deixis_terms);
  c.first_person_contractions =
      string_list(j, "first_person_contractions", c.first_person_contractions);
  c.validation_phrases = string_list(j, "validation_phrases", c.validation_phrases);
  c.abbreviations = string_list(j, "abbreviations", c.abbreviations);
  if (!(c.profanity_threshold >= 0.0 && c.profanity_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "profanity_threshold must lie in [0, 1]");
  }
  for (const auto& [name, limits] : c.community_limits) {
    if (limits.max_comments < limits.min_comments) {
      throw Error(ErrorCode::InvalidConfig, "max_comments below min_comments for " + name);
    }
  }
  return c;
}

nlohmann::ordered_json FilterConfig::to_json() const {
  nlohmann::ordered_json j;
  j["min_post_score"] = min_post_score;
  j["min_title_tokens"] = min_title_tokens;
  j["min_comment_score"] = min_comment_score;
  j["profanity_threshold"] = profanity_threshold;
  j["interrogative"] = interrogative == InterrogativeRule::Either ? "either" : "both";
  j["community_limits"] = nlohmann::ordered_json::object();
  for (const auto& [name, l] : community_limits) {
    j["community_limits"][name] = {{"min_comments", l.min_comments}, {"max_comments", l.max_comments}};
  }
  if (default_limits) {
    j["default_limits"] = {{"min_comments", default_limits->min_comments},
                           {"max_comments", default_limits->max_comments}};
  }
  j["wh_words"] = wh_words;
  j["reddit_terms"] = reddit_terms;
  j["first_person"] = first_person;
  j["relationship_terms"] = relationship_terms;
  j["deixis_terms"] = deixis_terms;
  j["first_person_contractions"] = first_person_contractions;
  j["validation_phrases"] = validation_phrases;
  j["abbreviations"] = abbreviations;
  return j;
}

CommentLimits FilterConfig::limits_for(std::string_view community) const {
  std::string key = lower(community);
  if (key.rfind("r/", 0) == 0) key.erase(0, 2);
  auto it = community_limits.find(key);
  if (it != community_limits.end()) return it->second;
  if (default_limits) return *default_limits;
  throw Error(ErrorCode::UnknownCommunity,
              "no comment limits for community \"" + std::string(community) + "\"");
}

std::size_t count_sentences(std::string_view title, const FilterConfig& config) {
  std::size_t sentences = 0;
  bool has_content = false;
  std::size_t word_start = 0;
  std::size_t i = 0;
  while (i < title.size()) {
    const char c = title[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i;
      while (j < title.size() && (title[j] == '.' || title[j] == '!' || title[j] == '?')) ++j;
      const bool at_end = j >= title.size() || blank(title.substr(j));
      const bool before_space = j < title.size() && std::isspace(static_cast<unsigned char>(title[j]));
      std::string prev(title.substr(word_start, i - word_start));
      const bool dotted_word = prev.find('.') != std::string::npos;
      const bool initial = prev.size() == 1 && std::isalpha(static_cast<unsigned char>(prev[0]));
      const bool abbreviation =
          title[i] == '.' && j == i + 1 &&
          (dotted_word || initial ||
           std::find(config.abbreviations.begin(), config.abbreviations.end(), lower(prev)) !=
               config.abbreviations.end());
      if ((at_end || before_space) && !abbreviation) {
        if (has_content) ++sentences;
        has_content = false;
        word_start = j;
      }
      i = j;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      word_start = i + 1;
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      has_content = true;
    }
    ++i;
  }
  if (has_content) ++sentences;
  return sentences;
}

std::optional<std::string> first_failing_rule(const RawPost& post, const FilterConfig& config) {
  const std::string& title = post.title;
  if (blank(title)) return "empty_title";
  if (post.score < config.min_post_score) return "low_score";
  if (whitespace_tokens(title) < config.min_title_tokens) return "short_title";

  const auto ws = words(title);
  const bool wh = any_word(ws, config.wh_words, false);
  auto last = title.find_last_not_of(" \t\r\n");
  const bool question_mark = last != std::string::npos && title[last] == '?';
  const bool interrogative = config.interrogative == InterrogativeRule::Either
                                 ? (wh || question_mark)
                                 : (wh && question_mark);
  if (!interrogative) return "not_interrogative";
  if (any_word_prefix(ws, config.reddit_terms)) return "reddit_term";
  if (count_sentences(title, config) > 1) return "multiple_sentences";
  if (post.profanity_prob && *post.profanity_prob > config.profanity_threshold) return "profanity";
  if (any_word(ws, config.first_person, true)) return "first_person";
  if (any_phrase(ws, config.relationship_terms)) return "relationship_term";
  if (any_word(ws, config.deixis_terms, false) &&
      any_word(ws, config.first_person_contractions, false)) {
    return "deixis_first_person";
  }
  if (any_phrase(ws, config.validation_phrases)) return "validation_phrase";
  return std::nullopt;
}

std::size_t FilterResult::rejected(std::string_view rule) const {
  for (const auto& [name, count] : tally) {
    if (name == rule) return count;
  }
  return 0;
}

nlohmann::ordered_json FilterResult::report() const {
  nlohmann::ordered_json j;
  j["input"] = decisions.size();
  j["kept"] = kept.size();
  j["rejected"] = nlohmann::ordered_json::object();
  for (const auto& [name, count] : tally) j["rejected"][name] = count;
  j["unscored_profanity"] = unscored;
  return j;
}

namespace {

FilterResult run_filters(const std::vector<RawPost>& posts, const FilterConfig& config,
                         bool thread_rules) {
  FilterResult result;
  for (auto rule : kPostRules) result.tally.emplace_back(std::string(rule), 0);
  if (thread_rules) {
    for (auto rule : kThreadRules) result.tally.emplace_back(std::string(rule), 0);
  }
  const auto bump = [&](const std::string& rule) {
    for (auto& [name, count] : result.tally) {
      if (name == rule) ++count;
    }
  };
  for (const auto& post : posts) {
    PostDecision decision{post.post_id, first_failing_rule(post, config)};
    RawPost kept = post;
    if (!decision.rejected_by && thread_rules) {
      auto thread = filter_comments(post, config);
      decision.rejected_by = thread.rejected_by;
      kept.comments = std::move(thread.comments);
    }
    if (decision.rejected_by) {
      bump(*decision.rejected_by);
    } else {
      if (!post.profanity_prob) result.unscored.push_back(post.post_id);
      result.kept.push_back(std::move(kept));
    }
    result.decisions.push_back(std::move(decision));
  }
  return result;
}

}  // namespace

FilterResult filter_posts(const std::vector<RawPost>& posts, const FilterConfig& config) {
  return run_filters(posts, config, false);
}

ThreadDecision filter_comments(const RawPost& post, const FilterConfig& config) {
  const auto limits = config.limits_for(post.community);
  ThreadDecision out;
  for (const auto& c : post.comments) {
    if (c.top_level && c.score >= config.min_comment_score) out.comments.push_back(c);
  }
  if (out.comments.size() < limits.min_comments) {
    out.rejected_by = "too_few_comments";
  } else if (out.comments.size() > limits.max_comments) {
    out.rejected_by = "too_many_comments";
  }
  return out;
}

FilterResult filter_corpus(const std::vector<RawPost>& posts, const FilterConfig& config) {
  return run_filters(posts, config, true);
}

std::vector<std::size_t> sample_indices(std::size_t pool, std::size_t n, std::uint64_t seed) {
  if (n > pool) {
    throw Error(ErrorCode::InsufficientPosts, "asked for " + std::to_string(n) + " of " +
                                                  std::to_string(pool) + " posts");
  }
  std::mt19937_64 rng(seed);
  // Unbiased bounded draw in [0, bound); defined here so samples do not
  // depend on the standard library's distribution implementation.
  const auto draw = [&rng](std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return x % bound;
  };
  std::vector<std::size_t> idx(pool);
  for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(draw(pool - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<RawPost> sample_questions(const std::vector<RawPost>& posts, std::size_t n,
                                      std::uint64_t seed) {
  std::vector<RawPost> out;
  for (std::size_t i : sample_indices(posts.size(), n, seed)) out.push_back(posts[i]);
  return out;
}

}  // namespace discotrace
