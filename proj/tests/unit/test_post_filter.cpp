#include <doctest.h>

#include <algorithm>
#include <set>

#include "discotrace/error.hpp"
#include "discotrace/post_filter.hpp"

using namespace discotrace;

namespace {

RawPost post(const std::string& id, const std::string& title, std::int64_t score = 10,
             std::optional<double> profanity = 0.1, const std::string& community = "explainlikeimfive") {
  RawPost p;
  p.post_id = id;
  p.title = title;
  p.score = score;
  p.profanity_prob = profanity;
  p.community = community;
  return p;
}

std::optional<std::string> rule(const std::string& title, std::int64_t score = 10,
                                std::optional<double> profanity = 0.1) {
  return first_failing_rule(post("p", title, score, profanity), FilterConfig::defaults());
}

RawPost thread(const std::string& community, std::size_t good, std::size_t low = 0,
               std::size_t nested = 0) {
  auto p = post("t", "Why is the sky blue?", 10, 0.1, community);
  for (std::size_t i = 0; i < good; ++i) p.comments.push_back({"g" + std::to_string(i), "x", 3, true, {}});
  for (std::size_t i = 0; i < low; ++i) p.comments.push_back({"l" + std::to_string(i), "x", 2, true, {}});
  for (std::size_t i = 0; i < nested; ++i) p.comments.push_back({"n" + std::to_string(i), "x", 50, false, {}});
  return p;
}

}  // namespace

TEST_CASE("clean question is kept") { CHECK_FALSE(rule("Why is the sky blue?")); }

TEST_CASE("title rules") {
  CHECK(rule("") == "empty_title");
  CHECK(rule("Why is the sky blue?", 4) == "low_score");
  CHECK_FALSE(rule("Why is the sky blue?", 5));
  CHECK(rule("Why sky blue?") == "short_title");
  CHECK(rule("The sky is blue today") == "not_interrogative");
  CHECK_FALSE(rule("Is the sky blue today?"));
  CHECK_FALSE(rule("How the sky got blue"));
  CHECK(rule("Why does this subreddit hate physics?") == "reddit_term");
  CHECK(rule("Why do people chase karma points?") == "reddit_term");
  CHECK(rule("Why is the sky blue? And why is grass green?") == "multiple_sentences");
  CHECK(rule("Why is the sky so damn blue?", 10, 0.9) == "profanity");
  CHECK_FALSE(rule("Why is the sky blue?", 10, 0.8));
  CHECK(rule("Why is my sky blue?") == "first_person");
  CHECK(rule("Why does the hubby always snore?") == "relationship_term");
  CHECK(rule("Does anyone else see the sky as blue?") == "validation_phrase");
}

TEST_CASE("strict interrogative option") {
  auto c = FilterConfig::defaults();
  c.interrogative = InterrogativeRule::Both;
  CHECK(first_failing_rule(post("p", "How the sky got blue"), c) == "not_interrogative");
  CHECK(first_failing_rule(post("p", "Is the sky blue today?"), c) == "not_interrogative");
  CHECK_FALSE(first_failing_rule(post("p", "Why is the sky blue?"), c));
}

TEST_CASE("sentence counting ignores abbreviations") {
  const auto c = FilterConfig::defaults();
  CHECK(count_sentences("Why is the sky blue?", c) == 1);
  CHECK(count_sentences("Why did Mr. Smith win vs. Jones?", c) == 1);
  CHECK(count_sentences("It is blue. Why?", c) == 2);
}

TEST_CASE("missing profanity score keeps and flags") {
  const auto r = filter_posts({post("p1", "Why is the sky blue?", 10, std::nullopt)}, FilterConfig::defaults());
  CHECK(r.kept.size() == 1);
  CHECK(r.unscored == std::vector<std::string>{"p1"});
}

TEST_CASE("comment filtering and community limits") {
  const auto c = FilterConfig::defaults();
  const auto low = filter_comments(thread("AskHistorians", 5, 3, 2), c);
  CHECK(low.comments.size() == 5);
  CHECK_FALSE(low.rejected_by);
  CHECK(filter_comments(thread("AskHistorians", 4), c).rejected_by == "too_few_comments");
  CHECK(filter_comments(thread("AskEconomics", 31), c).rejected_by == "too_many_comments");
  CHECK_FALSE(filter_comments(thread("AskEconomics", 30), c).rejected_by);
  CHECK_FALSE(filter_comments(thread("ScienceBasedParenting", 4), c).rejected_by);
  CHECK_FALSE(filter_comments(thread("r/askeconomics", 10), c).rejected_by);
  CHECK(c.limits_for("AskEconomics").max_comments == 30);
  CHECK(c.limits_for("ScienceBasedParenting").min_comments == 4);
}

TEST_CASE("unknown community needs a default") {
  auto c = FilterConfig::defaults();
  c.default_limits.reset();
  try {
    filter_comments(thread("SomewhereElse", 6), c);
    FAIL("expected UnknownCommunity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCommunity);
  }
  c.default_limits = CommentLimits{5, 10};
  CHECK_FALSE(filter_comments(thread("SomewhereElse", 6), c).rejected_by);
}

TEST_CASE("filter config json round trip") {
  const auto c = FilterConfig::defaults();
  const auto again = FilterConfig::from_json(c.to_json());
  CHECK(again.to_json() == c.to_json());
  const auto tweaked = FilterConfig::from_json({{"min_post_score", 1}});
  CHECK(tweaked.min_post_score == 1);
  CHECK(tweaked.min_title_tokens == 4);
}

TEST_CASE("filtering is idempotent, order-stable and fully tallied") {
  const std::vector<std::string> titles = {
      "Why is the sky blue?", "", "Why sky blue?", "The sky is blue today", "Why is my sky blue?",
      "How do tides work on other planets?", "Why does this subreddit exist at all?",
      "What makes bread rise in the oven?", "Does anyone else like rain a lot?",
      "Which planet has the longest day?"};
  std::vector<RawPost> posts;
  for (std::size_t i = 0; i < titles.size(); ++i) {
    posts.push_back(post("p" + std::to_string(i), titles[i], static_cast<std::int64_t>(i % 7)));
    for (int k = 0; k < 6; ++k) posts.back().comments.push_back({"c" + std::to_string(k), "x", 5, true, {}});
  }
  posts.back().community = "AskHistorians";
  const auto c = FilterConfig::defaults();
  for (const auto& run : {filter_posts(posts, c), filter_corpus(posts, c)}) {
    std::size_t rejected = 0;
    for (const auto& [name, n] : run.tally) rejected += n;
    CHECK(rejected + run.kept.size() == posts.size());
    CHECK(run.decisions.size() == posts.size());
    std::size_t pos = 0;
    for (const auto& k : run.kept) {
      while (pos < posts.size() && posts[pos].post_id != k.post_id) ++pos;
      CHECK(pos < posts.size());
    }
  }
  const auto once = filter_corpus(posts, c);
  const auto twice = filter_corpus(once.kept, c);
  CHECK(twice.kept == once.kept);
}

TEST_CASE("sampling") {
  std::vector<RawPost> pool;
  for (int i = 0; i < 1000; ++i) pool.push_back(post("p" + std::to_string(i), "Why?"));
  const auto a = sample_questions(pool, 300, 1);
  const auto b = sample_questions(pool, 300, 1);
  const auto c = sample_questions(pool, 300, 2);
  CHECK(a.size() == 300);
  CHECK(a == b);
  CHECK(c.size() == 300);
  CHECK_FALSE(a == c);
  std::set<std::string> ids;
  for (const auto& p : a) ids.insert(p.post_id);
  CHECK(ids.size() == 300);

  const auto idx = sample_indices(1000, 300, 7);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());

  std::vector<RawPost> small(pool.begin(), pool.begin() + 5);
  CHECK(sample_questions(small, 5, 9) == small);
  try {
    sample_questions(small, 6, 9);
    FAIL("expected InsufficientPosts");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientPosts);
  }
}

TEST_CASE("sampling is roughly uniform") {
  std::vector<std::size_t> hits(20, 0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    for (auto i : sample_indices(20, 5, seed)) ++hits[i];
  }
  // Expected 500 per index; a loose band catches gross bias only.
  for (auto h : hits) {
    CHECK(h > 400);
    CHECK(h < 600);
  }
}
