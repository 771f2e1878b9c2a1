#include <doctest.h>

#include <cmath>
#include <random>

#include "discotrace/error.hpp"
#include "discotrace/interpretation_space.hpp"
#include "support/test_support.hpp"

using namespace discotrace;

namespace {

testkit::ScriptedChat fixed(const std::string& name, const std::string& reply) {
  return testkit::ScriptedChat(name, "m", [reply](const ChatRequest&) { return reply; });
}

RawInterpretation raw(const std::string& gen, const std::string& text) { return {gen, text}; }

}  // namespace

TEST_CASE("generation pools generator outputs in order") {
  auto a = fixed("a", "1. A1?\n2. A2?");
  auto b = fixed("b", "1. B1?\n2. B2?\n3. B3?");
  const auto r = generate_raw("q?", "", {&a, &b});
  REQUIRE(r.items.size() == 5);
  CHECK(r.items[0] == raw("a", "A1?"));
  CHECK(r.items[2] == raw("b", "B1?"));
  CHECK(r.warnings.empty());
}

TEST_CASE("generation with both abstaining is empty") {
  auto a = fixed("a", "NONE");
  auto b = fixed("b", "none");
  CHECK(generate_raw("q?", "", {&a, &b}).items.empty());
}

TEST_CASE("one failing generator degrades to a warning") {
  testkit::ScriptedChat a("a", "m", [](const ChatRequest&) -> std::string {
    throw Error(ErrorCode::TransportError, "down");
  });
  auto b = fixed("b", "1. B1?");
  const auto r = generate_raw("q?", "", {&a, &b});
  REQUIRE(r.items.size() == 1);
  CHECK(r.items[0] == raw("b", "B1?"));
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].generator == "a");

  testkit::ScriptedChat c("c", "m", [](const ChatRequest&) -> std::string {
    throw Error(ErrorCode::TransportError, "down too");
  });
  CHECK_THROWS_AS(generate_raw("q?", "", {&a, &c}), Error);
}

TEST_CASE("cosine similarity") {
  CHECK(cosine_similarity({1, 0}, {0, 1}) == doctest::Approx(0.0));
  CHECK(cosine_similarity({1, 2}, {2, 4}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cosine_similarity({1, 0}, {1, 0, 0}), Error);
}

TEST_CASE("identical texts merge their sources") {
  testkit::BagOfWordsEmbedder emb;
  const auto s = deduplicate({raw("a", "Why is it blue?"), raw("b", "Why is it blue?")}, emb, 0.85, "q1");
  REQUIRE(s.size() == 1);
  CHECK(s.members[0].id == "id_1");
  CHECK(s.members[0].sources == std::set<std::string>{"a", "b"});
  CHECK(s.question_id == "q1");
}

TEST_CASE("orthogonal embeddings are all kept") {
  MockEmbeddingBackend emb("e", {{"x", {1, 0, 0}}, {"y", {0, 1, 0}}, {"z", {0, 0, 1}}});
  const auto s = deduplicate({raw("a", "x"), raw("a", "y"), raw("b", "z")}, emb, 0.85);
  REQUIRE(s.size() == 3);
  CHECK(s.ids() == std::vector<std::string>{"id_1", "id_2", "id_3"});
}

TEST_CASE("cosine 0.9 merges into the first member at threshold 0.85") {
  const double angle = std::acos(0.9);
  MockEmbeddingBackend emb("e", {{"first", {1, 0}}, {"second", {std::cos(angle), std::sin(angle)}}});
  const auto s = deduplicate({raw("a", "first"), raw("b", "second")}, emb, 0.85);
  REQUIRE(s.size() == 1);
  CHECK(s.members[0].text == "first");
  CHECK(s.members[0].sources == std::set<std::string>{"a", "b"});
  CHECK(deduplicate({raw("a", "first"), raw("b", "second")}, emb, 0.95).size() == 2);
}

TEST_CASE("threshold and dimension checks") {
  MockEmbeddingBackend ragged("e", {{"x", {1, 0}}, {"y", {1, 0, 0}}});
  try {
    deduplicate({raw("a", "x"), raw("a", "y")}, ragged, 0.85);
    FAIL("expected EmbeddingDimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmbeddingDimensionMismatch);
  }
  testkit::BagOfWordsEmbedder emb;
  CHECK_THROWS_AS(deduplicate({raw("a", "x")}, emb, 0.0), Error);
  CHECK_THROWS_AS(deduplicate({raw("a", "x")}, emb, 1.5), Error);
  CHECK(deduplicate({}, emb, 0.85).empty());
}

TEST_CASE("space json round trip") {
  testkit::BagOfWordsEmbedder emb;
  const auto s = deduplicate({raw("a", "one thing"), raw("b", "another matter")}, emb, 0.85, "q");
  CHECK(InterpretationSpace::from_json(s.to_json()) == s);
  CHECK(s.find("id_2") != nullptr);
  CHECK(s.find("id_3") == nullptr);
}

TEST_CASE("random pools: size bound, coverage, separation, exact-dedup equivalence") {
  std::mt19937_64 rng(99);
  const std::vector<std::string> words = {"why", "how", "sky", "blue", "red", "light", "sea", "air"};
  testkit::BagOfWordsEmbedder emb(256);
  for (int round = 0; round < 100; ++round) {
    std::vector<RawInterpretation> pool;
    const auto n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      std::string text;
      const auto len = 1 + rng() % 3;
      for (std::size_t w = 0; w < len; ++w) text += (w ? " " : "") + words[rng() % words.size()];
      pool.push_back(raw(rng() % 2 ? "a" : "b", text));
    }
    const auto s = deduplicate(pool, emb, 0.85);
    CHECK(s.size() <= pool.size());
    const auto vecs = [&] {
      std::vector<std::string> texts;
      for (const auto& m : s.members) texts.push_back(m.text);
      return emb.embed(texts);
    }();
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      for (std::size_t j = i + 1; j < vecs.size(); ++j) CHECK(cosine_similarity(vecs[i], vecs[j]) < 0.85);
    }
    for (const auto& r : pool) {
      std::size_t owners = 0;
      for (const auto& m : s.members) owners += m.sources.count(r.generator) && m.text == r.text;
      bool represented = false;
      for (const auto& m : s.members) represented = represented || m.sources.count(r.generator);
      CHECK(represented);
      CHECK(owners <= 1);
    }
    CHECK(deduplicate(pool, emb, 0.85) == s);

    // An injective embedder at threshold 1 keeps exactly the distinct strings.
    std::map<std::string, std::vector<double>> table;
    for (const auto& r : pool) {
      if (!table.count(r.text)) {
        std::vector<double> v(64, 0.0);
        v[table.size()] = 1.0;
        table[r.text] = v;
      }
    }
    MockEmbeddingBackend injective("inj", table);
    const auto exact = deduplicate(pool, injective, 1.0);
    CHECK(exact.size() == table.size());
  }
}
