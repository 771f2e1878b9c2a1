#include <doctest.h>

#include <random>

#include "discotrace/error.hpp"
#include "discotrace/segmentation.hpp"
#include "support/test_support.hpp"

using namespace discotrace;
using nlohmann::json;

namespace {

json leaf(const std::string& t) { return {{"edu", t}}; }
json node(const std::string& rel, const std::string& nuc, json l, json r) {
  return {{"relation", rel}, {"nuclearity", nuc}, {"left", std::move(l)}, {"right", std::move(r)}};
}
json chain(int first, int n, const std::string& rel = "Elaboration") {
  json doc = leaf("e" + std::to_string(first));
  for (int i = first + 1; i < first + n; ++i) doc = node(rel, "NS", doc, leaf("e" + std::to_string(i)));
  return doc;
}

std::vector<std::vector<std::size_t>> spans_of(const RstTree& t, const BoundaryConfig& c) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : get_spans(t.root(), c)) out.push_back(s.indices());
  return out;
}

using Spans = std::vector<std::vector<std::size_t>>;

}  // namespace

TEST_CASE("default boundary table") {
  const auto c = BoundaryConfig::defaults();
  CHECK(c.min_span_k == 3);
  CHECK(c.boundary_pairs.size() == 13);
  CHECK(is_boundary(Relation::Contrast, Nuclearity::NN, c));
  CHECK_FALSE(is_boundary(Relation::Contrast, Nuclearity::NS, c));
  CHECK_FALSE(is_boundary(Relation::Background, Nuclearity::NN, c));
  CHECK(is_boundary(Relation::Background, Nuclearity::SN, c));
  CHECK_FALSE(is_boundary(Relation::Elaboration, Nuclearity::NS, c));
  for (auto r : all_relations()) {
    for (auto n : all_nuclearities()) {
      CHECK(is_boundary(r, n, c) == testkit::table_boundary(to_string(r), to_string(n)));
    }
  }
}

TEST_CASE("config json round trip and validation") {
  const auto c = BoundaryConfig::defaults();
  CHECK(BoundaryConfig::from_json(c.to_json()) == c);
  CHECK(BoundaryConfig::from_json(json::object()) == c);
  const auto custom = BoundaryConfig::from_json(
      {{"min_span_k", 2}, {"pairs", {{{"relation", "Joint"}, {"nuclearity", {"NN"}}}}}});
  CHECK(custom.min_span_k == 2);
  CHECK(custom.boundary_pairs.size() == 1);
  CHECK(is_boundary(Relation::Joint, Nuclearity::NN, custom));
  CHECK_THROWS_AS(BoundaryConfig::from_json({{"min_span_k", 0}}), Error);
}

TEST_CASE("leaf yields a single span") {
  const auto t = parse_rst_tree(leaf("only"));
  CHECK(spans_of(t, BoundaryConfig::defaults()) == Spans{{0}});
  const auto segs = segment_answer(t, BoundaryConfig::defaults(), "a1");
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].answer_id == "a1");
  CHECK(segs[0].text == "only");
}

TEST_CASE("contrast over two unsplit pairs") {
  const auto t = parse_rst_tree(node("Contrast", "NN", chain(0, 2), chain(2, 2)));
  CHECK(spans_of(t, BoundaryConfig::defaults()) == Spans{{0, 1}, {2, 3}});
}

TEST_CASE("background below the size threshold collapses") {
  const auto t = parse_rst_tree(node("Background", "NS", chain(0, 2), chain(2, 4)));
  CHECK(spans_of(t, BoundaryConfig::defaults()) == Spans{{0, 1, 2, 3, 4, 5}});
}

TEST_CASE("background with both sides large enough splits") {
  const auto t = parse_rst_tree(node("Background", "SN", chain(0, 3), chain(3, 3)));
  CHECK(spans_of(t, BoundaryConfig::defaults()) == Spans{{0, 1, 2}, {3, 4, 5}});
  auto k4 = BoundaryConfig::defaults();
  k4.min_span_k = 4;
  CHECK(spans_of(t, k4) == Spans{{0, 1, 2, 3, 4, 5}});
}

TEST_CASE("non-boundary node keeps deeper splits only beyond two spans") {
  // Elaboration over [Contrast(a,b), c]: children give 2 + 1 spans, kept.
  const auto kept = parse_rst_tree(
      node("Elaboration", "NS", node("Contrast", "NN", leaf("a"), leaf("b")), leaf("c")));
  CHECK(spans_of(kept, BoundaryConfig::defaults()) == Spans{{0}, {1}, {2}});
  // Elaboration over two leaves: 1 + 1 spans, collapsed.
  const auto collapsed = parse_rst_tree(node("Elaboration", "NS", leaf("a"), leaf("b")));
  CHECK(spans_of(collapsed, BoundaryConfig::defaults()) == Spans{{0, 1}});
}

TEST_CASE("boundary at the root over non-boundary subtrees gives two segments") {
  const auto t = parse_rst_tree(node("Contrast", "NN", chain(0, 3), chain(3, 2, "Joint")));
  const auto segs = segment_answer(t, BoundaryConfig::defaults(), "x");
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].edu_indices == std::vector<std::size_t>{0, 1, 2});
  CHECK(segs[1].edu_indices == std::vector<std::size_t>{3, 4});
  CHECK(segs[0].text == "e0 e1 e2");
}

TEST_CASE("tree without boundary relations is one segment") {
  const auto t = parse_rst_tree(chain(0, 6, "Joint"));
  CHECK(segment_answer(t, BoundaryConfig::defaults()).size() == 1);
}

TEST_CASE("random trees: partition, oracle equivalence, empty config, determinism") {
  std::mt19937_64 rng(2024);
  BoundaryConfig empty;
  empty.boundary_pairs.clear();
  const auto c = BoundaryConfig::defaults();
  for (int i = 0; i < 1000; ++i) {
    const auto simple = testkit::random_simple_tree(rng, 20);
    const auto t = testkit::to_rst_tree(*simple);
    const auto segs = segment_answer(t, c);
    std::size_t next = 0;
    for (const auto& s : segs) {
      REQUIRE_FALSE(s.edu_indices.empty());
      for (auto idx : s.edu_indices) CHECK(idx == next++);
    }
    CHECK(next == t.edu_count());

    const auto oracle = testkit::naive_spans(*simple, c.min_span_k);
    const auto got = get_spans(t.root(), c);
    REQUIRE(got.size() == oracle.size());
    for (std::size_t s = 0; s < got.size(); ++s) {
      const auto idx = got[s].indices();
      CHECK(std::vector<int>(idx.begin(), idx.end()) == oracle[s]);
    }

    CHECK(segment_answer(t, empty).size() == 1);
    CHECK(segment_answer(t, c) == segs);
  }
}
