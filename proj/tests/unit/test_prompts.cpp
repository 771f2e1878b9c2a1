#include <doctest.h>

#include "discotrace/communities.hpp"
#include "discotrace/error.hpp"
#include "discotrace/prompts.hpp"
#include "support/test_support.hpp"

using namespace discotrace;

namespace {

bool has(const std::string& text, std::string_view needle) {
  return text.find(needle) != std::string::npos;
}

ErrorCode act_error(std::string_view raw, std::size_t n) {
  try {
    parse_act_response(raw, testkit::shipped_ontology(), n);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected parse_act_response to throw");
  return ErrorCode::Io;
}

ActPromptInput sample_input() {
  ActPromptInput in;
  in.question = "Why is the sky blue?";
  in.answer = "Rayleigh scattering. Short wavelengths scatter more. See any optics book.";
  in.segment = "Rayleigh scattering. Short wavelengths scatter more.";
  in.subsegments = {"Rayleigh scattering.", "Short wavelengths", "scatter more."};
  return in;
}

}  // namespace

TEST_CASE("act prompt for a first segment") {
  const auto o = testkit::shipped_ontology();
  const auto r = build_act_prompt(sample_input(), o);
  CHECK(r.temperature == doctest::Approx(0.01));
  CHECK(has(r.system, "If no action fits, use \"NONE\""));
  CHECK(has(r.system, "action_AQ_assert_answer"));
  CHECK(has(r.user, "**Previous Segment** action=\"(none)\""));
  CHECK(has(r.user, "[0] Rayleigh scattering."));
  CHECK(has(r.user, "[1] Short wavelengths"));
  CHECK(has(r.user, "[2] scatter more."));
  CHECK_FALSE(has(r.user, "[3]"));
  CHECK(has(r.user, "Why is the sky blue?"));
  CHECK(has(r.user, "See any optics book."));
}

TEST_CASE("act prompt carries the previous segment and its label") {
  auto in = sample_input();
  in.prev_segment = "Good question.";
  in.prev_label = "action_CQ_comment_on_question";
  const auto r = build_act_prompt(in, testkit::shipped_ontology());
  CHECK(has(r.user, "action=\"action_CQ_comment_on_question\"\nGood question."));
}

TEST_CASE("act prompt builder is pure") {
  const auto o = testkit::shipped_ontology();
  CHECK(build_act_prompt(sample_input(), o) == build_act_prompt(sample_input(), o));
  CHECK(request_digest(build_act_prompt(sample_input(), o)) ==
        request_digest(build_act_prompt(sample_input(), o)));
}

TEST_CASE("act prompt needs a segment") {
  auto in = sample_input();
  in.subsegments.clear();
  CHECK_THROWS_AS(build_act_prompt(in, testkit::shipped_ontology()), Error);
  in = sample_input();
  in.segment.clear();
  CHECK_THROWS_AS(build_act_prompt(in, testkit::shipped_ontology()), Error);
}

TEST_CASE("parse act responses") {
  const auto o = testkit::shipped_ontology();
  const auto single = parse_act_response(R"([{"action_id": "action_AQ_assert_answer"}])", o, 2);
  REQUIRE(single.size() == 1);
  CHECK_FALSE(single[0].subsegment_index);
  CHECK(single[0].action_id == "action_AQ_assert_answer");

  const auto per = parse_act_response(
      R"([{"subsegment_index":0,"action_id":"action_CQ_reject_presupposition"},{"subsegment_index":1,"action_id":"action_AQ_assert_answer"}])",
      o, 2);
  REQUIRE(per.size() == 2);
  CHECK(per[0] == ActAssignment{0, "action_CQ_reject_presupposition"});
  CHECK(per[1] == ActAssignment{1, "action_AQ_assert_answer"});

  const auto fenced =
      parse_act_response("```json\n[{\"action_id\": \"NONE\"}]\n```\n", o, 1);
  REQUIRE(fenced.size() == 1);
  CHECK(fenced[0].action_id == "NONE");
}

TEST_CASE("act response rejections") {
  CHECK(act_error(R"([{"action_id":"action_ZZ_bogus"}])", 1) == ErrorCode::InvalidActId);
  CHECK(act_error("Sure! Here you go.", 1) == ErrorCode::UnparsableResponse);
  CHECK(act_error(R"({"action_id":"NONE"})", 1) == ErrorCode::UnparsableResponse);
  CHECK(act_error(R"([{"subsegment_index":2,"action_id":"NONE"}])", 2) ==
        ErrorCode::IndexOutOfRange);
  CHECK(act_error(R"([{"subsegment_index":0,"action_id":"NONE"},{"action_id":"NONE"}])", 2) ==
        ErrorCode::MixedForm);
}

TEST_CASE("serialize then parse is identity") {
  const auto o = testkit::shipped_ontology();
  const std::vector<std::vector<ActAssignment>> cases = {
      {{std::nullopt, "action_AQ_assert_answer"}},
      {{std::nullopt, "NONE"}},
      {{0, "action_CQ_reject_presupposition"}, {1, "action_AQ_assert_answer"}},
      {{0, "action_SI_clarification"}, {2, "action_NO_presentational"}, {1, "NONE"}},
  };
  for (const auto& c : cases) CHECK(parse_act_response(serialize_act_assignments(c), o, 3) == c);
}

TEST_CASE("interpretation generation prompt") {
  const auto plain = build_interp_gen_prompt("What is a word?", "");
  CHECK(has(plain.system,
            "If the user's information need is already clear from their question, output 'NONE'"));
  CHECK(has(plain.user, "What is a word?"));

  const auto ling = find_community("r/asklinguistics");
  REQUIRE(ling);
  const auto with = build_interp_gen_prompt("What is a word?", ling->description);
  CHECK(has(with.system, ling->description));
  CHECK(has(ling->description, "linguistics"));
  std::string stripped = with.system;
  stripped.erase(stripped.find(ling->description), ling->description.size() + 2);
  CHECK(stripped == plain.system);
  CHECK(with.user == plain.user);
}

TEST_CASE("interpretation list parsing") {
  CHECK(parse_interp_list("NONE").empty());
  CHECK(parse_interp_list("   none\n").empty());
  CHECK(parse_interp_list("1. A?\n2. B?") == std::vector<std::string>{"A?", "B?"});
  CHECK(parse_interp_list("1) A?\n\n2) B?\n") == std::vector<std::string>{"A?", "B?"});
  CHECK_THROWS_AS(parse_interp_list("I think the question is clear."), Error);
}

TEST_CASE("interpretation label prompt and parser") {
  const InterpretationList list = {{"id_1", "Why does light scatter?"}, {"id_2", "Why not violet?"}};
  const auto r = build_interp_label_prompt("Why is the sky blue?", list, "ans", "seg",
                                           "action_AQ_assert_answer");
  CHECK(has(r.user, "id_1"));
  CHECK(has(r.user, "Why not violet?"));
  CHECK(has(r.user, "action_AQ_assert_answer"));
  CHECK(has(r.system, "return \"NONE\""));

  const std::vector<std::string> ids = {"id_1", "id_2", "id_3"};
  CHECK(parse_interp_label(R"([{"interpretation_id":"id_1"}])", ids) == "id_1");
  CHECK(parse_interp_label(R"({"interpretation_id":"id_2"})", ids) == "id_2");
  CHECK_FALSE(parse_interp_label(R"([{"interpretation_id":"NONE"}])", ids));
  try {
    parse_interp_label(R"([{"interpretation_id":"id_99"}])", ids);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownInterpretationId);
  }
  CHECK_THROWS_AS(parse_interp_label("id_1", ids), Error);
}

TEST_CASE("mimic prompt") {
  const auto hist = find_community("AskHistorians");
  REQUIRE(hist);
  REQUIRE_FALSE(hist->guidelines.empty());
  const auto r = build_mimic_prompt("Why did Rome fall?", hist->name, hist->description,
                                    hist->guidelines);
  CHECK(has(r.system, "held to a higher standard"));
  CHECK(has(r.system, hist->guidelines));
  CHECK(r.user.rfind("Answer the question as if you were a redditor in that subreddit:", 0) == 0);
  CHECK(has(r.user, "Why did Rome fall?"));
  CHECK_THROWS_AS(build_mimic_prompt("q", "AskHistorians", "history", ""), Error);
}
