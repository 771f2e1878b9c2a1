#include <doctest.h>

#include "discotrace/error.hpp"
#include "discotrace/ontology.hpp"
#include "support/test_support.hpp"

using namespace discotrace;
using nlohmann::json;

namespace {

json act(const std::string& id, const char* family, bool eligible) {
  json j = {{"id", id}, {"display_name", id}, {"interpretation_eligible", eligible},
            {"description", "d"}};
  j["family"] = family ? json(family) : json(nullptr);
  return j;
}

json minimal() {
  return {{"version", "t"},
          {"acts",
           {act("action_AQ_a", "AQ", true), act("action_CQ_c", "CQ", false),
            act("action_SI_s", "SI", true), act("action_RQ_r", "RQ", false),
            act("action_NO_n", "NO", false), act("NONE", nullptr, false)}}};
}

ErrorCode load_error(const json& doc) {
  try {
    load_ontology(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected load_ontology to throw");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("shipped ontology") {
  const auto o = testkit::shipped_ontology();
  CHECK(o.at("action_AQ_assert_answer").display_name == "Assert Answer");
  CHECK(o.at("action_AQ_assert_answer").family == ActFamily::AQ);
  CHECK(is_eligible(o, "action_AQ_assert_answer"));
  CHECK(o.at("action_CQ_reject_presupposition").family == ActFamily::CQ);
  CHECK_FALSE(is_eligible(o, "action_CQ_reject_presupposition"));
  CHECK(is_eligible(o, "action_SI_clarification"));
  CHECK_FALSE(is_eligible(o, "NONE"));
  CHECK(o.family_token("NONE") == "NONE");
  CHECK(o.family_token("action_SI_clarification") == "SI");
  for (auto f : {ActFamily::AQ, ActFamily::CQ, ActFamily::SI, ActFamily::RQ, ActFamily::NO}) {
    bool seen = false;
    for (const auto& a : o.acts()) seen = seen || a.family == f;
    CHECK(seen);
  }
  CHECK_THROWS_AS(is_eligible(o, "action_ZZ_bogus"), Error);
}

TEST_CASE("ontology round trip") {
  const auto o = testkit::shipped_ontology();
  const auto again = load_ontology(o.to_json());
  CHECK(again.acts() == o.acts());
  CHECK(again.version() == o.version());
  CHECK(load_ontology(minimal()).acts().size() == 6);
}

TEST_CASE("ontology rejections") {
  auto dup = minimal();
  dup["acts"].push_back(act("action_AQ_a", "AQ", true));
  CHECK(load_error(dup) == ErrorCode::DuplicateActId);

  auto no_none = minimal();
  no_none["acts"].erase(no_none["acts"].size() - 1);
  CHECK(load_error(no_none) == ErrorCode::MissingNoneSentinel);

  auto bad_family = minimal();
  bad_family["acts"].push_back(act("action_XX_x", "XX", true));
  CHECK(load_error(bad_family) == ErrorCode::UnknownFamily);

  auto empty_family = minimal();
  empty_family["acts"].erase(3);
  CHECK(load_error(empty_family) == ErrorCode::EmptyFamily);

  auto wrong_prefix = minimal();
  wrong_prefix["acts"].push_back(act("action_AQ_x", "CQ", true));
  CHECK(load_error(wrong_prefix) == ErrorCode::InvalidActId);

  auto eligible_none = minimal();
  eligible_none["acts"].back()["interpretation_eligible"] = true;
  CHECK_FALSE(is_eligible(load_ontology(eligible_none), "NONE"));
}

TEST_CASE("render lists every act") {
  const auto o = testkit::shipped_ontology();
  const auto text = o.render();
  for (const auto& a : o.acts()) CHECK(text.find(a.id) != std::string::npos);
}
