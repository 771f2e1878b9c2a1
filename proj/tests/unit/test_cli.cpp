#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "discotrace/cli.hpp"
#include "discotrace/communities.hpp"
#include "discotrace/corpus_io.hpp"
#include "discotrace/llm_gateway.hpp"
#include "discotrace/prompts.hpp"
#include "support/test_support.hpp"

using namespace discotrace;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kAnswer =
    R"({"answer_id":"a1","question_id":"q1","text":"It is blue. But red at dusk. Mostly.","rst_tree":{"relation":"Contrast","nuclearity":"NN","left":{"edu":"It is blue."},"right":{"relation":"Elaboration","nuclearity":"NS","left":{"edu":"But red at dusk."},"right":{"edu":"Mostly."}}}})";

std::string traces_jsonl() {
  return R"({"answer_id":"a1","question_id":"q1","steps":[{"act_id":"action_AQ_assert_answer","edu_indices":[0]},{"act_id":"action_AQ_provide_example","edu_indices":[1]}],"diagnostics":[]}
{"answer_id":"a2","question_id":"q1","steps":[{"act_id":"action_CQ_comment_on_question","edu_indices":[0]},{"act_id":"action_AQ_assert_answer","edu_indices":[1]},{"act_id":"NONE","edu_indices":[2]}],"diagnostics":[]}
)";
}

std::vector<double> csv_values(const std::string& csv) {
  std::vector<double> v;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
  }
  return v;
}

}  // namespace

TEST_CASE("segment writes one record with partitioning segments") {
  const auto dir = testkit::fresh_dir("cli_segment");
  testkit::write_file(dir + "/answers.jsonl", std::string(kAnswer) + "\n");
  const auto r = run({"segment", "--in", dir + "/answers.jsonl", "--out", dir + "/segments.jsonl"});
  REQUIRE(r.code == cli::kExitOk);
  const auto recs = read_corpus(dir + "/segments.jsonl");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["answer_id"] == "a1");
  const auto& segs = recs[0]["segments"];
  REQUIRE(segs.size() == 2);
  CHECK(segs[0]["edu_indices"] == Record::parse("[0]"));
  CHECK(segs[1]["edu_indices"] == Record::parse("[1,2]"));
  CHECK(segs[1]["text"] == "But red at dusk. Mostly.");
}

TEST_CASE("segment to stdout") {
  const auto dir = testkit::fresh_dir("cli_segment_stdout");
  testkit::write_file(dir + "/answers.jsonl", std::string(kAnswer) + "\n");
  const auto r = run({"segment", "--in", dir + "/answers.jsonl", "--out", "-"});
  CHECK(r.code == cli::kExitOk);
  CHECK(parse_corpus(r.out).size() == 1);
}

TEST_CASE("compare on identical corpora gives equal entries") {
  const auto dir = testkit::fresh_dir("cli_compare");
  testkit::write_file(dir + "/a.jsonl", traces_jsonl());
  testkit::write_file(dir + "/b.jsonl", traces_jsonl());
  const auto r = run({"compare", "--corpora", dir + "/a.jsonl", dir + "/b.jsonl", "--out", dir + "/m.csv",
                      "--long", dir + "/m_long.csv", "--json", dir + "/m.json"});
  REQUIRE(r.code == cli::kExitOk);
  const auto csv = testkit::read_file(dir + "/m.csv");
  CHECK(csv.rfind("train\\eval,a,b\n", 0) == 0);
  const auto v = csv_values(csv);
  REQUIRE(v.size() == 4);
  for (double x : v) CHECK(x == doctest::Approx(v[0]).epsilon(1e-12));
  CHECK(testkit::read_file(dir + "/m_long.csv").rfind("train,eval,perplexity\n", 0) == 0);
  const auto j = nlohmann::json::parse(testkit::read_file(dir + "/m.json"));
  CHECK(j["labels"] == nlohmann::json::array({"a", "b"}));

  const auto fam = run({"compare", "--corpora", dir + "/a.jsonl", dir + "/b.jsonl", "--names", "x", "y",
                        "--family-level", "--smoothing", "add_lambda:0.5", "--out", "-"});
  CHECK(fam.code == cli::kExitOk);
  CHECK(fam.out.rfind("train\\eval,x,y\n", 0) == 0);
}

TEST_CASE("model and metrics subcommands") {
  const auto dir = testkit::fresh_dir("cli_model");
  testkit::write_file(dir + "/t.jsonl", traces_jsonl());
  const auto m = run({"model", "--in", dir + "/t.jsonl", "--out", "-", "--smoothing", "mle"});
  REQUIRE(m.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j.contains("transitions"));

  const auto k = run({"metrics", "--in", dir + "/t.jsonl", "--agreement", dir + "/t.jsonl", "--out", "-"});
  REQUIRE(k.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(k.out)["agreement"]["kappa"] == doctest::Approx(1.0));

  const auto p = run({"metrics", "--in", dir + "/t.jsonl", "--against", dir + "/t.jsonl", "--out", "-"});
  REQUIRE(p.code == cli::kExitOk);
}

TEST_CASE("usage errors exit 1 and show schemas") {
  const auto none = run({});
  CHECK(none.code == cli::kExitInputError);
  const auto missing = run({"segment"});
  CHECK(missing.code == cli::kExitInputError);
  CHECK(missing.err.find("answer_id") != std::string::npos);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({"segment", "--in", "/nonexistent/answers.jsonl"}).code == cli::kExitInputError);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"segment", "--in", "x", "--max-in-flight", "0"}).code == cli::kExitInputError);
}

TEST_CASE("malformed input exits 1") {
  const auto dir = testkit::fresh_dir("cli_malformed");
  testkit::write_file(dir + "/bad.jsonl", "{\"answer_id\": \n");
  const auto r = run({"segment", "--in", dir + "/bad.jsonl", "--out", "-"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find(":1:") != std::string::npos);
}

TEST_CASE("backend failure exits 2") {
  const auto dir = testkit::fresh_dir("cli_backend");
  testkit::write_file(dir + "/empty_fixture.jsonl", "");
  testkit::write_file(dir + "/questions.jsonl",
                      R"({"question_id":"q1","title":"Why did Rome fall?","community":"AskHistorians"})" "\n");
  nlohmann::json config;
  config["ontology"] = fs::absolute(testkit::data_dir() + "/ontology.json").string();
  config["backend_profiles"]["mock"]["answerer"] = {
      {"kind", "mock"}, {"name", "mock_answerer"}, {"model", "m"}, {"fixture_path", "empty_fixture.jsonl"}};
  testkit::write_file(dir + "/config.json", config.dump());
  const auto r = run({"mimic-answer", "--config", dir + "/config.json", "--in", dir + "/questions.jsonl",
                      "--out", dir + "/answers.jsonl"});
  CHECK(r.code == cli::kExitBackendFailure);
  CHECK(r.err.find("FixtureMiss") != std::string::npos);
}

TEST_CASE("mimic answers replay from fixtures") {
  const auto dir = testkit::fresh_dir("cli_mimic");
  const auto hist = find_community("AskHistorians");
  const auto req = [&] {
    auto r = build_mimic_prompt("Why did Rome fall?", hist->name, hist->description, hist->guidelines);
    r.model_name = "m";
    return r;
  }();
  testkit::write_file(dir + "/fixture.jsonl",
                      nlohmann::json{{"request_digest", request_digest(req)}, {"response_text", "Many reasons."}}.dump() + "\n");
  testkit::write_file(dir + "/questions.jsonl",
                      R"({"question_id":"q1","title":"Why did Rome fall?","community":"AskHistorians"})" "\n");
  nlohmann::json config;
  config["ontology"] = fs::absolute(testkit::data_dir() + "/ontology.json").string();
  config["backend_profiles"]["mock"]["answerer"] = {
      {"kind", "mock"}, {"name", "hist"}, {"model", "m"}, {"fixture_path", "fixture.jsonl"}};
  testkit::write_file(dir + "/config.json", config.dump());
  const auto r = run({"mimic-answer", "--config", dir + "/config.json", "--in", dir + "/questions.jsonl", "--out", "-"});
  REQUIRE(r.code == cli::kExitOk);
  const auto recs = parse_corpus(r.out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["answer_id"] == "q1_hist");
  CHECK(recs[0]["text"] == "Many reasons.");
}

TEST_CASE("trace replay is byte-identical and offline") {
  const auto dir = testkit::fresh_dir("cli_trace");
  const auto corpus = testkit::write_replay_corpus(dir);
  const auto before = network_request_count();
  for (const char* name : {"/t1.jsonl", "/t2.jsonl"}) {
    const auto r = run({"trace", "--config", corpus.config, "--in", corpus.answers, "--questions", corpus.questions,
                        "--spaces", corpus.spaces, "--out", dir + name, "--max-in-flight", "3"});
    REQUIRE(r.code == cli::kExitOk);
  }
  CHECK(testkit::read_file(dir + "/t1.jsonl") == testkit::read_file(dir + "/t2.jsonl"));
  CHECK(read_corpus(dir + "/t1.jsonl").size() == corpus.answer_count);
  CHECK(network_request_count() == before);
  CHECK_FALSE(fs::exists(dir + "/t1.jsonl.diagnostics.jsonl"));
}
