#include "discotrace/corpus_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "discotrace/error.hpp"
#include "discotrace/schema.hpp"

namespace discotrace {

namespace {

Record unknown_fields(const Record& j, std::initializer_list<std::string_view> known) {
  Record extra = Record::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool is_known = it.key() == "schema_version";
    for (auto k : known) is_known = is_known || it.key() == k;
    if (!is_known) extra[it.key()] = it.value();
  }
  return extra;
}

void append_extra(Record& out, const Record& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
}

template <typename T>
T required(const Record& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::MalformedDocument, std::string("record lacks \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::MalformedDocument, std::string("field \"") + key + "\" has the wrong type");
  }
}

std::string id_string(const Record& j, const char* key) {
  if (j.contains(key) && j.at(key).is_number_integer()) return std::to_string(j.at(key).get<std::int64_t>());
  return required<std::string>(j, key);
}

}  // namespace

std::vector<Record> parse_corpus(const std::string& text, const std::string& source) {
  std::vector<Record> records;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Record rec;
    try {
      rec = Record::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::MalformedLine,
                  source + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object()) {
      throw Error(ErrorCode::MalformedLine,
                  source + ":" + std::to_string(line_no) + ": expected a JSON object");
    }
    if (rec.contains("schema_version")) {
      const auto& v = rec["schema_version"];
      if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
        throw Error(ErrorCode::SchemaVersionMismatch,
                    source + ":" + std::to_string(line_no) + ": schema_version " + v.dump() +
                        ", expected " + std::to_string(kSchemaVersion));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<Record> read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path);
}

std::string serialize_corpus(const std::vector<Record>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
    out += '\n';
  }
  return out;
}

void write_corpus(const std::string& path, const std::vector<Record>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << serialize_corpus(records);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

Record stamp_version(const Record& rec) {
  Record out;
  out["schema_version"] = kSchemaVersion;
  for (auto it = rec.begin(); it != rec.end(); ++it) {
    if (it.key() != "schema_version") out[it.key()] = it.value();
  }
  return out;
}

RawComment RawComment::from_json(const Record& j) {
  RawComment c;
  c.comment_id = j.contains("comment_id") ? id_string(j, "comment_id") : std::string();
  c.text = j.value("text", std::string());
  c.score = required<std::int64_t>(j, "score");
  c.top_level = j.value("top_level", true);
  c.extra = unknown_fields(j, {"comment_id", "text", "score", "top_level"});
  return c;
}

Record RawComment::to_json() const {
  Record j;
  j["comment_id"] = comment_id;
  j["text"] = text;
  j["score"] = score;
  j["top_level"] = top_level;
  append_extra(j, extra);
  return j;
}

RawPost RawPost::from_json(const Record& j) {
  RawPost p;
  p.post_id = id_string(j, "post_id");
  p.title = j.contains("title") && j["title"].is_string() ? j["title"].get<std::string>() : "";
  p.score = required<std::int64_t>(j, "score");
  p.created_at = j.contains("created_at") ? (j["created_at"].is_string()
                                                 ? j["created_at"].get<std::string>()
                                                 : j["created_at"].dump())
                                          : std::string();
  p.community = j.value("community", std::string());
  if (j.contains("profanity_prob") && !j["profanity_prob"].is_null()) {
    p.profanity_prob = required<double>(j, "profanity_prob");
  }
  if (j.contains("comments")) {
    if (!j["comments"].is_array()) throw Error(ErrorCode::MalformedDocument, "comments must be an array");
    for (const auto& c : j["comments"]) p.comments.push_back(RawComment::from_json(c));
  }
  p.extra = unknown_fields(
      j, {"post_id", "title", "score", "created_at", "community", "profanity_prob", "comments"});
  return p;
}

Record RawPost::to_json() const {
  Record j;
  j["post_id"] = post_id;
  j["title"] = title;
  j["score"] = score;
  j["created_at"] = created_at;
  j["community"] = community;
  j["profanity_prob"] = profanity_prob ? Record(*profanity_prob) : Record(nullptr);
  j["comments"] = Record::array();
  for (const auto& c : comments) j["comments"].push_back(c.to_json());
  append_extra(j, extra);
  return j;
}

Question Question::from_json(const Record& j) {
  Question q;
  q.question_id = j.contains("question_id") ? id_string(j, "question_id") : id_string(j, "post_id");
  q.title = required<std::string>(j, "title");
  q.community = j.value("community", std::string());
  q.extra = unknown_fields(j, {"question_id", "post_id", "title", "community"});
  return q;
}

Record Question::to_json() const {
  Record j;
  j["question_id"] = question_id;
  j["title"] = title;
  j["community"] = community;
  append_extra(j, extra);
  return j;
}

Answer Answer::from_json(const Record& j) {
  Answer a;
  a.answer_id = id_string(j, "answer_id");
  a.question_id = id_string(j, "question_id");
  a.text = j.value("text", std::string());
  if (j.contains("rst_tree") && !j["rst_tree"].is_null()) {
    a.tree = parse_rst_tree(nlohmann::json::parse(j["rst_tree"].dump()));
  }
  a.extra = unknown_fields(j, {"answer_id", "question_id", "text", "rst_tree"});
  return a;
}

Record Answer::to_json() const {
  Record j;
  j["answer_id"] = answer_id;
  j["question_id"] = question_id;
  j["text"] = text;
  j["rst_tree"] = tree ? discotrace::to_json(*tree) : Record(nullptr);
  append_extra(j, extra);
  return j;
}

}  // namespace discotrace
