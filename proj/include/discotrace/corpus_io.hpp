#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/rst_tree.hpp"

namespace discotrace {

using Record = nlohmann::ordered_json;

// One JSON object per line. Records carrying "schema_version" must match
// kSchemaVersion (Error(SchemaVersionMismatch)); records without it are
// accepted as external input. Blank lines are skipped. Throws
// Error(MalformedLine) with the 1-based line number and Error(Io).
std::vector<Record> read_corpus(const std::string& path);
std::vector<Record> parse_corpus(const std::string& text, const std::string& source = "<memory>");

// Writes records as compact JSON lines, keys in their stored order.
void write_corpus(const std::string& path, const std::vector<Record>& records);
std::string serialize_corpus(const std::vector<Record>& records);

// Returns rec with "schema_version" as its first key.
Record stamp_version(const Record& rec);

struct RawComment {
  std::string comment_id;
  std::string text;
  std::int64_t score = 0;
  bool top_level = true;
  Record extra = Record::object();

  static RawComment from_json(const Record& j);
  Record to_json() const;
  bool operator==(const RawComment&) const = default;
};

struct RawPost {
  std::string post_id;
  std::string title;
  std::int64_t score = 0;
  std::string created_at;
  std::string community;
  std::optional<double> profanity_prob;
  std::vector<RawComment> comments;
  Record extra = Record::object();  // unknown fields, kept for rewrite

  static RawPost from_json(const Record& j);
  Record to_json() const;
  bool operator==(const RawPost&) const = default;
};

struct Question {
  std::string question_id;  // the post id
  std::string title;
  std::string community;
  Record extra = Record::object();

  static Question from_json(const Record& j);
  Record to_json() const;
};

struct Answer {
  std::string answer_id;
  std::string question_id;
  std::string text;
  std::optional<RstTree> tree;
  Record extra = Record::object();

  static Answer from_json(const Record& j);
  Record to_json() const;
};

}  // namespace discotrace
