#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace discotrace {

enum class ErrorCode {
  // rst / config documents
  MalformedDocument,
  UnknownRelation,
  UnknownNuclearity,
  NonBinaryNode,
  InvalidConfig,
  InvalidArgument,
  // ontology
  DuplicateActId,
  UnknownFamily,
  MissingNoneSentinel,
  EmptyFamily,
  UnknownActId,
  // prompts and responses
  EmptySegment,
  UnparsableResponse,
  InvalidActId,
  IndexOutOfRange,
  MixedForm,
  UnknownInterpretationId,
  // backends
  TransportError,
  FixtureMiss,
  AuthError,
  EmbeddingDimensionMismatch,
  // statistics
  EmptyCorpus,
  ZeroProbabilityTransition,
  UnknownToken,
  UnknownSpaceReference,
  QuestionMismatch,
  LengthMismatch,
  // corpus
  UnknownCommunity,
  InsufficientPosts,
  SchemaVersionMismatch,
  MalformedLine,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Failures that originate in a chat/embedding service rather than in the input data.
  bool is_backend_failure() const noexcept {
    return code_ == ErrorCode::TransportError || code_ == ErrorCode::FixtureMiss ||
           code_ == ErrorCode::AuthError;
  }

 private:
  ErrorCode code_;
};

}  // namespace discotrace
