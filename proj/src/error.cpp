#include "discotrace/error.hpp"

namespace discotrace {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::UnknownNuclearity: return "UnknownNuclearity";
    case ErrorCode::NonBinaryNode: return "NonBinaryNode";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateActId: return "DuplicateActId";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::MissingNoneSentinel: return "MissingNoneSentinel";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::UnknownActId: return "UnknownActId";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::UnparsableResponse: return "UnparsableResponse";
    case ErrorCode::InvalidActId: return "InvalidActId";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MixedForm: return "MixedForm";
    case ErrorCode::UnknownInterpretationId: return "UnknownInterpretationId";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::FixtureMiss: return "FixtureMiss";
    case ErrorCode::AuthError: return "AuthError";
    case ErrorCode::EmbeddingDimensionMismatch: return "EmbeddingDimensionMismatch";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::ZeroProbabilityTransition: return "ZeroProbabilityTransition";
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::UnknownSpaceReference: return "UnknownSpaceReference";
    case ErrorCode::QuestionMismatch: return "QuestionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnknownCommunity: return "UnknownCommunity";
    case ErrorCode::InsufficientPosts: return "InsufficientPosts";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace discotrace
