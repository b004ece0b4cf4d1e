#include "altroute/error.hpp"

namespace altroute {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::EmptyNetwork: return "empty_network";
    case ErrorCode::UnknownVertex: return "unknown_vertex";
    case ErrorCode::NoRoute: return "no_route";
    case ErrorCode::MismatchedTrees: return "mismatched_trees";
    case ErrorCode::VersionMismatch: return "version_mismatch";
    case ErrorCode::CorruptFile: return "corrupt_file";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::UndefinedSimilarity: return "undefined_similarity";
    case ErrorCode::EmptyCohort: return "empty_cohort";
    case ErrorCode::IncompleteScores: return "incomplete_scores";
    case ErrorCode::OutOfArea: return "out_of_area";
    case ErrorCode::SameEndpoints: return "same_endpoints";
    case ErrorCode::UnknownQuery: return "unknown_query";
    case ErrorCode::UnknownEngine: return "unknown_engine";
  }
  return "unknown";
}

}  // namespace altroute
