#include "trustnet/error.hpp"

namespace trustnet {

std::string_view toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownTopic: return "UnknownTopic";
    case ErrorCode::UnknownReader: return "UnknownReader";
    case ErrorCode::RoundNotOpen: return "RoundNotOpen";
    case ErrorCode::RoundNotFinished: return "RoundNotFinished";
    case ErrorCode::RoundAlreadyOpen: return "RoundAlreadyOpen";
    case ErrorCode::UnknownSwitch: return "UnknownSwitch";
    case ErrorCode::ForeignInstall: return "ForeignInstall";
    case ErrorCode::UnknownController: return "UnknownController";
    case ErrorCode::MissingAssignments: return "MissingAssignments";
    case ErrorCode::DuplicateRating: return "DuplicateRating";
    case ErrorCode::MissingRating: return "MissingRating";
    case ErrorCode::MissingAggregates: return "MissingAggregates";
    case ErrorCode::MissingReports: return "MissingReports";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace trustnet
