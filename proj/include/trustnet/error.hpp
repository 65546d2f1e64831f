#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trustnet {

enum class ErrorCode {
  UnknownTopic,
  UnknownReader,
  RoundNotOpen,
  RoundNotFinished,
  RoundAlreadyOpen,
  UnknownSwitch,
  ForeignInstall,
  UnknownController,
  MissingAssignments,
  DuplicateRating,
  MissingRating,
  MissingAggregates,
  MissingReports,
  UnknownScenario,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view toString(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Input problems (bad config, unknown builtin) as opposed to runtime faults.
  bool isValidation() const noexcept {
    return code_ == ErrorCode::ValidationError || code_ == ErrorCode::ParseError ||
           code_ == ErrorCode::UnknownScenario;
  }

 private:
  ErrorCode code_;
};

}  // namespace trustnet
