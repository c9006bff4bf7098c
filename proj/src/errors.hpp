#pragma once

#include <stdexcept>
#include <string>

namespace svbench {

// Error families map 1:1 onto CLI exit codes and C API status values.
enum class ErrorFamily {
  config = 1,
  ingest = 2,
  compute = 3,
};

enum class ErrorCode {
  // config
  config_parse,
  missing_file,
  bad_schema,
  bad_argument,
  unknown_benchmark,
  unit_mismatch,
  missing_year,
  unexpected_year,
  // ingest
  missing_column,
  bad_category_code,
  bad_row_value,
  duplicate_respondent,
  empty_dataset,
  // compute
  missing_weight_variable,
  insufficient_cells,
  empty_target_cell,
  infeasible_target,
  empty_denominator,
  no_eligible_respondents,
  empty_pool,
  pool_too_small,
  size_exceeds_population,
};

constexpr ErrorFamily family_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::config_parse:
    case ErrorCode::missing_file:
    case ErrorCode::bad_schema:
    case ErrorCode::bad_argument:
    case ErrorCode::unknown_benchmark:
    case ErrorCode::unit_mismatch:
    case ErrorCode::missing_year:
    case ErrorCode::unexpected_year:
      return ErrorFamily::config;
    case ErrorCode::missing_column:
    case ErrorCode::bad_category_code:
    case ErrorCode::bad_row_value:
    case ErrorCode::duplicate_respondent:
    case ErrorCode::empty_dataset:
      return ErrorFamily::ingest;
    default:
      return ErrorFamily::compute;
  }
}

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }
  ErrorFamily family() const { return family_of(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_code_name(code)) + ": " + message);
}

}  // namespace svbench
