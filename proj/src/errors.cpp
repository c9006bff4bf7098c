#include "errors.hpp"

namespace svbench {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::config_parse: return "ConfigParse";
    case ErrorCode::missing_file: return "MissingFile";
    case ErrorCode::bad_schema: return "BadSchema";
    case ErrorCode::bad_argument: return "BadArgument";
    case ErrorCode::unknown_benchmark: return "UnknownBenchmark";
    case ErrorCode::unit_mismatch: return "UnitMismatch";
    case ErrorCode::missing_year: return "MissingYear";
    case ErrorCode::unexpected_year: return "UnexpectedYear";
    case ErrorCode::missing_column: return "MissingColumn";
    case ErrorCode::bad_category_code: return "BadCategoryCode";
    case ErrorCode::bad_row_value: return "BadRowValue";
    case ErrorCode::duplicate_respondent: return "DuplicateRespondent";
    case ErrorCode::empty_dataset: return "EmptyDataset";
    case ErrorCode::missing_weight_variable: return "MissingWeightVariable";
    case ErrorCode::insufficient_cells: return "InsufficientCells";
    case ErrorCode::empty_target_cell: return "EmptyTargetCell";
    case ErrorCode::infeasible_target: return "InfeasibleTarget";
    case ErrorCode::empty_denominator: return "EmptyDenominator";
    case ErrorCode::no_eligible_respondents: return "NoEligibleRespondents";
    case ErrorCode::empty_pool: return "EmptyPool";
    case ErrorCode::pool_too_small: return "PoolTooSmall";
    case ErrorCode::size_exceeds_population: return "SizeExceedsPopulation";
  }
  return "UnknownError";
}

}  // namespace svbench
