#include "mmaf/error.hpp"

namespace mmaf {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::empty_pair_set: return "empty-pair-set";
    case ErrorKind::non_multiple_lag: return "non-multiple-lag";
    case ErrorKind::estimation_failure: return "estimation-failure";
    case ErrorKind::constraint_violation: return "constraint-violation";
    case ErrorKind::cone_out_of_bounds: return "cone-out-of-bounds";
    case ErrorKind::no_feasible_a_t: return "no-feasible-a_t";
    case ErrorKind::sampling_failure: return "sampling-failure";
    case ErrorKind::memory_budget: return "memory-budget";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::zero_denominator: return "zero-denominator";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::empty_training_set: return "empty-training-set";
    case ErrorKind::empty_grid: return "empty-grid";
    case ErrorKind::config_parse: return "config-parse";
    case ErrorKind::missing_input: return "missing-input";
    case ErrorKind::io_error: return "io-error";
    }
    return "unknown";
}

}  // namespace mmaf
