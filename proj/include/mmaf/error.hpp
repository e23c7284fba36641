#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmaf {

enum class ErrorKind {
    invalid_parameter,
    insufficient_data,
    empty_pair_set,
    non_multiple_lag,
    estimation_failure,
    constraint_violation,
    cone_out_of_bounds,
    no_feasible_a_t,
    sampling_failure,
    memory_budget,
    length_mismatch,
    zero_denominator,
    domain_error,
    empty_training_set,
    empty_grid,
    config_parse,
    missing_input,
    io_error,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type so the CLI can map it
// to a stable machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool ok, ErrorKind kind, const char* what)
{
    if (!ok) [[unlikely]]
        throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what)
{
    if (!ok) [[unlikely]]
        throw Error(kind, what);
}

}  // namespace mmaf
