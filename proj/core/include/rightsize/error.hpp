#pragma once

#include <stdexcept>
#include <string>

namespace rightsize {

/// Stable error identities surfaced by the engine. The CLI maps
/// no_feasible_sku / no_candidate_sku to exit code 2 ("no feasible
/// recommendation"); everything else is an input or usage error (exit 1).
enum class Errc {
    malformed_catalog,
    duplicate_sku_id,
    empty_catalog,
    file_too_large,
    no_candidate_sku,
    malformed_row,
    unknown_dimension,
    empty_trace,
    grid_mismatch,
    no_feasible_sku,
    unknown_sku,
    unknown_group,
    trace_too_short,
    window_too_long,
    incomplete_vector,
    empty_group_model,
    invalid_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace rightsize
