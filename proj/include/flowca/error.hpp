#pragma once

#include <stdexcept>
#include <string>

namespace flowca {

enum class errc {
    dimension_too_small,
    shape_mismatch,
    arity_mismatch,
    bad_length,
    bad_digit,
    bad_format,
    inadmissible_direction,
    invalid_spec,
    wrong_kind,
    window_too_large,
    budget_exceeded,
    not_a_particle,
};

const char* to_string(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace flowca
