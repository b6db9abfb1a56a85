#pragma once

#include <stdexcept>
#include <string>

namespace lintrees {

// Thrown when a theorem-backed assertion fails; maps to CLI exit code 3.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationResult {
    bool ok = false;
    std::string reason;

    explicit operator bool() const { return ok; }

    static ValidationResult pass() { return {true, {}}; }
    static ValidationResult fail(std::string why) { return {false, std::move(why)}; }
};

}  // namespace lintrees
