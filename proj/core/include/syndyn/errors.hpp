#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace syndyn {

/// Raised when an integration or quadrature cannot meet its tolerance, or a
/// computed quantity is not finite.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pauli string parse failure; `position` is the 0-based offending character.
struct PauliParseError : std::invalid_argument {
    PauliParseError(const std::string &text, size_t position)
        : std::invalid_argument(
              "invalid Pauli character '" + std::string(1, position < text.size() ? text[position] : '?') +
              "' at position " + std::to_string(position) + " in \"" + text + "\""),
          position(position) {
    }
    size_t position;
};

/// Short %g rendering for messages.
inline std::string num_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace syndyn
