#pragma once

#include <stdexcept>
#include <string>

namespace autocast {

/// Malformed or invalid user input (CSV rows, config keys, spec files).
/// The CLI maps this to exit code 1; every other exception maps to 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace autocast
