#pragma once

#include <stdexcept>
#include <string>

namespace snrshrink {

// Bad input: unreadable files, failed validation, out-of-domain arguments.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace snrshrink
