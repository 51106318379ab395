#pragma once

#include <stdexcept>
#include <string>

namespace ebbi {

// Thrown for inputs that violate an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a coincidence selection leaves no pairs.
class EmptySelection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ebbi
