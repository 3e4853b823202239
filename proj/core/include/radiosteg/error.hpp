#pragma once

#include <stdexcept>

namespace radiosteg {

// Raised for any argument outside an operation's documented domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace radiosteg
