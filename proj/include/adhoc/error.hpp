#pragma once

#include <stdexcept>

namespace adhoc {

// A precondition on an operation's arguments does not hold.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace adhoc
