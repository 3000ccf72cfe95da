#pragma once

#include <stdexcept>
#include <string>

namespace hermitia {

// norm delta, out-of-scope (d, s), malformed input
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// two independent computations disagreed
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw ConsistencyError(what);
}

}  // namespace hermitia
