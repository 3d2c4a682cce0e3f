#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

/// A request exceeds an explicit computational limit.
class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input, with the 1-based line it was found on (0 when unknown).
class context_error : public std::runtime_error {
public:
    context_error(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace qtorus
