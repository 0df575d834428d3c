#pragma once

#include <stdexcept>
#include <string>

namespace ldpcenc {

// API misuse: bad argument shapes, length mismatches, violated preconditions.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input files (alist / dense text / schedule binary).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
    FormatError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

// Internal structural guarantees broken (usually an upstream bug or an
// input outside the supported regime). Carries a diagnostic message.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ldpcenc
