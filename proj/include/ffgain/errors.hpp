#pragma once

#include <stdexcept>
#include <string>

namespace ffgain {

// Invalid user input: bad arguments, malformed files, inconsistent
// configuration. CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// A computation could not produce a meaningful result (rank-deficient fit,
// under-resolved quadrature, ...). CLI maps this to exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// Malformed text input; carries the 1-based line number when known.
class parse_error : public validation_error {
public:
    parse_error(const std::string& what_arg, long line_no = 0)
        : validation_error(line_no > 0
              ? "line " + std::to_string(line_no) + ": " + what_arg
              : what_arg),
          line(line_no) {}

    long line = 0;
};

}  // namespace ffgain
