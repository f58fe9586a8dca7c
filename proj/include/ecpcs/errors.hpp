#pragma once

#include <stdexcept>
#include <string>

namespace ecpcs {

// Numerical routine failed to converge.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, long iterations)
        : std::runtime_error(what), iterations_(iterations) {}

    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

// Malformed input file; row/column are 1-based, 0 = not applicable.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long row = 0, long column = 0)
        : std::runtime_error(what), row_(row), column_(column) {}

    long row() const noexcept { return row_; }
    long column() const noexcept { return column_; }

private:
    long row_;
    long column_;
};

}  // namespace ecpcs
