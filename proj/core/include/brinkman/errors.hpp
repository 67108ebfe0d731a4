#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brinkman {

/// Permeability entries that are non-positive or non-finite.
class InvalidFieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or mis-sized input file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero permeability where a drag coefficient 1/k is required.
class SingularDragError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// LU factorization hit a zero pivot.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot, const std::string& what)
        : std::runtime_error(what), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// Dense decompositions refuse matrices above their size limit.
class UnsupportedSizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace brinkman
