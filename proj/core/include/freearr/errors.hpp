#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freearr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All three coefficients of a linear form were zero.
class ZeroForm : public Error {
public:
    ZeroForm() : Error("linear form (0, 0, 0) does not define a line") {}
};

/// Two entries of a line list describe the same projective line.
class DuplicateLine : public Error {
public:
    DuplicateLine(std::size_t first, std::size_t second)
        : Error("lines " + std::to_string(first) + " and " + std::to_string(second) +
                " are the same projective line"),
          first_(first), second_(second) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// Derivation degrees do not add up to n - 1.
class DegreeMismatch : public Error {
public:
    using Error::Error;
};

/// No spectral gap separates the numerical kernel from the rest of the spectrum.
class IllConditionedKernel : public Error {
public:
    IllConditionedKernel(const std::string& what, double gap) : Error(what), gap_(gap) {}
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

/// The arrangement has no integer candidate exponents.
class NoCandidateExponents : public Error {
public:
    using Error::Error;
};

/// A mathematical identity that must hold failed; always a bug, never a user error.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

/// Malformed input file or value.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace freearr
