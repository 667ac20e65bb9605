#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace halving {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Kernel preconditions.
class CollinearTriple : public Error {
public:
    using Error::Error;
};

class CoincidentPair : public Error {
public:
    using Error::Error;
};

// Point sets.
class DuplicatePoints : public Error {
public:
    using Error::Error;
};

class NotGeneralPosition : public Error {
public:
    using Error::Error;
};

class GenerationExhausted : public Error {
public:
    using Error::Error;
};

class ConstructionFailed : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Malformed input document. Line and column are 1-based; column 0 means
/// the whole line.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A token that is not an integer, fraction or decimal literal.
class NonRationalNumber : public Error {
public:
    using Error::Error;
};

// Census.
class EvenSize : public Error {
public:
    using Error::Error;
};

/// The brute-force and sweep engines (or the three sweep visits of one
/// circle) disagree. Always a bug.
class EngineDisagreement : public Error {
public:
    using Error::Error;
};

// Deformation paths. Every subclass maps to the "inadmissible path" exit code.
class InadmissiblePath : public Error {
public:
    using Error::Error;
};

class SimultaneousCrossing : public InadmissiblePath {
public:
    using InadmissiblePath::InadmissiblePath;
};

class TangentialContact : public InadmissiblePath {
public:
    using InadmissiblePath::InadmissiblePath;
};

}  // namespace halving
