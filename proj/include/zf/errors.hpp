#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph6 (or other textual) input. `offset` is the byte offset of the problem.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnsupportedSize : public Error { using Error::Error; };
class UnsupportedInput : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class InvalidSequence : public Error { using Error::Error; };
class NotForcingSet : public Error { using Error::Error; };
class ContractError : public Error { using Error::Error; };
class NumericalFailure : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };

// Raised when a proven invariant fails at runtime; always an implementation bug.
class InternalLogicError : public Error { using Error::Error; };

class NotLadderDrawable : public Error { using Error::Error; };

class ConstructionFailed : public Error {
public:
    ConstructionFailed(const std::string& what, int vertex)
        : Error(what + " (vertex " + std::to_string(vertex) + ")"), vertex_(vertex) {}
    int vertex() const noexcept { return vertex_; }

private:
    int vertex_;
};

}  // namespace zf
