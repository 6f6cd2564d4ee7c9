#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace corrcolor {

using VertexId = std::uint32_t;
using ColorId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr ColorId kNoColor = std::numeric_limits<ColorId>::max();

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad ids, self-loops, schema problems).
class InputError : public Error {
public:
    using Error::Error;
};

/// Well-formed input on which the requested operation is undefined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A search exhausted its node budget before reaching an answer.
class BudgetExceeded : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace corrcolor
