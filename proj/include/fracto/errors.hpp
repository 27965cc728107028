#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracto {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// convexity-core
struct MissingEntry : Error { using Error::Error; };
struct ExtensivityViolation : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct SpaceTooLarge : Error { using Error::Error; };
struct SpaceMismatch : Error { using Error::Error; };
struct EmptyList : Error { using Error::Error; };

// fracto-algebra
struct UnknownConvexityId : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };

// independence
struct PreconditionNotChecked : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };

// model-zline
struct NotAPermutation : Error { using Error::Error; };
struct WindowTooSmall : Error { using Error::Error; };

// model-sphere
struct UnknownCenter : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct EmptySubspace : Error { using Error::Error; };

// expression parser
struct SyntaxError : Error {
  SyntaxError(std::size_t offset, std::string expected)
      : Error("syntax error at offset " + std::to_string(offset) +
              ", expected " + expected),
        offset(offset),
        expected(std::move(expected)) {}
  std::size_t offset;
  std::string expected;
};
struct ArityError : Error { using Error::Error; };

}  // namespace fracto
