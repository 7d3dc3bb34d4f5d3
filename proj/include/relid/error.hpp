#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relid {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed input text: algebra files, identities, terms, relation literals.
  class ParseError : public Error {
   public:
    ParseError(std::string const& message, std::size_t position)
        : Error("syntax error at position " + std::to_string(position) + ": "
                + message),
          position_(position) {}

    std::size_t position() const noexcept {
      return position_;
    }

   private:
    std::size_t position_;
  };

  // Structurally valid input that violates a domain invariant.
  class InvalidAlgebra : public Error {
   public:
    using Error::Error;
  };

  class TermError : public Error {
   public:
    using Error::Error;
  };

  class SizeMismatch : public Error {
   public:
    using Error::Error;
  };

  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // A witness step failed re-validation. Signals a bug, never bad input.
  class InternalError : public Error {
   public:
    using Error::Error;
  };

  class CapExceeded : public Error {
   public:
    CapExceeded(std::string which, std::size_t limit, std::size_t reached)
        : Error(which + " cap exceeded (limit " + std::to_string(limit)
                + ", reached " + std::to_string(reached) + ")"),
          which_(std::move(which)),
          limit_(limit),
          reached_(reached) {}

    std::string const& which() const noexcept {
      return which_;
    }
    std::size_t limit() const noexcept {
      return limit_;
    }
    std::size_t reached() const noexcept {
      return reached_;
    }

   private:
    std::string which_;
    std::size_t limit_;
    std::size_t reached_;
  };

}  // namespace relid
