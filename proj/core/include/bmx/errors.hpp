#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bmx {

// Caller violated an operation's precondition (mismatched dimensions, bad
// arguments, a non-subset passed to delete, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input exceeds an enumeration or search bound the library enforces.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `offset` is the byte offset of the offending
// character within the parsed string or stream.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        message_(what),
        offset_(offset) {}

  /// The diagnostic without the offset suffix.
  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

}  // namespace bmx
