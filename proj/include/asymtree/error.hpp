#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asymtree {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes (input errors -> 2, everything else -> 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `position` is a byte offset (or line number for
// line-based formats, see `line_based`).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, bool line_based = false)
      : Error(what + (line_based ? " (line " : " (at offset ") + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Structurally invalid input that parsed fine (duplicate label, undefined
// class, disconnected graph, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Cardinal evaluation left the decidable beth fragment.
class UnsupportedFragment : public Error {
 public:
  using Error::Error;
};

// Brute-force oracle refused an input above its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace asymtree
