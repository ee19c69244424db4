#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negprob {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (shape, range, normalization).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Scenario or request exceeds the supported size caps.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. line() is 1-based; 0 means "whole document".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Fixed-width fast path ran out of range; callers retry with big integers.
class ArithmeticOverflow : public Error {
 public:
  ArithmeticOverflow() : Error("int64 overflow in exact arithmetic") {}
};

}  // namespace negprob
