#pragma once

#include <stdexcept>
#include <string>

namespace hsshmm {

// Base of every error raised by the library. Callers that only care about
// "bad input" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class EmptySequenceError : public Error { using Error::Error; };
class StochasticityError : public Error { using Error::Error; };
class InvalidModelError : public Error { using Error::Error; };

class DuplicateMetastateError : public Error { using Error::Error; };
class UnknownMetastateError : public Error { using Error::Error; };
class ProtectedMetastateError : public Error { using Error::Error; };

class MissingModelError : public Error {
 public:
  explicit MissingModelError(std::string id)
      : Error("no trained model for metastate '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class TimestampOrderError : public Error { using Error::Error; };
class TimelineError : public Error { using Error::Error; };
class TemplateError : public Error { using Error::Error; };

// Malformed files (CSV, JSON). `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hsshmm
