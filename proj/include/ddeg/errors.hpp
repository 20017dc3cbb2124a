#pragma once

#include <stdexcept>
#include <string>

namespace ddeg {

enum class ErrorKind { Structural, Domain, Parse, Resource, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Thrown when a term/bit/matrix budget is exhausted. `partial` carries a short
// description of what had been computed before the cap was hit.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& msg, std::string partial = {})
      : Error(ErrorKind::Resource, msg), partial_(std::move(partial)) {}
  const std::string& partial() const { return partial_; }

 private:
  std::string partial_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace ddeg
