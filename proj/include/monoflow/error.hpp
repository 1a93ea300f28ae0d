#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoflow {

/// A value lies outside the lattice it was handed to.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation needs data that was not configured (e.g. a key universe).
class ConfigurationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The lattice does not provide the requested operation (e.g. meet).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Static semantic errors in a parsed program (undeclared procedures,
/// duplicate declarations, scoping violations).
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WellFormednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A call would push a call string past the configured bound k.
class ContextDepthExceeded : public std::runtime_error {
 public:
  ContextDepthExceeded(std::string call_site, std::string context,
                       std::size_t bound)
      : std::runtime_error("call at " + call_site + " in context " + context +
                           " exceeds context depth " + std::to_string(bound)),
        call_site_(std::move(call_site)),
        context_(std::move(context)) {}

  const std::string& call_site() const { return call_site_; }
  const std::string& context() const { return context_; }

 private:
  std::string call_site_;
  std::string context_;
};

}  // namespace monoflow
