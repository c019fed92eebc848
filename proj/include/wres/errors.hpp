#pragma once

#include <stdexcept>
#include <string>

namespace wres {

// Error taxonomy used across the library.  The CLI maps these onto process
// exit codes: parse -> 1, structural/contract/input -> 2, diagnostic and
// failed drop verification -> 3, resource -> 4.
enum class ErrorKind {
  Parse,       // malformed textual input
  Structural,  // ill-formed values (ambient mismatch, length mismatch, ...)
  Contract,    // precondition violation on an operation
  Input,       // mathematically inadmissible input (zero ideal, non-reduced)
  Diagnostic,  // violated internal invariant of the theory; signals a bug
               // or a violated inductive hypothesis, never user error
  Resource     // iteration/round caps exhausted
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  // `position` is a 0-based character offset into the offending text, or -1.
  ParseError(const std::string& what, long position = -1)
      : Error(ErrorKind::Parse, position >= 0
                  ? what + " (at position " + std::to_string(position) + ")"
                  : what),
        position_(position) {}
  long position() const { return position_; }

 private:
  long position_;
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what)
      : Error(ErrorKind::Structural, what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorKind::Contract, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ErrorKind::Input, what) {}
};

class DiagnosticError : public Error {
 public:
  explicit DiagnosticError(const std::string& what)
      : Error(ErrorKind::Diagnostic, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what, std::string partial = "")
      : Error(ErrorKind::Resource, what), partial_(std::move(partial)) {}
  // Human-readable rendering of whatever partial result was available
  // (trace fragment, partial tree); never empty-handed on purpose.
  const std::string& partial() const { return partial_; }

 private:
  std::string partial_;
};

}  // namespace wres
