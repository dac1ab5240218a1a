#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "maa/diagnostics.hpp"

namespace maa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NondeterminismError : public Error {
 public:
  NondeterminismError(const std::string& what, std::vector<SourcePos> competing)
      : Error(what), competing_(std::move(competing)) {}
  const std::vector<SourcePos>& competing() const { return competing_; }

 private:
  std::vector<SourcePos> competing_;
};

class TickOverrun : public Error {
 public:
  using Error::Error;
};

class InterfaceMismatch : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ProfileViolation : public Error {
 public:
  ProfileViolation(const std::string& what, std::vector<Diagnostic> diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Raised while rendering templates: unknown calculator, template or path.
class TemplateError : public Error {
 public:
  using Error::Error;
};

}  // namespace maa
