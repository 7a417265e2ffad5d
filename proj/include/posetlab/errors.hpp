#pragma once

#include <stdexcept>
#include <string>

namespace posetlab {

// Domain errors carry a short code naming the violated precondition; the CLI
// maps them to exit code 1. Parse errors carry a line number and map to exit
// code 2.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string code, const std::string& detail)
      : std::runtime_error(detail.empty() ? code : code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define POSETLAB_ERROR(name)                                              \
  class name : public DomainError {                                      \
  public:                                                                 \
    explicit name(const std::string& detail = "") : DomainError(#name, detail) {} \
  }

POSETLAB_ERROR(CycleDetected);
POSETLAB_ERROR(DuplicateLabel);
POSETLAB_ERROR(UnknownLabel);
POSETLAB_ERROR(ShapeMismatch);
POSETLAB_ERROR(NotInterval);
POSETLAB_ERROR(NotInteriorSystem);
POSETLAB_ERROR(NotAligned);
POSETLAB_ERROR(NotExtremal);
POSETLAB_ERROR(SegmentTooShort);
POSETLAB_ERROR(HypothesisUnmet);
POSETLAB_ERROR(InvalidLength);
POSETLAB_ERROR(UnorientedLine);
POSETLAB_ERROR(NotComparable);
POSETLAB_ERROR(Disconnected);
POSETLAB_ERROR(NotTree);
POSETLAB_ERROR(MaxLenExceeded);
POSETLAB_ERROR(NonCommutativeModule);
POSETLAB_ERROR(MixedContext);
POSETLAB_ERROR(InternalCheckFailed);
POSETLAB_ERROR(NoClosedForm);

#undef POSETLAB_ERROR

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace posetlab
