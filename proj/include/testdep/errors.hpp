#pragma once

#include <stdexcept>
#include <string>

namespace testdep {

// Base class for everything this library throws on bad input or a broken
// precondition. Catching testdep::Error at the CLI boundary maps to exit 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- suite / manifest parsing -------------------------------------------

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateTestName : public Error {
 public:
  explicit DuplicateTestName(const std::string& name)
      : Error("duplicate test name: " + name) {}
};

class UnknownAction : public Error {
 public:
  UnknownAction(const std::string& action, std::size_t line)
      : Error("line " + std::to_string(line) + ": unknown action: " + action) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message)
      : Error("manifest schema: " + message) {}
};

class PlaceholderIndexOutOfRange : public Error {
 public:
  PlaceholderIndexOutOfRange(const std::string& tmpl, int index, std::size_t arity)
      : Error("template \"" + tmpl + "\" references {arg" + std::to_string(index) +
              "} but only " + std::to_string(arity) + " argument(s) are available") {}
};

// --- execution ------------------------------------------------------------

class UnknownTestName : public Error {
 public:
  explicit UnknownTestName(const std::string& name)
      : Error("schedule references unknown test: " + name) {}
};

class BaselineFailure : public Error {
 public:
  explicit BaselineFailure(const std::string& test)
      : Error("test fails in original order: " + test), test_(test) {}
  const std::string& test() const { return test_; }

 private:
  std::string test_;
};

// --- graph ------------------------------------------------------------

class GraphFormatError : public Error {
 public:
  explicit GraphFormatError(const std::string& message)
      : Error("graph document: " + message) {}
};

// --- filtering --------------------------------------------------------

class UnknownValue : public Error {
 public:
  explicit UnknownValue(const std::string& value)
      : Error("value not present in the frequency report: " + value) {}
};

// --- validation -------------------------------------------------------

class EmptyWorklist : public Error {
 public:
  EmptyWorklist() : Error("no pending candidate edge to select") {}
};

class InversionImpossible : public Error {
 public:
  InversionImpossible(const std::string& dependent, const std::string& prerequisite)
      : Error("cannot invert " + dependent + " -> " + prerequisite +
              ": the prerequisite stays transitively required") {}
};

class IterationBudgetExceeded : public Error {
 public:
  explicit IterationBudgetExceeded(std::size_t budget)
      : Error("validation exceeded its iteration budget of " +
              std::to_string(budget) + " steps") {}
};

// --- scheduling ---------------------------------------------------------

class GraphNotValidated : public Error {
 public:
  explicit GraphNotValidated(const std::string& dependent, const std::string& prerequisite)
      : Error("graph still has a candidate edge: " + dependent + " -> " + prerequisite) {}
};

class EmptyScheduleSet : public Error {
 public:
  EmptyScheduleSet() : Error("schedule set has no schedules") {}
};

class SoundnessViolation : public Error {
 public:
  SoundnessViolation(std::size_t schedule_index, const std::string& test)
      : Error("schedule #" + std::to_string(schedule_index) + " fails at test " + test),
        schedule_index_(schedule_index),
        test_(test) {}
  std::size_t schedule_index() const { return schedule_index_; }
  const std::string& test() const { return test_; }

 private:
  std::size_t schedule_index_;
  std::string test_;
};

// --- CLI ---------------------------------------------------------------

class NonInteractiveWithoutAssumptions : public Error {
 public:
  NonInteractiveWithoutAssumptions()
      : Error("value confirmation needed but stdin is not interactive; "
              "pass --assume-yes/--assume-no") {}
  explicit NonInteractiveWithoutAssumptions(const std::string& value)
      : Error("value \"" + value + "\" needs confirmation but no prompt is available; "
              "pass --assume-yes/--assume-no") {}
};

}  // namespace testdep
