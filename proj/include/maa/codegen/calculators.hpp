#pragma once

// Calculators shared by every backend. Each renders through the backend's
// dialect, so one calculator serves Python, WS1S and DOT alike.

#include <optional>
#include <string>
#include <vector>

#include "maa/codegen/template.hpp"

namespace maa::codegen {

class Dialect {
 public:
  virtual ~Dialect() = default;
  /// A message value on `port`, e.g. `MotorCmd.STOP`, `rMotor_STOP`, `STOP`.
  virtual std::string literal(const std::string& port, const Node& type, const Node& value) const = 0;
  /// A state of `component`, e.g. `BumpControlState.idle`.
  virtual std::string state(const std::string& component, const std::string& state) const = 0;
  /// `port` carries the already rendered `literal`.
  virtual std::string triggerTest(const std::string& port, const std::string& literal) const = 0;
  virtual std::string expr(const Node& e) const = 0;
  /// Joins the state test, trigger tests and guard of a transition.
  virtual std::string condition(const std::string& stateTest, const std::vector<std::string>& triggers,
                                const std::optional<std::string>& guard) const = 0;
  /// The state test of a transition leaving `state`.
  virtual std::string stateTest(const std::string& component, const std::string& state) const = 0;
};

//   notLast          whether the innermost loop has more elements
//   guardCalculator  enabling condition of a transition node
//   initialState     {state, outputs: [{port, literal}], silent: [{port, literal}]}
//                    for a component node; silent lists every value of each
//                    out-port without an initial message
//   messageLiteral   a {port, type, value} node as a literal
std::vector<Calculator> sharedCalculators();

}  // namespace maa::codegen
