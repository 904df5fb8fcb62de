#pragma once

#include <stdexcept>
#include <string>

namespace mlab {

// Invalid input text (model files, rational literals). Carries the position
// when the underlying reader can supply one; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(message), line(line), column(column) {}
  int line;
  int column;
};

// A structural invariant of a domain object does not hold.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A strategy has no holdings at an ancestor of the requested node.
struct MissingHoldings : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every state of the actual family is polar.
struct EmptySupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Conditional expectation requested at a node of measure zero.
struct ZeroMassNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedProgram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Oracle instance exceeds the desk-scale cap.
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pricing requested where no risk-neutral measure exists.
struct NoMeasure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hedging cost has no finite minimum; the market itself is inconsistent.
struct UnboundedBelow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A claim cannot be replicated; price by superhedge instead.
struct NotReplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mlab
