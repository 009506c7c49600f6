#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phigap {

/// Bad user input: malformed quiver text, unknown vertex, violated
/// transform precondition. The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class parse_error : public input_error {
public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : input_error(std::to_string(line) + ":" + std::to_string(column) +
                    ": " + what),
        message_(what), line_(line), column_(column) {}

  /// The message without the position prefix.
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// An internal consistency check failed (engine disagreement, a theorem that
/// must hold did not). Always a bug; the CLI maps this to exit code 3.
class invariant_violation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace phigap
