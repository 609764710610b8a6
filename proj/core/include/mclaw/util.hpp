#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mclaw {

/// Raised when a chart point or metric evaluation is invalid (degenerate
/// tensor, point outside the configured time interval, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the time integrator has to give up (non-finite state, time-step
/// underflow). Carries the step index at which the abort happened.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, long step) : std::runtime_error(what), step_index(step) {}
  long step_index = -1;
};

/// Raised when the characteristic back-tracing does not converge (typically a
/// post-shock query, where no classical characteristic exists).
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by configuration parsing/validation. Collects every problem found,
/// each message prefixed with its line number where applicable.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), messages(std::move(errors)) {}
  explicit ConfigError(const std::string& error) : ConfigError(std::vector<std::string>{error}) {}
  std::vector<std::string> messages;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& m : v) {
      if (!out.empty()) out += '\n';
      out += m;
    }
    return out;
  }
};

/// Number of worker threads, read from MCLAW_THREADS (default 1, clamped to
/// [1, 256]). The solver's results do not depend on this value; it only bounds
/// how many threads the embarrassingly parallel loops may use.
int worker_count();

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, on up to
/// worker_count() threads. Falls back to a single serial call for small n.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

/// Formats a double with 17 significant digits (round-trip exact) for the CSV
/// writers, so identical runs produce bitwise identical artifacts.
std::string format_full(double x);

}  // namespace mclaw
