#pragma once

#include <stdexcept>
#include <string>

namespace dagwish {

struct NotPositiveDefinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The matrix is not Markov with respect to the DAG (e.g. Omega outside P_D).
struct PatternError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No completion exists; vertex is the 0-based index where the check failed.
struct CompletionError : std::runtime_error {
  CompletionError(const std::string& what, int vertex)
      : std::runtime_error(what), vertex(vertex) {}
  int vertex;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dagwish
