#pragma once

#include <stdexcept>
#include <string>

namespace ctrw {

// Error taxonomy shared by the library and the command-line tool. The tool
// maps each type onto a process exit code:
//   ValidationError -> 1 (bad parameters / preconditions)
//   IoError         -> 2 (file system problems, annotated with the path)
//   NumericalError  -> 3 (pole / singularity / convergence guard tripped)
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace ctrw
