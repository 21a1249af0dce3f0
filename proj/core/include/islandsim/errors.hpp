#pragma once

#include <stdexcept>
#include <string>

namespace islandsim {

/// Invalid configuration or input data.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The optimization backend failed (not infeasibility, which is a result).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system or parse failure, carrying the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace islandsim
