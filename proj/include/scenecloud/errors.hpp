#pragma once

#include <stdexcept>
#include <string>

namespace scenecloud {

// Stable error categories; the CLI maps them onto exit codes
// (0 ok, 2 I/O, 3 numeric, 4 candidate, 5 dimensionality).
enum class errc {
  io_error,
  no_scenes_found,
  degenerate_matrix,
  zero_marginal,
  decomposition_failure,
  unknown_candidate,
  insufficient_factors,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(errc::io_error, what) {}
};

struct NoScenesFound : Error {
  explicit NoScenesFound(const std::string& what) : Error(errc::no_scenes_found, what) {}
};

struct DegenerateMatrix : Error {
  explicit DegenerateMatrix(const std::string& what) : Error(errc::degenerate_matrix, what) {}
};

struct ZeroMarginal : Error {
  explicit ZeroMarginal(const std::string& what) : Error(errc::zero_marginal, what) {}
};

struct DecompositionFailure : Error {
  explicit DecompositionFailure(const std::string& what)
      : Error(errc::decomposition_failure, what) {}
};

struct UnknownCandidate : Error {
  explicit UnknownCandidate(const std::string& what) : Error(errc::unknown_candidate, what) {}
};

struct InsufficientFactors : Error {
  explicit InsufficientFactors(const std::string& what)
      : Error(errc::insufficient_factors, what) {}
};

}  // namespace scenecloud
