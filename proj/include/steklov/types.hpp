#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace steklov {

using Real = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Values indexed by position in the sorted boundary vertex list.
using BoundaryData = Vector;
// Values indexed by vertex id, one entry per vertex.
using VertexFunction = Vector;
// Dense Dirichlet-to-Neumann matrix on the boundary vertices.
using DtNMatrix = Matrix;

enum class ErrorKind {
  Disconnected,
  NonSimple,
  EmptyBoundary,
  NoInterior,
  Cyclic,
  TooSmall,
  EdgeNotFound,
  InvalidVertex,
  NotInteriorDegreeTwo,
  DegenerateContraction,
  NotReducible,
  ZeroBoundaryData,
  SingularSystem,
  ParameterRange,
  IndexOutOfRange,
  NotZeroSum,
  Overflow,
  BadFormat,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Library error carrying a machine-checkable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace steklov
