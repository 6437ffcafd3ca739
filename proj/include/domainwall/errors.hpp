#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace domainwall {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// R = 1 - eps^2 w (or sqrt(u^2+v^2)) is not positive.
class DegenerateRadius : public Error {
 public:
  using Error::Error;
};

/// A slow-fast operation that divides by eps was handed eps == 0.
class EpsilonZero : public Error {
 public:
  EpsilonZero() : Error("slow-fast field requires eps > 0") {}
};

/// Angle left the closed quadrant [0, pi/2] by more than roundoff.
class AngleOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Local step-error estimate of the reduced integrator exceeded tolerance.
class MeshTooCoarse : public Error {
 public:
  using Error::Error;
};

/// u - v changes sign more than once, so the center is ambiguous.
class MultipleCrossings : public Error {
 public:
  using Error::Error;
};

class MalformedFile : public Error {
 public:
  MalformedFile(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace domainwall
