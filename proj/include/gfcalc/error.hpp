#pragma once

#include <stdexcept>
#include <string>

namespace gfcalc {

enum class ErrorKind {
  Argument,  // bad call: precondition violated, invalid bounds, unknown name
  Parse,     // expression/text parse failure
  Numeric,   // quadrature depth, ill-conditioned solve
  Domain     // operation outside the object's domain (U(Omega), omega mismatch, ...)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

class ParseError : public Error {
public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse, what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Thrown when panel bisection hits max depth; carries the best estimate so
// callers can still report something.
class QuadratureError : public Error {
public:
  QuadratureError(double best, double achieved, const std::string& what)
      : Error(ErrorKind::Numeric, what), best_(best), achieved_(achieved) {}
  double best_estimate() const { return best_; }
  double achieved_tolerance() const { return achieved_; }

private:
  double best_;
  double achieved_;
};

}  // namespace gfcalc
