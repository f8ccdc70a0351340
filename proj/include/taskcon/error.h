/// @file error.h
/// Exception types thrown by the taskcon library.
#ifndef TASKCON_ERROR_H_
#define TASKCON_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taskcon {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A directed graph (plan or refinement forest) contains a cycle.
class CycleError : public Error {
 public:
  CycleError(const std::string& msg, std::vector<std::string> witness)
      : Error(msg), witness_(std::move(witness)) {}
  /// Nodes of one cycle in traversal order; the closing edge returns to
  /// the first node.
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

class RefinementCycleError : public CycleError {
 public:
  using CycleError::CycleError;
};

class MultipleStartsError : public Error {
 public:
  MultipleStartsError(const std::string& msg, std::vector<std::string> starts)
      : Error(msg), starts_(std::move(starts)) {}
  const std::vector<std::string>& starts() const { return starts_; }

 private:
  std::vector<std::string> starts_;
};

class EmptyAxisError : public Error {
 public:
  using Error::Error;
};

class DuplicateError : public Error {
 public:
  using Error::Error;
};

class UnknownCellError : public Error {
 public:
  using Error::Error;
};

class UnknownMetricError : public Error {
 public:
  using Error::Error;
};

class DirectionMismatchError : public Error {
 public:
  using Error::Error;
};

class UnitMismatchError : public Error {
 public:
  using Error::Error;
};

class AnchorUnresolvedError : public Error {
 public:
  using Error::Error;
};

class UnratedCellError : public Error {
 public:
  using Error::Error;
};

class NoResolvedCellsError : public Error {
 public:
  using Error::Error;
};

/// Input violates the precondition of an emitter or operation.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range configuration value (quantile, derivation step, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace taskcon

#endif  // TASKCON_ERROR_H_
