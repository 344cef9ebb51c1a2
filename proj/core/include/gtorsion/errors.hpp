#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gtorsion/integer.hpp"

namespace gtorsion {

/// Broad failure classes; the CLI maps each one to its own exit code.
enum class ErrorKind {
  invalid_argument,
  parse,
  catalog_miss,
  order_bound,
  not_a_lattice,
  presentation_deficiency,
  consistency,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

class CatalogMissError : public Error {
 public:
  explicit CatalogMissError(const std::string& what) : Error(ErrorKind::catalog_miss, what) {}
};

class OrderBoundError : public Error {
 public:
  explicit OrderBoundError(const std::string& what) : Error(ErrorKind::order_bound, what) {}
};

/// A quotient that should have been Z-free has torsion.
class NotALatticeError : public Error {
 public:
  NotALatticeError(const std::string& what, std::vector<Integer> torsion)
      : Error(ErrorKind::not_a_lattice, what), torsion_(std::move(torsion)) {}
  [[nodiscard]] const std::vector<Integer>& torsion() const noexcept { return torsion_; }

 private:
  std::vector<Integer> torsion_;
};

/// The relators do not normally generate the relation module.
class PresentationDeficiencyError : public Error {
 public:
  explicit PresentationDeficiencyError(const std::string& what)
      : Error(ErrorKind::presentation_deficiency, what) {}
};

/// Two computations that must agree did not.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::consistency, what) {}
};

}  // namespace gtorsion
