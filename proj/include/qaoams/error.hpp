#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qaoams {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem larger than the simulator / enumerators accept.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Bad argument or violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Requested edge (or other item) does not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Operation needs at least one edge.
class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  GenerationFailed(const std::string& what, std::uint64_t last_seed)
      : Error(what), last_seed_(last_seed) {}
  std::uint64_t last_seed() const noexcept { return last_seed_; }

 private:
  std::uint64_t last_seed_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace qaoams
