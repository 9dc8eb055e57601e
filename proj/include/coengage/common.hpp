#pragma once

#include <stdexcept>
#include <string>

namespace coengage {

// Error taxonomy maps onto CLI exit codes: validation/io/not-found -> 1,
// capacity -> 2.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NotFoundError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class CapacityError : public Error {
public:
  CapacityError(std::string phase, const std::string& msg)
      : Error("out of capacity in " + phase + ": " + msg), phase_(std::move(phase)) {}
  const std::string& phase() const { return phase_; }

private:
  std::string phase_;
};

} // namespace coengage
