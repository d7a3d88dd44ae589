#pragma once

#include <stdexcept>
#include <string>

namespace mmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: out-of-range endpoints, duplicate edges, bad file syntax.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class NotStronglyConnected : public Error {
 public:
  using Error::Error;
};

class NoCycle : public Error {
 public:
  using Error::Error;
};

// Caller handed an argument outside the documented domain.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class NegativeCycle : public Error {
 public:
  using Error::Error;
};

// A dual potential was too far from feasible to be used for the SSSP reduction.
class PotentialQualityError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmc
