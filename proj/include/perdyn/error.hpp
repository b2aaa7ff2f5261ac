#ifndef PERDYN_ERROR_HPP
#define PERDYN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace perdyn {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

// An enumeration or allocation would exceed a configured cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
public:
  using Error::Error;
};

// A theorem hypothesis (e.g. non-preperiodicity of 0) is not met.
class HypothesisFailure : public Error {
public:
  using Error::Error;
};

class RamifiedPrime : public Error {
public:
  using Error::Error;
};

class BadReduction : public Error {
public:
  using Error::Error;
};

} // namespace perdyn

#endif // PERDYN_ERROR_HPP
