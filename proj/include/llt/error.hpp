#pragma once

#include <stdexcept>
#include <string>

namespace llt {

// Malformed input: bad parameters, corrupted weights, degenerate laws.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A convolution would exceed the configured support cap.
class SupportOverflow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Numerical result outside the round-off envelope, i.e. a bug upstream.
class NumericalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace llt
