#pragma once

#include <stdexcept>
#include <string>

namespace leggett {

/// Coherent amplitude does not fit in the requested Fock truncation.
class TruncationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A closed-form quantity disagreed with the Fock-space oracle.
class CertificationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// The Gram matrix of {|a>, |-a>} is too close to singular.
class ConditioningError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Multi-start search could not confirm its best value.
class ConvergenceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace leggett
