#pragma once

#include <stdexcept>
#include <string>

namespace braesslab {

// Base class for every error thrown by the library.  Callers that do not care
// about the precise failure can catch this single type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A constructor argument violated a structural invariant (empty ground set,
// duplicate member, decreasing cost values, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A JSON document could not be parsed or failed schema validation.  The
// message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A brute-force operation was asked to enumerate too large a ground set.
class GroundSetTooLarge : public Error {
 public:
  using Error::Error;
};

// A clutter that was required to be the basis family of a matroid is not one.
class NotAMatroid : public Error {
 public:
  using Error::Error;
};

// No exchange-axiom violation exists, so no witness can be produced.
class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

// A strategy distribution has negative mass or does not meet its demand.
class InfeasibleDistribution : public Error {
 public:
  using Error::Error;
};

// A reduction raises a cost somewhere or raises a demand.
class InvalidReduction : public Error {
 public:
  using Error::Error;
};

// Counterexample synthesis requires the first clutter to NOT be a matroid
// basis family; matroid families are immune.
class NotANonMatroid : public Error {
 public:
  using Error::Error;
};

// A family of set systems is missing required members.
class EmptySystem : public Error {
 public:
  using Error::Error;
};

// The demand-reduction counterexample needs at least three populations.
class NeedThreePopulations : public Error {
 public:
  using Error::Error;
};

// A synthesized instance routed measurable mass over a penalty resource,
// meaning the chosen penalty constant was not large enough.
class BigMTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace braesslab
