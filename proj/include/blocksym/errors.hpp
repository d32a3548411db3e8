// Error types shared by every module. Each condition named in an operation
// contract has its own type so callers and tests can catch it precisely.
#pragma once

#include <stdexcept>
#include <string>

namespace blocksym {

// Base type for every library error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad JSON, missing keys, non-finite entries, invalid shapes.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Matrix shapes incompatible with the requested operation.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Elements or states that live on different block algebras.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

// Block index outside the algebra's block list.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// Input is not self-adjoint within tolerance.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

// A map failed validation as a Jordan symmetry where a validated one is required.
class NotValidated : public Error {
 public:
  using Error::Error;
};

// A pure-state oracle violated the properties a genuine symmetry guarantees.
class OracleInconsistent : public Error {
 public:
  using Error::Error;
};

// Witness element fails the feasibility constraints of the infimum formula.
class InfeasibleWitness : public Error {
 public:
  using Error::Error;
};

// Requested block classification does not match the map's actual behavior.
class KindMismatch : public Error {
 public:
  using Error::Error;
};

// Operator extraction hit a degenerate intermediate (corrupted input map).
class SingularExtraction : public Error {
 public:
  using Error::Error;
};

// Implementing operators with different antiunitary flags cannot be compared.
class FlagMismatch : public Error {
 public:
  using Error::Error;
};

// Central-projection splitting failed its internal consistency checks.
class DecompositionInconsistent : public Error {
 public:
  using Error::Error;
};

// 2x2 input is not a density matrix within tolerance.
class NotDensity : public Error {
 public:
  using Error::Error;
};

// Ball-coordinate vector lies outside the closed unit ball.
class OutOfBall : public Error {
 public:
  using Error::Error;
};

// Sphere operation requires unit-norm coordinate vectors.
class NotOnSphere : public Error {
 public:
  using Error::Error;
};

// Pure states live in different blocks where equivalence is required.
class InequivalentStates : public Error {
 public:
  using Error::Error;
};

// Pure states coincide up to phase where distinct rays are required.
class EqualRays : public Error {
 public:
  using Error::Error;
};

// Projection does not have rank 2 where a two-dimensional corner is required.
class NotRank2 : public Error {
 public:
  using Error::Error;
};

// Map fails to act as a Jordan isomorphism on a corner.
class NotJordan : public Error {
 public:
  using Error::Error;
};

}  // namespace blocksym
