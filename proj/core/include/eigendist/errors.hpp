#pragma once

#include <stdexcept>
#include <string>

namespace eigendist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input failed a structural invariant (maps to CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct NegativeEntry : ValidationError { using ValidationError::ValidationError; };
struct RowSumViolation : ValidationError { using ValidationError::ValidationError; };
struct AsymmetryError : ValidationError { using ValidationError::ValidationError; };
struct NonzeroDiagonal : ValidationError { using ValidationError::ValidationError; };
struct TriangleViolation : ValidationError { using ValidationError::ValidationError; };
struct ParameterRange : ValidationError { using ValidationError::ValidationError; };
struct SizeCap : ValidationError { using ValidationError::ValidationError; };
struct OddTorus : ValidationError { using ValidationError::ValidationError; };
struct NotLumpable : ValidationError { using ValidationError::ValidationError; };
struct NotAnEigenfunction : ValidationError { using ValidationError::ValidationError; };
struct DegenerateInput : ValidationError { using ValidationError::ValidationError; };
struct UnreachableAbsorber : ValidationError { using ValidationError::ValidationError; };
struct BudgetExceeded : ValidationError { using ValidationError::ValidationError; };

/// A computation could not be completed or an internal certificate failed
/// (maps to CLI exit code 3).
class ComputeError : public Error {
 public:
  using Error::Error;
};

struct NumericalFailure : ComputeError { using ComputeError::ComputeError; };
struct DegenerateLimit : ComputeError { using ComputeError::ComputeError; };
struct MonotonicityViolation : ComputeError { using ComputeError::ComputeError; };
struct SandwichViolation : ComputeError { using ComputeError::ComputeError; };
struct ZeroSetViolation : ComputeError { using ComputeError::ComputeError; };
struct EigenrelationViolation : ComputeError { using ComputeError::ComputeError; };
struct DivergentTail : ComputeError { using ComputeError::ComputeError; };

}  // namespace eigendist
