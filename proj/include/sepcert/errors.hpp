#pragma once

#include <stdexcept>
#include <string>

namespace sepcert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitianInput : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ArityError : Error { using Error::Error; };
struct PartitionShape : Error { using Error::Error; };
struct NonPositiveInner : Error { using Error::Error; };
struct EmptySupport : Error { using Error::Error; };
struct DegenerateObjective : Error { using Error::Error; };
struct UnknownId : Error { using Error::Error; };
struct NonCommuting : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct ConstructionFailure : Error { using Error::Error; };
struct MissingIdentityTerm : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

}  // namespace sepcert
