#pragma once

#include <stdexcept>
#include <string>

namespace kmp {

/// Base class for every failure reported by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A (label, rank) pair or numeric argument outside the supported range.
class RangeError : public Error {
public:
  using Error::Error;
};

/// A diagram component that is neither of finite nor of affine type.
class ClassificationError : public Error {
public:
  using Error::Error;
};

/// A presentation-level precondition failed (bad relator shape, unknown
/// generator, duplicate name, cyclic identification, malformed input).
class PresentationError : public Error {
public:
  using Error::Error;
};

/// Requested block catalog row does not exist for the given family/rank/parity.
class CatalogMiss : public Error {
public:
  using Error::Error;
};

/// Relator data whose sizes disagree with the catalog row it claims.
class SizeMismatch : public Error {
public:
  using Error::Error;
};

/// (type, q) violates the rank-2 subgroup restrictions.
class AdmissibilityError : public Error {
public:
  using Error::Error;
};

/// Explicit assembly requested while some block has no relator data.
class ExplicitUnavailable : public Error {
public:
  using Error::Error;
};

} // namespace kmp
