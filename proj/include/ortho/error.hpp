#ifndef ORTHO_ERROR_HPP
#define ORTHO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ortho {

/// Bad input from a caller: malformed permutation, index out of range,
/// rank mismatch between operands.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal precondition that the mathematics guarantees was violated,
/// e.g. a nonzero remainder in an exact division. Always a bug somewhere.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The requested expansion leaves S_n; the caller must embed into a larger rank.
class RankOverflow : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The orthodontia algorithm met a nonempty column without a missing tooth.
class OrthodontiaFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ortho

#endif // ORTHO_ERROR_HPP
