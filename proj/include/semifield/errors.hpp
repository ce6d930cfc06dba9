#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semifield {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidFieldSpec : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class NotStandardColumn : public Error {
public:
    NotStandardColumn() : Error("first column is not a standard basis vector") {}
};

/// A list of matrices failed one of the standard-set conditions.
class InvalidStandardSet : public Error {
public:
    enum class Reason { WrongShape, NotIdentityFirst, BadFirstColumn, SingularCombination };

    InvalidStandardSet(Reason reason, std::string what, std::size_t index = 0,
                       std::vector<std::uint8_t> lambda = {})
        : Error(std::move(what)), reason_(reason), index_(index), lambda_(std::move(lambda)) {}

    Reason reason() const noexcept { return reason_; }
    /// 1-based matrix index for BadFirstColumn.
    std::size_t index() const noexcept { return index_; }
    /// Offending coefficient tuple for SingularCombination.
    const std::vector<std::uint8_t>& lambda() const noexcept { return lambda_; }

private:
    Reason reason_;
    std::size_t index_;
    std::vector<std::uint8_t> lambda_;
};

class NoIdentity : public Error {
public:
    NoIdentity() : Error("cube has no identity on the first basis vector") {}
};

class IdentityNotPreserved : public Error {
public:
    IdentityNotPreserved() : Error("basis change does not keep the identity as first basis vector") {}
};

class NotRightPrimitive : public Error {
public:
    NotRightPrimitive() : Error("no element has a primitive right-multiplication characteristic polynomial") {}
};

class NonIntegerAtOrder : public Error {
public:
    NonIntegerAtOrder() : Error("autotopy order is not a positive integer") {}
};

class InvalidSearchConfig : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace semifield
