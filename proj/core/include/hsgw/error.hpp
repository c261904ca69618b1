#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsgw {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// bad argument to a constructor or operation (alpha out of range, n too large, ...)
class ParameterError : public Error
{
public:
    using Error::Error;
};

// evaluation point outside the domain of a function
class DomainError : public Error
{
public:
    using Error::Error;
};

// a model whose normalisation constraints cannot be met
class ConstructionError : public Error
{
public:
    using Error::Error;
};

class PrecisionError : public Error
{
public:
    PrecisionError(const std::string& what, double relative_error)
        : Error(what), relative_error_(relative_error) {}
    double relative_error() const noexcept { return relative_error_; }

private:
    double relative_error_;
};

// iteration did not converge
class NumericError : public Error
{
public:
    NumericError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class FormatError : public Error
{
public:
    FormatError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// conditioning on an event of probability zero
class ConditioningError : public Error
{
public:
    using Error::Error;
};

class RetryBudgetError : public Error
{
public:
    RetryBudgetError(const std::string& what, std::uint64_t attempts, std::uint64_t accepted)
        : Error(what), attempts_(attempts), accepted_(accepted) {}
    std::uint64_t attempts() const noexcept { return attempts_; }
    double acceptance_rate() const noexcept
    {
        return attempts_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(attempts_);
    }

private:
    std::uint64_t attempts_;
    std::uint64_t accepted_;
};

class ResourceError : public Error
{
public:
    using Error::Error;
};

} // namespace hsgw
