#pragma once

#include <stdexcept>
#include <string>

namespace reskit {

// Base of every data/numerical error the library raises. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason)
    {
    }

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class DataCorruptionError : public Error
{
public:
    using Error::Error;
};

class UndefinedMetricError : public Error
{
public:
    using Error::Error;
};

class InvalidCurveError : public Error
{
public:
    using Error::Error;
};

class UndefinedMomentsError : public Error
{
public:
    using Error::Error;
};

class UnderdeterminedFitError : public Error
{
public:
    using Error::Error;
};

class OutOfRangeError : public Error
{
public:
    using Error::Error;
};

class DegenerateDistributionError : public Error
{
public:
    using Error::Error;
};

class NumericalError : public Error
{
public:
    using Error::Error;
};

class InfeasibleConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace reskit
