#pragma once

#include <stdexcept>
#include <string>

namespace hglue {

// Base of every error raised by the library. name() is the stable
// identifier surfaced in reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* name() const noexcept { return "Error"; }
};

#define HGLUE_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        using Error::Error;                                        \
        const char* name() const noexcept override { return #Name; } \
    };

HGLUE_DEFINE_ERROR(DimensionError)
HGLUE_DEFINE_ERROR(InvalidInput)
HGLUE_DEFINE_ERROR(DomainError)
HGLUE_DEFINE_ERROR(SingularOperatorError)
HGLUE_DEFINE_ERROR(IoError)

#undef HGLUE_DEFINE_ERROR

class GluingError : public Error {
public:
    GluingError(const std::string& what, double mismatch)
        : Error(what), mismatch_(mismatch) {}
    const char* name() const noexcept override { return "GluingError"; }
    double mismatch() const noexcept { return mismatch_; }

private:
    double mismatch_;
};

class BasinError : public Error {
public:
    BasinError(const std::string& what, double product)
        : Error(what), product_(product) {}
    const char* name() const noexcept override { return "BasinError"; }
    // the offending quantity ||T(0)|| / (sigma_R / 10)
    double product() const noexcept { return product_; }

private:
    double product_;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "ConvergenceError"; }
};

} // namespace hglue
