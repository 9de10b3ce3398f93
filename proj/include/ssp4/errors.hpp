#pragma once

#include <stdexcept>
#include <string>

namespace ssp4 {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define SSP4_DEFINE_ERROR(Name)                                                \
    class Name : public Error                                                  \
    {                                                                          \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    };

SSP4_DEFINE_ERROR(DivisionByZero)
SSP4_DEFINE_ERROR(FieldMismatch)
SSP4_DEFINE_ERROR(InvalidDegree)
SSP4_DEFINE_ERROR(InvalidPrime)
SSP4_DEFINE_ERROR(ZeroPolynomial)
SSP4_DEFINE_ERROR(BothZero)
SSP4_DEFINE_ERROR(IndexOutOfRange)
SSP4_DEFINE_ERROR(NotSquareFree)
SSP4_DEFINE_ERROR(InvalidTriple)
SSP4_DEFINE_ERROR(PrimeMismatch)
SSP4_DEFINE_ERROR(DegenerateConfiguration)
SSP4_DEFINE_ERROR(DegenerateTriple)
SSP4_DEFINE_ERROR(RootsOutsideField)
SSP4_DEFINE_ERROR(ParityViolation)
SSP4_DEFINE_ERROR(RationalityViolation)
SSP4_DEFINE_ERROR(ConsistencyViolation)
SSP4_DEFINE_ERROR(ParseError)

#undef SSP4_DEFINE_ERROR

/// Raised by the hypergeometric recurrence when a Pochhammer factor of the
/// lower parameter vanishes mod p.
class DenominatorVanishes : public Error
{
public:
    explicit DenominatorVanishes(unsigned n)
        : Error("DenominatorVanishes: (c+n-1) = 0 mod p at n = " + std::to_string(n)), n_(n)
    {}
    unsigned index() const noexcept { return n_; }

private:
    unsigned n_;
};

} // namespace ssp4
