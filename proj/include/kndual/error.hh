#pragma once

#include <stdexcept>
#include <string>

namespace kndual
{
    /// Base class for everything this library throws on bad input or a failed
    /// internal consistency check.
    class Error : public std::runtime_error
    {
    public:
        explicit Error(const std::string & message) :
            std::runtime_error(message)
        {
        }
    };

#define KNDUAL_ERROR(Name)                                  \
    class Name : public Error                               \
    {                                                       \
    public:                                                 \
        explicit Name(const std::string & message) :        \
            Error(#Name ": " + message)                     \
        {                                                   \
        }                                                   \
    }

    KNDUAL_ERROR(InvalidOrder);
    KNDUAL_ERROR(NotMonotone);
    KNDUAL_ERROR(NotSemiConstant);
    KNDUAL_ERROR(LengthMismatch);
    KNDUAL_ERROR(InvalidLattice);
    KNDUAL_ERROR(InvalidAlgebra);
    KNDUAL_ERROR(InvalidHomomorphism);
    KNDUAL_ERROR(SizeOverflow);
    KNDUAL_ERROR(IsoFailure);
    KNDUAL_ERROR(BadIndices);
    KNDUAL_ERROR(TrivialAlgebra);
    KNDUAL_ERROR(NotInVariety);
    KNDUAL_ERROR(NotInQuasivariety);
    KNDUAL_ERROR(InvalidDualObject);
    KNDUAL_ERROR(NoWitness);
    KNDUAL_ERROR(InvalidSequence);
    KNDUAL_ERROR(NotInUniverse);
    KNDUAL_ERROR(ClosureFailure);
    KNDUAL_ERROR(ParseError);

#undef KNDUAL_ERROR
}
