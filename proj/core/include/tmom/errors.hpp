#pragma once

#include <stdexcept>
#include <string>

namespace tmom {

// Base class for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input/schema problems when reading external files.
struct SchemaError : Error {
    using Error::Error;
};

// --- algebra ---
struct EvalAtZeroWithNegativePower : Error {
    using Error::Error;
};
struct InvalidCharacterPoint : Error {
    using Error::Error;
};
struct InsufficientSamplePoints : Error {
    using Error::Error;
};
struct NotSymmetrizable : Error {
    using Error::Error;
};
struct MissingRealMoment : Error {
    using Error::Error;
};
struct MissingComplexMoment : Error {
    using Error::Error;
};

// --- sos ---
struct NotPositiveSemidefinite : Error {
    using Error::Error;
};
struct BasisCannotExpress : Error {
    using Error::Error;
};
struct NotNonnegativeOnCircle : Error {
    using Error::Error;
};
struct DegreeZeroNegative : Error {
    using Error::Error;
};

// --- moments ---
struct SupportNotCovered : Error {
    using Error::Error;
};
struct MissingMoment : Error {
    using Error::Error;
};
struct CertificateOutOfCone : Error {
    using Error::Error;
};
struct NonSummableMoment : Error {
    using Error::Error;
};
struct SupportBelowShift : Error {
    using Error::Error;
};
struct ModulusExceedsOne : Error {
    using Error::Error;
};
struct InequalityViolated : Error {
    using Error::Error;
};
struct ZeroIndexPresent : Error {
    using Error::Error;
};
struct BoundsViolated : Error {
    using Error::Error;
};
struct AtomOutsideRegion : Error {
    using Error::Error;
};

// --- operator checks ---
struct MixedSignMultiIndex : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct EntryOutsideCone : Error {
    using Error::Error;
};

}  // namespace tmom
