#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ensemble construction
struct NonDivisible : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };
struct AsymmetricPattern : Error { using Error::Error; };

// eigen/singular computation
struct NoConvergence : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };

// measures
struct CountMismatch : Error { using Error::Error; };
struct BadWeightExponent : Error { using Error::Error; };
struct OmegaTooLarge : Error { using Error::Error; };

// moments / oracles
struct TooLarge : Error { using Error::Error; };
struct EmptyMeasure : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };

// stats
struct BadR : Error { using Error::Error; };
struct Empty : Error { using Error::Error; };

// driver
struct IoError : Error { using Error::Error; };
struct MissingRecords : Error { using Error::Error; };

} // namespace spectra
