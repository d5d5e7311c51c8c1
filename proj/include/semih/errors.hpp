#pragma once

#include <stdexcept>
#include <string>

namespace semih {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct ZeroWeight : Error { using Error::Error; };
struct RangeNotIncluded : Error { using Error::Error; };
struct NotABounded : Error { using Error::Error; };
struct EigFailure : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };

} // namespace semih
