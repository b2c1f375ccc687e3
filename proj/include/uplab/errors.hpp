#pragma once

#include <stdexcept>
#include <string>

namespace uplab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define UPLAB_ERROR(Name)                                              \
    struct Name : Error {                                              \
        using Error::Error;                                            \
        const char* kind() const noexcept override { return #Name; }   \
    };

UPLAB_ERROR(GridTooCoarse)
UPLAB_ERROR(BadParameter)
UPLAB_ERROR(NotInvertible)
UPLAB_ERROR(NoConvergence)
UPLAB_ERROR(SpectrumTooWide)
UPLAB_ERROR(Undefined)
UPLAB_ERROR(IllConditioned)
UPLAB_ERROR(MeasureTooSingular)
UPLAB_ERROR(NotLogIntegrable)
UPLAB_ERROR(BadInput)
UPLAB_ERROR(IterationBudgetExceeded)
UPLAB_ERROR(NotRegular)
UPLAB_ERROR(SmoothnessBudget)
UPLAB_ERROR(PartitionInfeasible)
UPLAB_ERROR(FourierBudget)
UPLAB_ERROR(ModulationSearchFailed)
UPLAB_ERROR(NotSubharmonic)
UPLAB_ERROR(SlopeBudget)
UPLAB_ERROR(ConfigError)

#undef UPLAB_ERROR

} // namespace uplab
