#pragma once

#include <stdexcept>
#include <string>

namespace shadow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SHADOW_DEFINE_ERROR(Name)                       \
    struct Name : Error {                               \
        Name() : Error(#Name) {}                        \
        explicit Name(const std::string& what)          \
            : Error(std::string(#Name) + ": " + what) {}\
    }

SHADOW_DEFINE_ERROR(SingularMatrix);
SHADOW_DEFINE_ERROR(SingularBasis);
SHADOW_DEFINE_ERROR(DependentRows);
SHADOW_DEFINE_ERROR(NoFeasibleBasis);
SHADOW_DEFINE_ERROR(NonIntegralMatrix);
SHADOW_DEFINE_ERROR(NotPerfectMatching);
SHADOW_DEFINE_ERROR(InfeasibleBasis);
SHADOW_DEFINE_ERROR(InfeasibleStart);
SHADOW_DEFINE_ERROR(DegenerateSegment);
SHADOW_DEFINE_ERROR(NoLargeCoefficient);
SHADOW_DEFINE_ERROR(DeltaOverestimated);
SHADOW_DEFINE_ERROR(ZeroRow);
SHADOW_DEFINE_ERROR(NotPointed);
SHADOW_DEFINE_ERROR(Unbounded);
SHADOW_DEFINE_ERROR(BadParams);
SHADOW_DEFINE_ERROR(RetriesExhausted);

#undef SHADOW_DEFINE_ERROR

}  // namespace shadow
