#pragma once

#include <stdexcept>
#include <string>

namespace netgeo {

// Base class for all library errors so callers can catch netgeo::Error
// wholesale or a specific contract violation by name.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define NETGEO_DEFINE_ERROR(Name)                  \
  struct Name : Error {                            \
    using Error::Error;                            \
    Name() : Error(#Name) {}                       \
  }

NETGEO_DEFINE_ERROR(InvalidArgument);
NETGEO_DEFINE_ERROR(NegativeRadius);
NETGEO_DEFINE_ERROR(NonPositiveRadius);
NETGEO_DEFINE_ERROR(NegativeLength);
NETGEO_DEFINE_ERROR(DegenerateSegment);
NETGEO_DEFINE_ERROR(DegenerateRect);
NETGEO_DEFINE_ERROR(CollinearOverlap);
NETGEO_DEFINE_ERROR(PointsOutsideWindow);
NETGEO_DEFINE_ERROR(DegenerateCell);
NETGEO_DEFINE_ERROR(NonConvergentWidening);
NETGEO_DEFINE_ERROR(ToleranceNotMet);
NETGEO_DEFINE_ERROR(NonIntegralRatio);
NETGEO_DEFINE_ERROR(CoincidentPoints);
NETGEO_DEFINE_ERROR(SizeMismatch);
NETGEO_DEFINE_ERROR(NodeMismatch);
NETGEO_DEFINE_ERROR(Disconnected);
NETGEO_DEFINE_ERROR(ExhaustedAttempts);

#undef NETGEO_DEFINE_ERROR

}  // namespace netgeo
