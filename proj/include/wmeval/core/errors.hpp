#pragma once

#include <stdexcept>
#include <string>

namespace wmeval {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WMEVAL_DEFINE_ERROR(Name)        \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

WMEVAL_DEFINE_ERROR(DimensionError);
WMEVAL_DEFINE_ERROR(TrajectoryError);
WMEVAL_DEFINE_ERROR(LayoutError);
WMEVAL_DEFINE_ERROR(SpecError);
WMEVAL_DEFINE_ERROR(ScheduleError);
WMEVAL_DEFINE_ERROR(MappingError);
WMEVAL_DEFINE_ERROR(FitError);
WMEVAL_DEFINE_ERROR(GenerationError);
WMEVAL_DEFINE_ERROR(ParseError);
WMEVAL_DEFINE_ERROR(ConfigError);
WMEVAL_DEFINE_ERROR(MetricError);
WMEVAL_DEFINE_ERROR(FrameError);
// Network failure or timeout that persisted through every retry.
WMEVAL_DEFINE_ERROR(TransportError);
// The endpoint answered with a non-success status.
WMEVAL_DEFINE_ERROR(EndpointError);

#undef WMEVAL_DEFINE_ERROR

}  // namespace wmeval
