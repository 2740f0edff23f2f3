#pragma once

#include <stdexcept>
#include <string>

namespace cadenza {

// Base class for all toolkit errors. The CLI maps usage/config errors to
// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CADENZA_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

CADENZA_DEFINE_ERROR(InvalidArgument);
CADENZA_DEFINE_ERROR(IoError);
CADENZA_DEFINE_ERROR(UnsupportedFormat);
CADENZA_DEFINE_ERROR(CorruptFile);
CADENZA_DEFINE_ERROR(SampleRateMismatch);
CADENZA_DEFINE_ERROR(MissingImpulseResponse);
CADENZA_DEFINE_ERROR(UnknownInstrument);
CADENZA_DEFINE_ERROR(NoValidFrames);
CADENZA_DEFINE_ERROR(DegenerateSamples);
CADENZA_DEFINE_ERROR(InsufficientPool);
CADENZA_DEFINE_ERROR(TooShort);
CADENZA_DEFINE_ERROR(IncompatibleWeights);
CADENZA_DEFINE_ERROR(CorruptWeights);
CADENZA_DEFINE_ERROR(GraphError);

#undef CADENZA_DEFINE_ERROR

}  // namespace cadenza
