#pragma once

#include <stdexcept>
#include <string>

namespace transgress {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TRANSGRESS_DEFINE_ERROR(Name)                      \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what)             \
            : Error(std::string(#Name ": ") + what) {}     \
    }

TRANSGRESS_DEFINE_ERROR(OutOfBasin);
TRANSGRESS_DEFINE_ERROR(DegenerateSimplex);
TRANSGRESS_DEFINE_ERROR(DegreeMismatch);
TRANSGRESS_DEFINE_ERROR(DegreeOverflow);
TRANSGRESS_DEFINE_ERROR(NotClosed);
TRANSGRESS_DEFINE_ERROR(SingularVolumeForm);
TRANSGRESS_DEFINE_ERROR(FillingUnavailable);
TRANSGRESS_DEFINE_ERROR(LoopNotClosed);
TRANSGRESS_DEFINE_ERROR(NotPreserving);
TRANSGRESS_DEFINE_ERROR(MeshFormatError);
TRANSGRESS_DEFINE_ERROR(ConfigError);
TRANSGRESS_DEFINE_ERROR(CheckFailure);

#undef TRANSGRESS_DEFINE_ERROR

}  // namespace transgress
