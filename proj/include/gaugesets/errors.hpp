#pragma once
#include <stdexcept>

namespace gaugesets {

struct DomainError : std::runtime_error { using std::runtime_error::runtime_error; };
struct PreconditionError : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnknownAtomError : std::runtime_error { using std::runtime_error::runtime_error; };
struct FormatError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SchemaError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SingularMatrixError : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotPositiveDefiniteError : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingHRepError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SizeLimitError : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnsupportedGaugeError : std::runtime_error { using std::runtime_error::runtime_error; };
struct GaugeParseError : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace gaugesets
