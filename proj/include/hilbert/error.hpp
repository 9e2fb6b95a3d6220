#pragma once

#include <stdexcept>
#include <string>

namespace hilbert {

enum class ErrorCode {
    InvalidArgument,
    InvalidPolygon,
    CoincidentLines,
    CoincidentPoints,
    NotCollinear,
    DegenerateQuad,
    DegenerateTriangle,
    ImageAtInfinity,
    PointNotInterior,
    PointsCoincide,
    SiteOnEdgeLine,
    SiteOutsideFrame,
    NotDegenerate,
    DegeneratePair,
    DuplicateSite,
    SiteCoincident,
    SiteTooCloseToBoundary,
    UnknownSite,
    EmptyDiagram,
    UnknownSnapshot,
    Parse,
    Internal,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace hilbert
