#include "hilbert/error.hpp"

namespace hilbert {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::DegenerateQuad: return "DegenerateQuad";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::ImageAtInfinity: return "ImageAtInfinity";
    case ErrorCode::PointNotInterior: return "PointNotInterior";
    case ErrorCode::PointsCoincide: return "PointsCoincide";
    case ErrorCode::SiteOnEdgeLine: return "SiteOnEdgeLine";
    case ErrorCode::SiteOutsideFrame: return "SiteOutsideFrame";
    case ErrorCode::NotDegenerate: return "NotDegenerate";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::DuplicateSite: return "DuplicateSite";
    case ErrorCode::SiteCoincident: return "SiteCoincident";
    case ErrorCode::SiteTooCloseToBoundary: return "SiteTooCloseToBoundary";
    case ErrorCode::UnknownSite: return "UnknownSite";
    case ErrorCode::EmptyDiagram: return "EmptyDiagram";
    case ErrorCode::UnknownSnapshot: return "UnknownSnapshot";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace hilbert
