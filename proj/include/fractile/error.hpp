#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fractile {

enum class Errc {
    OutOfRange,
    DegenerateDiagonal,
    FullSquare,
    ScaleTooSmall,
    ResourceLimit,
    NotNice,
    NotPinchPoint,
    BadTileIndex,
    NotInFrontier,
    Occupied,
    IllegalStep,
    NotAPath,
    NotSpacingValue,
    SeedUnstable,
    BadInput,
    IoFailure,
};

inline const char* errc_name(Errc e) {
    switch (e) {
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::DegenerateDiagonal: return "DegenerateDiagonal";
        case Errc::FullSquare: return "FullSquare";
        case Errc::ScaleTooSmall: return "ScaleTooSmall";
        case Errc::ResourceLimit: return "ResourceLimit";
        case Errc::NotNice: return "NotNice";
        case Errc::NotPinchPoint: return "NotPinchPoint";
        case Errc::BadTileIndex: return "BadTileIndex";
        case Errc::NotInFrontier: return "NotInFrontier";
        case Errc::Occupied: return "Occupied";
        case Errc::IllegalStep: return "IllegalStep";
        case Errc::NotAPath: return "NotAPath";
        case Errc::NotSpacingValue: return "NotSpacingValue";
        case Errc::SeedUnstable: return "SeedUnstable";
        case Errc::BadInput: return "BadInput";
        case Errc::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Errc kind, std::string msg)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + std::move(msg)), kind_(kind) {}
    Error(Errc kind, std::string msg, std::int64_t index)
        : std::runtime_error(std::string(errc_name(kind)) + "[" + std::to_string(index) +
                             "]: " + std::move(msg)),
          kind_(kind),
          index_(index) {}

    Errc kind() const { return kind_; }
    std::int64_t index() const { return index_; }  // step index for IllegalStep

  private:
    Errc kind_;
    std::int64_t index_ = -1;
};

}  // namespace fractile
