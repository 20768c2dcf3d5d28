#include "evdf/error.hpp"

namespace evdf {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::DuplicateIndex: return "DuplicateIndex";
        case Errc::MissingMandatory: return "MissingMandatory";
        case Errc::TypeViolation: return "TypeViolation";
        case Errc::UnknownAttribute: return "UnknownAttribute";
        case Errc::RowOutOfRange: return "RowOutOfRange";
        case Errc::NameCollision: return "NameCollision";
        case Errc::EmptySuffix: return "EmptySuffix";
        case Errc::MalformedCsv: return "MalformedCsv";
        case Errc::SharedEvent: return "SharedEvent";
        case Errc::SeparatorCollision: return "SeparatorCollision";
        case Errc::BadMagic: return "BadMagic";
        case Errc::UnsupportedVersion: return "UnsupportedVersion";
        case Errc::CorruptDirectory: return "CorruptDirectory";
        case Errc::CorruptBlock: return "CorruptBlock";
        case Errc::Truncated: return "Truncated";
        case Errc::Io: return "Io";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace evdf
