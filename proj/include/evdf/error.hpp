#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evdf {

/// Failure categories raised by the library. Each maps to one contract
/// violation so callers (and the CLI) can react without parsing messages.
enum class Errc {
    LengthMismatch,
    DuplicateIndex,
    MissingMandatory,
    TypeViolation,
    UnknownAttribute,
    RowOutOfRange,
    NameCollision,
    EmptySuffix,
    MalformedCsv,
    SharedEvent,
    SeparatorCollision,
    BadMagic,
    UnsupportedVersion,
    CorruptDirectory,
    CorruptBlock,
    Truncated,
    Io,
    InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace evdf
