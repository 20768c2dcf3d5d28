#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>

namespace evdf {

/// Milliseconds since the Unix epoch (UTC).
struct Timestamp {
    std::int64_t ms = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Tag of a stored attribute value. `Missing` is the explicit empty slot.
enum class ValueTag : std::uint8_t { Str, Int, Float, Timestamp, Missing };

/// Declared type of a column. `Object` columns may mix tags.
/// The numeric codes are the ones persisted in EDF1 files.
enum class ColumnType : std::uint8_t { Str = 0, Int = 1, Float = 2, Timestamp = 3, Object = 4 };

std::string_view to_string(ColumnType type) noexcept;
std::string_view to_string(ValueTag tag) noexcept;

/// True when a value with `tag` may be stored in a column of `type`.
bool accepts(ColumnType type, ValueTag tag) noexcept;

/// Tagged scalar: string, 64-bit integer, finite-or-infinite double, timestamp,
/// or Missing. NaN is rejected so the value ordering stays total.
class AttrValue {
public:
    AttrValue() = default;

    static AttrValue missing() { return {}; }
    static AttrValue of_str(std::string s);
    static AttrValue of_int(std::int64_t v);
    static AttrValue of_float(double v);
    static AttrValue of_timestamp(Timestamp t);
    static AttrValue of_timestamp_ms(std::int64_t ms) { return of_timestamp(Timestamp{ms}); }

    ValueTag tag() const noexcept { return static_cast<ValueTag>(tag_index()); }
    bool is_missing() const noexcept { return std::holds_alternative<std::monostate>(v_); }

    const std::string& as_str() const;
    std::int64_t as_int() const;
    double as_float() const;
    Timestamp as_timestamp() const;

    /// Same tag and same payload. Int 1 and Float 1.0 are different values.
    friend bool operator==(const AttrValue& a, const AttrValue& b);

private:
    std::size_t tag_index() const noexcept;

    // Alternative order mirrors ValueTag except Missing, which is first so
    // that a default-constructed value is Missing.
    std::variant<std::monostate, std::string, std::int64_t, double, Timestamp> v_;
};

/// Total order used by sorting: Int/Float (by numeric value, exactly) <
/// Timestamp < Str (byte-wise) < Missing. Int and Float of equal value are
/// equivalent but not equal.
std::weak_ordering compare(const AttrValue& a, const AttrValue& b);

inline bool less(const AttrValue& a, const AttrValue& b) { return compare(a, b) < 0; }

/// Canonical rendering: strings verbatim, integers in decimal, floats as the
/// shortest round-trip decimal, timestamps as ISO-8601 UTC with milliseconds,
/// Missing as "ε".
std::string render(const AttrValue& v);
void render_to(std::string& out, const AttrValue& v);

inline constexpr std::string_view kMissingRendering = "ε";

struct AttrValueHash {
    std::size_t operator()(const AttrValue& v) const noexcept;
};

using ValueSet = std::unordered_set<AttrValue, AttrValueHash>;

/// "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string format_iso8601(Timestamp t);

/// Accepts ISO-8601 `YYYY-MM-DD[T ]HH:MM:SS[.fraction](Z|+HH:MM|-HH:MM|+HHMM)`
/// or a decimal integer interpreted as epoch milliseconds.
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::optional<std::int64_t> parse_int(std::string_view text);
/// Rejects NaN and trailing garbage.
std::optional<double> parse_float(std::string_view text);

}  // namespace evdf
