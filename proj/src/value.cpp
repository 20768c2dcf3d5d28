#include "evdf/value.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>

#include "evdf/error.hpp"

namespace evdf {

std::string_view to_string(ColumnType type) noexcept {
    switch (type) {
        case ColumnType::Str: return "str";
        case ColumnType::Int: return "int";
        case ColumnType::Float: return "float";
        case ColumnType::Timestamp: return "timestamp";
        case ColumnType::Object: return "object";
    }
    return "?";
}

std::string_view to_string(ValueTag tag) noexcept {
    switch (tag) {
        case ValueTag::Str: return "str";
        case ValueTag::Int: return "int";
        case ValueTag::Float: return "float";
        case ValueTag::Timestamp: return "timestamp";
        case ValueTag::Missing: return "missing";
    }
    return "?";
}

bool accepts(ColumnType type, ValueTag tag) noexcept {
    if (tag == ValueTag::Missing || type == ColumnType::Object) return true;
    return static_cast<std::uint8_t>(type) == static_cast<std::uint8_t>(tag);
}

AttrValue AttrValue::of_str(std::string s) {
    AttrValue v;
    v.v_ = std::move(s);
    return v;
}

AttrValue AttrValue::of_int(std::int64_t i) {
    AttrValue v;
    v.v_ = i;
    return v;
}

AttrValue AttrValue::of_float(double d) {
    if (std::isnan(d)) throw Error(Errc::TypeViolation, "NaN is not a valid attribute value");
    AttrValue v;
    v.v_ = d;
    return v;
}

AttrValue AttrValue::of_timestamp(Timestamp t) {
    AttrValue v;
    v.v_ = t;
    return v;
}

std::size_t AttrValue::tag_index() const noexcept {
    switch (v_.index()) {
        case 1: return static_cast<std::size_t>(ValueTag::Str);
        case 2: return static_cast<std::size_t>(ValueTag::Int);
        case 3: return static_cast<std::size_t>(ValueTag::Float);
        case 4: return static_cast<std::size_t>(ValueTag::Timestamp);
        default: return static_cast<std::size_t>(ValueTag::Missing);
    }
}

namespace {

[[noreturn]] void bad_access(ValueTag want, ValueTag have) {
    throw Error(Errc::TypeViolation, "value holds " + std::string(to_string(have)) + ", not " +
                                         std::string(to_string(want)));
}

// Exact three-way comparison of an integer against a non-NaN double.
std::weak_ordering compare_int_double(std::int64_t i, double d) {
    constexpr double kTwo63 = 9223372036854775808.0;
    if (d < -kTwo63) return std::weak_ordering::greater;
    if (d >= kTwo63) return std::weak_ordering::less;
    const double whole = std::trunc(d);
    const auto whole_int = static_cast<std::int64_t>(whole);
    if (i < whole_int) return std::weak_ordering::less;
    if (i > whole_int) return std::weak_ordering::greater;
    if (d > whole) return std::weak_ordering::less;
    if (d < whole) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

int rank(ValueTag tag) {
    switch (tag) {
        case ValueTag::Int:
        case ValueTag::Float: return 0;
        case ValueTag::Timestamp: return 1;
        case ValueTag::Str: return 2;
        case ValueTag::Missing: return 3;
    }
    return 3;
}

std::weak_ordering to_weak(std::strong_ordering o) {
    if (o < 0) return std::weak_ordering::less;
    if (o > 0) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
}

}  // namespace

const std::string& AttrValue::as_str() const {
    if (auto* p = std::get_if<std::string>(&v_)) return *p;
    bad_access(ValueTag::Str, tag());
}

std::int64_t AttrValue::as_int() const {
    if (auto* p = std::get_if<std::int64_t>(&v_)) return *p;
    bad_access(ValueTag::Int, tag());
}

double AttrValue::as_float() const {
    if (auto* p = std::get_if<double>(&v_)) return *p;
    bad_access(ValueTag::Float, tag());
}

Timestamp AttrValue::as_timestamp() const {
    if (auto* p = std::get_if<Timestamp>(&v_)) return *p;
    bad_access(ValueTag::Timestamp, tag());
}

bool operator==(const AttrValue& a, const AttrValue& b) {
    return a.v_ == b.v_;
}

std::weak_ordering compare(const AttrValue& a, const AttrValue& b) {
    const ValueTag ta = a.tag();
    const ValueTag tb = b.tag();
    const int ra = rank(ta);
    const int rb = rank(tb);
    if (ra != rb) return ra < rb ? std::weak_ordering::less : std::weak_ordering::greater;
    switch (ta) {
        case ValueTag::Str: return to_weak(a.as_str().compare(b.as_str()) <=> 0);
        case ValueTag::Timestamp: return to_weak(a.as_timestamp().ms <=> b.as_timestamp().ms);
        case ValueTag::Missing: return std::weak_ordering::equivalent;
        case ValueTag::Int:
            if (tb == ValueTag::Int) return to_weak(a.as_int() <=> b.as_int());
            return compare_int_double(a.as_int(), b.as_float());
        case ValueTag::Float:
            if (tb == ValueTag::Float) {
                const double x = a.as_float();
                const double y = b.as_float();
                if (x < y) return std::weak_ordering::less;
                if (x > y) return std::weak_ordering::greater;
                return std::weak_ordering::equivalent;
            }
            return 0 <=> compare_int_double(b.as_int(), a.as_float());
    }
    return std::weak_ordering::equivalent;
}

void render_to(std::string& out, const AttrValue& v) {
    switch (v.tag()) {
        case ValueTag::Str: out += v.as_str(); return;
        case ValueTag::Int: {
            char buf[24];
            auto res = std::to_chars(buf, buf + sizeof buf, v.as_int());
            out.append(buf, res.ptr);
            return;
        }
        case ValueTag::Float: {
            char buf[32];
            auto res = std::to_chars(buf, buf + sizeof buf, v.as_float());
            out.append(buf, res.ptr);
            return;
        }
        case ValueTag::Timestamp: out += format_iso8601(v.as_timestamp()); return;
        case ValueTag::Missing: out += kMissingRendering; return;
    }
}

std::string render(const AttrValue& v) {
    if (v.tag() == ValueTag::Str) return v.as_str();
    std::string out;
    render_to(out, v);
    return out;
}

std::size_t AttrValueHash::operator()(const AttrValue& v) const noexcept {
    const auto salt = static_cast<std::size_t>(v.tag()) * 0x9e3779b97f4a7c15ULL;
    switch (v.tag()) {
        case ValueTag::Str: return std::hash<std::string>{}(v.as_str()) ^ salt;
        case ValueTag::Int: return std::hash<std::int64_t>{}(v.as_int()) ^ salt;
        case ValueTag::Float: {
            double d = v.as_float();
            if (d == 0.0) d = 0.0;  // -0.0 == 0.0
            return std::hash<double>{}(d) ^ salt;
        }
        case ValueTag::Timestamp: return std::hash<std::int64_t>{}(v.as_timestamp().ms) ^ salt;
        case ValueTag::Missing: return salt;
    }
    return salt;
}

std::string format_iso8601(Timestamp t) {
    using namespace std::chrono;
    const sys_time<milliseconds> tp{milliseconds{t.ms}};
    const auto day = floor<days>(tp);
    const year_month_day ymd{day};
    const hh_mm_ss<milliseconds> tod{tp - day};
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()), static_cast<int>(tod.subseconds().count()));
    return buf;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    std::int64_t v = 0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_float(std::string_view text) {
    double v = 0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
    if (std::isnan(v)) return std::nullopt;
    return v;
}

namespace {

bool take_digits(std::string_view& s, std::size_t n, int& out) {
    if (s.size() < n) return false;
    int v = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const char c = s[k];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    s.remove_prefix(n);
    return true;
}

bool take_char(std::string_view& s, char c) {
    if (s.empty() || s.front() != c) return false;
    s.remove_prefix(1);
    return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    if (text.find('-', 1) == std::string_view::npos) {
        if (auto ms = parse_int(text)) return Timestamp{*ms};
        return std::nullopt;
    }
    std::string_view s = text;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!take_digits(s, 4, y) || !take_char(s, '-') || !take_digits(s, 2, mo) || !take_char(s, '-') ||
        !take_digits(s, 2, d))
        return std::nullopt;
    if (!take_char(s, 'T') && !take_char(s, ' ')) return std::nullopt;
    if (!take_digits(s, 2, h) || !take_char(s, ':') || !take_digits(s, 2, mi) || !take_char(s, ':') ||
        !take_digits(s, 2, sec))
        return std::nullopt;
    std::int64_t frac_ms = 0;
    if (take_char(s, '.') || take_char(s, ',')) {
        int digits = 0;
        std::int64_t scaled = 0;
        while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
            if (digits < 3) scaled = scaled * 10 + (s.front() - '0');
            ++digits;
            s.remove_prefix(1);
        }
        if (digits == 0) return std::nullopt;
        for (int k = digits; k < 3; ++k) scaled *= 10;
        frac_ms = scaled;
    }
    std::int64_t offset_min = 0;
    if (take_char(s, 'Z') || take_char(s, 'z')) {
    } else if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        const int sign = s.front() == '-' ? -1 : 1;
        s.remove_prefix(1);
        int oh = 0, om = 0;
        if (!take_digits(s, 2, oh)) return std::nullopt;
        if (!s.empty()) {
            take_char(s, ':');
            if (!take_digits(s, 2, om)) return std::nullopt;
        }
        if (oh > 23 || om > 59) return std::nullopt;
        offset_min = sign * (oh * 60 + om);
    } else {
        return std::nullopt;  // zone is mandatory
    }
    if (!s.empty()) return std::nullopt;
    if (h > 23 || mi > 59 || sec > 60) return std::nullopt;

    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    const std::int64_t days_since = sys_days{ymd}.time_since_epoch().count();
    const std::int64_t seconds = days_since * 86400 + h * 3600 + mi * 60 + sec - offset_min * 60;
    return Timestamp{seconds * 1000 + frac_ms};
}

}  // namespace evdf
