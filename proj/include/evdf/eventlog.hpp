#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evdf/dataframe.hpp"

namespace evdf {

inline constexpr std::string_view kDefaultCaseColumn = "case";
inline constexpr std::string_view kDefaultActivityColumn = "activity";

struct Event {
    std::string activity;
    /// Partial attribute map. Absence means "undefined"; Missing is never stored.
    std::map<std::string, AttrValue> attributes;
};

/// Classical event log: events in their total order, case membership by
/// position, and the activity alphabet.
struct EventLog {
    std::vector<Event> events;
    std::map<std::string, std::vector<std::size_t>> cases;
    std::set<std::string> activities;

    /// Throws InvalidArgument when a case is empty, refers to a bad position,
    /// an activity is not in `activities`, or an attribute stores Missing.
    void validate() const;
};

struct LogStats {
    std::uint64_t events = 0;
    std::uint64_t cases = 0;
    std::uint64_t variants = 0;
    std::uint64_t classes = 0;

    friend bool operator==(const LogStats&, const LogStats&) = default;
};

struct CsvOptions {
    std::string case_column{kDefaultCaseColumn};
    std::string activity_column{kDefaultActivityColumn};
    std::optional<std::string> timestamp_column;
    /// Columns without a hint are Str; the timestamp column defaults to Timestamp.
    std::map<std::string, ColumnType, std::less<>> type_hints;
};

/// Parses RFC-4180 CSV (header row, LF or CRLF, doubled-quote escaping).
/// Empty fields become Missing. Throws MalformedCsv, MissingMandatory,
/// TypeViolation.
Dataframe ingest_csv(std::string_view text, const CsvOptions& options);
Dataframe ingest_csv(std::istream& in, const CsvOptions& options);

/// Writes the frame as CSV with canonical rendering; Missing is an empty field.
void write_csv(std::ostream& out, const Dataframe& df);

/// Rows follow the log's event order, index 0..n-1. The case value is the
/// event's own `case_column` attribute when present, otherwise the id of the
/// single case that contains it. Throws SharedEvent, MissingMandatory.
Dataframe log_to_dataframe(const EventLog& log, std::string case_column = std::string(kDefaultCaseColumn),
                           std::string activity_column = std::string(kDefaultActivityColumn));

/// One event per row. The case value is kept as an event attribute and the
/// case id is its canonical rendering.
EventLog dataframe_to_log(const Dataframe& df);

LogStats log_stats(const Dataframe& df);

}  // namespace evdf
