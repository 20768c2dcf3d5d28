#include "evdf/eventlog.hpp"

#include <istream>
#include <iterator>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "evdf/error.hpp"

namespace evdf {

void EventLog::validate() const {
    for (const auto& [id, positions] : cases) {
        if (positions.empty()) throw Error(Errc::InvalidArgument, "case '" + id + "' has no events");
        for (const auto p : positions) {
            if (p >= events.size()) throw Error(Errc::InvalidArgument, "case '" + id + "' refers to a missing event");
        }
    }
    for (const auto& e : events) {
        if (!activities.count(e.activity)) {
            throw Error(Errc::InvalidArgument, "activity '" + e.activity + "' is not in the activity set");
        }
        for (const auto& [name, value] : e.attributes) {
            if (value.is_missing()) throw Error(Errc::InvalidArgument, "attribute '" + name + "' stores Missing");
        }
    }
}

// ---------------------------------------------------------------- CSV input

namespace {

class CsvParser {
public:
    explicit CsvParser(std::string_view text) : text_(text) {}

    bool at_end() const { return pos_ >= text_.size(); }
    std::size_t line() const { return line_; }

    // Reads one record. Returns false at end of input.
    bool next(std::vector<std::string>& fields) {
        fields.clear();
        if (at_end()) return false;
        std::string field;
        while (true) {
            field.clear();
            if (pos_ < text_.size() && text_[pos_] == '"') {
                ++pos_;
                while (true) {
                    if (pos_ >= text_.size()) fail("unterminated quoted field");
                    const char c = text_[pos_++];
                    if (c == '"') {
                        if (pos_ < text_.size() && text_[pos_] == '"') {
                            field += '"';
                            ++pos_;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') ++line_;
                        field += c;
                    }
                }
                if (pos_ < text_.size() && !is_delim(text_[pos_])) fail("characters after closing quote");
            } else {
                while (pos_ < text_.size() && !is_delim(text_[pos_])) {
                    if (text_[pos_] == '"') fail("quote inside unquoted field");
                    field += text_[pos_++];
                }
            }
            fields.push_back(field);
            if (pos_ >= text_.size()) return true;
            const char d = text_[pos_++];
            if (d == ',') continue;
            if (d == '\r') {
                if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
            }
            ++line_;
            return true;
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(Errc::MalformedCsv, what + " on line " + std::to_string(line_));
    }

private:
    static bool is_delim(char c) { return c == ',' || c == '\n' || c == '\r'; }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

AttrValue convert_field(const std::string& field, ColumnType type, const std::string& column, std::size_t line) {
    if (field.empty()) return AttrValue::missing();
    auto bad = [&]() -> Error {
        return Error(Errc::TypeViolation, "cannot read '" + field + "' as " + std::string(to_string(type)) +
                                              " in column '" + column + "' on line " + std::to_string(line));
    };
    switch (type) {
        case ColumnType::Str:
        case ColumnType::Object: return AttrValue::of_str(field);
        case ColumnType::Int:
            if (auto v = parse_int(field)) return AttrValue::of_int(*v);
            throw bad();
        case ColumnType::Float:
            if (auto v = parse_float(field)) return AttrValue::of_float(*v);
            throw bad();
        case ColumnType::Timestamp:
            if (auto v = parse_timestamp(field)) return AttrValue::of_timestamp(*v);
            throw bad();
    }
    throw bad();
}

}  // namespace

Dataframe ingest_csv(std::string_view text, const CsvOptions& options) {
    CsvParser parser(text);
    std::vector<std::string> header;
    if (!parser.next(header)) throw Error(Errc::MalformedCsv, "missing header row");

    std::vector<std::pair<std::string, Column>> columns;
    columns.reserve(header.size());
    for (const auto& name : header) {
        ColumnType type = ColumnType::Str;
        if (auto it = options.type_hints.find(name); it != options.type_hints.end()) {
            type = it->second;
        } else if (options.timestamp_column && *options.timestamp_column == name) {
            type = ColumnType::Timestamp;
        }
        columns.emplace_back(name, Column{type, {}});
    }
    for (const auto* required : {&options.case_column, &options.activity_column}) {
        bool found = false;
        for (const auto& name : header) found = found || name == *required;
        if (!found) throw Error(Errc::MissingMandatory, "CSV has no column '" + *required + "'");
    }
    if (options.timestamp_column) {
        bool found = false;
        for (const auto& name : header) found = found || name == *options.timestamp_column;
        if (!found) throw Error(Errc::UnknownAttribute, "CSV has no column '" + *options.timestamp_column + "'");
    }

    std::vector<std::string> fields;
    while (true) {
        const std::size_t line = parser.line();
        if (!parser.next(fields)) break;
        if (fields.size() == 1 && fields.front().empty() && header.size() > 1) continue;  // blank line
        if (fields.size() != header.size()) {
            throw Error(Errc::MalformedCsv, "line " + std::to_string(line) + " has " + std::to_string(fields.size()) +
                                                " fields, header has " + std::to_string(header.size()));
        }
        for (std::size_t k = 0; k < fields.size(); ++k) {
            auto& [name, col] = columns[k];
            col.values.push_back(convert_field(fields[k], col.type, name, line));
        }
    }
    return Dataframe::build(std::move(columns), options.case_column, options.activity_column);
}

Dataframe ingest_csv(std::istream& in, const CsvOptions& options) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw Error(Errc::Io, "failed reading CSV input");
    return ingest_csv(std::string_view(text), options);
}

namespace {

void write_field(std::ostream& out, std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        out << s;
        return;
    }
    out << '"';
    for (const char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

void write_csv(std::ostream& out, const Dataframe& df) {
    const auto& cols = df.columns();
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k) out << ',';
        write_field(out, cols[k].name);
    }
    out << '\n';
    std::string buf;
    for (std::size_t row = 0; row < df.row_count(); ++row) {
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k) out << ',';
            const AttrValue& v = cols[k].column->values[row];
            if (v.is_missing()) continue;
            buf.clear();
            render_to(buf, v);
            write_field(out, buf);
        }
        out << '\n';
    }
}

// ------------------------------------------------------------ log bridge

Dataframe log_to_dataframe(const EventLog& log, std::string case_column, std::string activity_column) {
    constexpr std::size_t kNoCase = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(log.events.size(), kNoCase);
    std::vector<const std::string*> case_ids;
    for (const auto& [id, positions] : log.cases) {
        for (const auto p : positions) {
            if (p >= log.events.size()) throw Error(Errc::InvalidArgument, "case '" + id + "' refers to a missing event");
            if (owner[p] != kNoCase && owner[p] != case_ids.size()) {
                throw Error(Errc::SharedEvent, "event " + std::to_string(p) + " belongs to cases '" +
                                                   *case_ids[owner[p]] + "' and '" + id + "'");
            }
            owner[p] = case_ids.size();
        }
        case_ids.push_back(&id);
    }

    const std::size_t n = log.events.size();
    std::vector<std::pair<std::string, Column>> columns;
    std::unordered_map<std::string, std::size_t> slot;
    auto column_for = [&](const std::string& name) -> Column& {
        auto [it, inserted] = slot.try_emplace(name, columns.size());
        if (inserted) columns.emplace_back(name, Column{ColumnType::Object, std::vector<AttrValue>(n)});
        return columns[it->second].second;
    };
    column_for(case_column);
    column_for(activity_column);

    for (std::size_t i = 0; i < n; ++i) {
        const Event& e = log.events[i];
        for (const auto& [name, value] : e.attributes) {
            if (name == activity_column || value.is_missing()) continue;
            column_for(name).values[i] = value;
        }
        column_for(activity_column).values[i] = AttrValue::of_str(e.activity);
        Column& case_col = column_for(case_column);
        if (case_col.values[i].is_missing()) {
            if (owner[i] == kNoCase) {
                throw Error(Errc::MissingMandatory, "event " + std::to_string(i) + " has no case");
            }
            case_col.values[i] = AttrValue::of_str(*case_ids[owner[i]]);
        }
    }

    // Refine Object columns whose present values share one tag.
    for (auto& [name, col] : columns) {
        std::optional<ValueTag> shared;
        bool uniform = true;
        for (const auto& v : col.values) {
            if (v.is_missing()) continue;
            if (!shared) {
                shared = v.tag();
            } else if (*shared != v.tag()) {
                uniform = false;
                break;
            }
        }
        if (uniform && shared) col.type = static_cast<ColumnType>(static_cast<std::uint8_t>(*shared));
    }
    return Dataframe::build(std::move(columns), std::move(case_column), std::move(activity_column));
}

EventLog dataframe_to_log(const Dataframe& df) {
    EventLog log;
    log.events.reserve(df.row_count());
    const Column& cases = df.column(df.case_column());
    const Column& acts = df.column(df.activity_column());
    for (std::size_t row = 0; row < df.row_count(); ++row) {
        Event e;
        e.activity = render(acts.values[row]);
        for (const auto& [name, col] : df.columns()) {
            if (name == df.activity_column()) continue;
            const AttrValue& v = col->values[row];
            if (!v.is_missing()) e.attributes.emplace(name, v);
        }
        log.activities.insert(e.activity);
        log.cases[render(cases.values[row])].push_back(row);
        log.events.push_back(std::move(e));
    }
    return log;
}

LogStats log_stats(const Dataframe& df) {
    LogStats s;
    s.events = df.row_count();
    const Column& cases = df.column(df.case_column());
    const Column& acts = df.column(df.activity_column());

    std::unordered_map<AttrValue, std::uint32_t, AttrValueHash> activity_id;
    std::unordered_map<AttrValue, std::size_t, AttrValueHash> case_slot;
    std::vector<std::vector<std::uint32_t>> traces;
    for (std::size_t row = 0; row < df.row_count(); ++row) {
        auto [ait, anew] = activity_id.try_emplace(acts.values[row], static_cast<std::uint32_t>(activity_id.size()));
        auto [cit, cnew] = case_slot.try_emplace(cases.values[row], traces.size());
        if (cnew) traces.emplace_back();
        traces[cit->second].push_back(ait->second);
    }
    struct TraceHash {
        std::size_t operator()(const std::vector<std::uint32_t>& t) const noexcept {
            std::size_t h = t.size();
            for (const auto a : t) h = h * 1000003u ^ a;
            return h;
        }
    };
    std::unordered_set<std::vector<std::uint32_t>, TraceHash> variants(traces.begin(), traces.end());
    s.cases = traces.size();
    s.classes = activity_id.size();
    s.variants = variants.size();
    return s;
}

}  // namespace evdf
