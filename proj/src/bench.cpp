#include "evdf/bench.hpp"

#include <cstdio>
#include <optional>

#include "evdf/dfg.hpp"
#include "evdf/edf.hpp"
#include "evdf/error.hpp"
#include "evdf/timing.hpp"

namespace evdf {

namespace {

std::string fixed3(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", seconds);
    return buf;
}

}  // namespace

std::string BenchReport::csv_header() {
    return "label,disk_bytes,load_s,ram_bytes,filter_s,dfg_s,columns_loaded";
}

std::string BenchReport::csv_row() const {
    std::string label = log_label;
    if (label.find_first_of(",\"\r\n") != std::string::npos) {
        std::string quoted = "\"";
        for (const char c : label) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        label = quoted + "\"";
    }
    return label + "," + std::to_string(disk_bytes) + "," + fixed3(load_seconds) + "," + std::to_string(ram_bytes) +
           "," + fixed3(filter_seconds) + "," + fixed3(dfg_seconds) + "," + std::to_string(columns_loaded);
}

std::string BenchReport::human_readable() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "log %s: %.2f MB on disk, %llu column(s) loaded in %.3f s, %.2f MB in memory, "
                  "filter %.3f s, DFG %.3f s\n",
                  log_label.c_str(), static_cast<double>(disk_bytes) / 1e6,
                  static_cast<unsigned long long>(columns_loaded), load_seconds,
                  static_cast<double>(ram_bytes) / 1e6, filter_seconds, dfg_seconds);
    return buf;
}

BenchReport bench(const std::filesystem::path& path, ColumnsMode mode, unsigned repeat, std::string label) {
    if (repeat < 3) throw Error(Errc::InvalidArgument, "bench needs at least 3 repeats");
    BenchReport report;
    report.log_label = label.empty() ? path.filename().string() : std::move(label);
    std::error_code ec;
    report.disk_bytes = std::filesystem::file_size(path, ec);
    if (ec) throw Error(Errc::Io, "cannot stat '" + path.string() + "': " + ec.message());

    std::optional<std::vector<std::string>> columns;
    if (mode == ColumnsMode::Two) {
        const EdfHeader h = read_edf_header_file(path);
        columns = std::vector<std::string>{h.directory[h.case_column_ordinal].name,
                                           h.directory[h.activity_column_ordinal].name};
    }
    std::optional<Dataframe> df;
    report.load_seconds = median_seconds(repeat, [&] {
        df.reset();
        df = read_edf_file(path, columns);
    });
    report.columns_loaded = df->column_count();
    report.ram_bytes = df->memory_footprint();

    const ValueSet top{most_frequent_activity(*df)};
    std::size_t kept = 0;
    report.filter_seconds = median_seconds(repeat, [&] { kept += filter_events(*df, df->activity_column(), top).row_count(); });
    std::size_t edges = 0;
    report.dfg_seconds = median_seconds(repeat, [&] { edges += dfg_shift_count(*df, false).edges.size(); });
    (void)kept;
    (void)edges;
    return report;
}

}  // namespace evdf
