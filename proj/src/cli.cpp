#include "evdf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "evdf/bench.hpp"
#include "evdf/dfg.hpp"
#include "evdf/edf.hpp"
#include "evdf/error.hpp"
#include "evdf/eventlog.hpp"
#include "evdf/transforms.hpp"

namespace evdf {

namespace {

struct LoadFlags {
    std::string input;
    std::string case_col{kDefaultCaseColumn};
    std::string act_col{kDefaultActivityColumn};
    std::string time_col;
    std::vector<std::string> types;
    bool sort_by_time = false;
};

void add_load_flags(CLI::App* cmd, LoadFlags& f) {
    cmd->add_option("input", f.input, "Input log (.edf or .csv)")->required();
    cmd->add_option("--case-col", f.case_col, "Case identifier column (CSV input)");
    cmd->add_option("--act-col", f.act_col, "Activity column (CSV input)");
    cmd->add_option("--time-col", f.time_col, "Timestamp column (CSV input)");
    cmd->add_option("--types", f.types, "Column type hints name:str|int|float|timestamp|object")->delimiter(',');
    cmd->add_flag("--sort-by-time", f.sort_by_time, "Stable-sort events by the timestamp column after loading");
}

bool has_extension(const std::string& path, std::string_view ext) {
    return std::filesystem::path(path).extension() == ext;
}

ColumnType parse_type(const std::string& name) {
    if (name == "str") return ColumnType::Str;
    if (name == "int") return ColumnType::Int;
    if (name == "float") return ColumnType::Float;
    if (name == "timestamp") return ColumnType::Timestamp;
    if (name == "object") return ColumnType::Object;
    throw CLI::ValidationError("--types", "unknown column type '" + name + "'");
}

CsvOptions csv_options(const LoadFlags& f) {
    CsvOptions opt;
    opt.case_column = f.case_col;
    opt.activity_column = f.act_col;
    if (!f.time_col.empty()) opt.timestamp_column = f.time_col;
    for (const auto& hint : f.types) {
        const auto colon = hint.rfind(':');
        if (colon == std::string::npos) throw CLI::ValidationError("--types", "expected name:type, got '" + hint + "'");
        opt.type_hints[hint.substr(0, colon)] = parse_type(hint.substr(colon + 1));
    }
    return opt;
}

Dataframe load(const LoadFlags& f, const std::optional<std::vector<std::string>>& columns = {}) {
    Dataframe df = [&] {
        if (has_extension(f.input, ".edf")) return read_edf_file(f.input, columns);
        std::ifstream in(f.input, std::ios::binary);
        if (!in) throw Error(Errc::Io, "cannot open '" + f.input + "'");
        Dataframe csv = ingest_csv(in, csv_options(f));
        if (columns && !columns->empty()) csv = csv.select(*columns);
        return csv;
    }();
    if (f.sort_by_time) {
        if (f.time_col.empty()) throw CLI::ValidationError("--sort-by-time", "requires --time-col");
        df = sort_by(df, f.time_col);
    }
    return df;
}

// Writes `df` to `path` (format by extension) or CSV to `out`.
void emit(const Dataframe& df, const std::string& path, Compression compression, std::ostream& out) {
    if (path.empty()) {
        write_csv(out, df);
    } else if (has_extension(path, ".edf")) {
        write_edf_file(path, df, compression);
    } else {
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
        write_csv(file, df);
        if (!file) throw Error(Errc::Io, "failed writing '" + path + "'");
    }
}

void emit_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw Error(Errc::Io, "failed writing '" + path + "'");
}

// Reads a --values token as a value of the column's declared type.
AttrValue typed_value(const std::string& text, ColumnType type) {
    auto fail = [&] { return Error(Errc::TypeViolation, "'" + text + "' is not a " + std::string(to_string(type))); };
    switch (type) {
        case ColumnType::Str:
        case ColumnType::Object: return AttrValue::of_str(text);
        case ColumnType::Int:
            if (auto v = parse_int(text)) return AttrValue::of_int(*v);
            throw fail();
        case ColumnType::Float:
            if (auto v = parse_float(text)) return AttrValue::of_float(*v);
            throw fail();
        case ColumnType::Timestamp:
            if (auto v = parse_timestamp(text)) return AttrValue::of_timestamp(*v);
            throw fail();
    }
    throw fail();
}

const std::map<std::string, Compression> kCompressions{{"none", Compression::None}, {"deflate", Compression::Deflate}};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"evdf: columnar event dataframes for process mining"};
    app.require_subcommand(1);

    // convert
    LoadFlags convert_flags;
    std::string convert_out;
    std::string compress_name = "deflate";
    std::vector<std::string> convert_columns;
    auto* convert = app.add_subcommand("convert", "Convert between CSV and EDF1");
    add_load_flags(convert, convert_flags);
    convert->add_option("-o,--out", convert_out, "Output path (.edf or .csv); CSV to stdout when omitted");
    convert->add_option("--compress", compress_name, "EDF1 block compression")
        ->check(CLI::IsMember({"none", "deflate"}));
    convert->add_option("--columns", convert_columns, "Columns to load (case and activity always kept)")
        ->delimiter(',');

    // info
    LoadFlags info_flags;
    auto* info = app.add_subcommand("info", "Print events,cases,variants,classes");
    add_load_flags(info, info_flags);

    // filter
    LoadFlags filter_flags;
    std::string filter_attr;
    std::vector<std::string> filter_values;
    bool keep_top = false;
    std::string level = "event";
    std::string filter_out;
    std::string filter_compress = "deflate";
    auto* filter = app.add_subcommand("filter", "Keep events (or whole cases) by attribute value");
    add_load_flags(filter, filter_flags);
    auto* attr_opt = filter->add_option("--attr", filter_attr, "Attribute to test");
    auto* values_opt = filter->add_option("--values", filter_values, "Allowed values")->delimiter(',');
    auto* top_opt = filter->add_flag("--keep-top-activity", keep_top, "Keep the most frequent activity");
    values_opt->needs(attr_opt);
    top_opt->excludes(values_opt)->excludes(attr_opt);
    filter->add_option("--level", level, "Filter granularity")->check(CLI::IsMember({"event", "case"}));
    filter->add_option("-o,--out", filter_out, "Output path (.edf or .csv); CSV to stdout when omitted");
    filter->add_option("--compress", filter_compress, "EDF1 block compression")
        ->check(CLI::IsMember({"none", "deflate"}));

    // dfg
    LoadFlags dfg_flags;
    std::string algo = "shift";
    unsigned workers = 1;
    std::string dfg_format = "dot";
    std::string dfg_output;
    bool assume_sorted = false;
    auto* dfg = app.add_subcommand("dfg", "Discover the directly-follows graph");
    add_load_flags(dfg, dfg_flags);
    dfg->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"iterate", "mapreduce", "shift"}));
    dfg->add_option("--workers", workers, "Map-reduce workers")->check(CLI::PositiveNumber);
    dfg->add_option("--out", dfg_format, "Output format")->check(CLI::IsMember({"dot", "csv"}));
    dfg->add_option("-o,--output", dfg_output, "Output file; stdout when omitted");
    dfg->add_flag("--assume-sorted", assume_sorted, "Rows of each case are already contiguous (shift only)");

    // gen
    GenSpec gen_spec;
    std::string model = "uniform";
    std::string gen_out;
    std::string gen_compress = "deflate";
    auto* gen = app.add_subcommand("gen", "Generate a synthetic log");
    gen->add_option("--cases", gen_spec.num_cases, "Number of cases")->check(CLI::PositiveNumber);
    gen->add_option("--activities", gen_spec.num_activities, "Activity alphabet size")->check(CLI::PositiveNumber);
    gen->add_option("--mean-len", gen_spec.mean_case_length, "Mean events per case")->check(CLI::Range(1.0, 1e9));
    gen->add_option("--seed", gen_spec.seed, "Random seed");
    gen->add_option("--model", model, "Control-flow model")->check(CLI::IsMember({"uniform", "sequential"}));
    gen->add_option("--extra-attrs", gen_spec.extra_attributes, "Extra low-cardinality string attributes");
    gen->add_option("-o,--out", gen_out, "Output path (.edf or .csv); CSV to stdout when omitted");
    gen->add_option("--compress", gen_compress, "EDF1 block compression")->check(CLI::IsMember({"none", "deflate"}));

    // bench
    std::string bench_input;
    std::string bench_columns = "all";
    unsigned bench_repeat = 3;
    std::string bench_label;
    auto* bench_cmd = app.add_subcommand("bench", "Measure load/filter/DFG on an EDF1 file");
    bench_cmd->add_option("input", bench_input, "EDF1 file")->required();
    bench_cmd->add_option("--columns", bench_columns, "Columns to load")->check(CLI::IsMember({"all", "two"}));
    bench_cmd->add_option("--repeat", bench_repeat, "Runs per measurement (>= 3)")->check(CLI::Range(3u, 1000000u));
    bench_cmd->add_option("--label", bench_label, "Label for the report row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "evdf: " << e.what() << "\n";
        err << "run 'evdf --help' for usage\n";
        return kExitUsage;
    }

    try {
        if (*convert) {
            std::optional<std::vector<std::string>> cols;
            if (!convert_columns.empty()) cols = convert_columns;
            emit(load(convert_flags, cols), convert_out, kCompressions.at(compress_name), out);
        } else if (*info) {
            const LogStats s = log_stats(load(info_flags));
            out << s.events << ',' << s.cases << ',' << s.variants << ',' << s.classes << '\n';
        } else if (*filter) {
            if (!keep_top && filter_attr.empty()) {
                err << "evdf filter: give --attr/--values or --keep-top-activity\n";
                return kExitUsage;
            }
            const Dataframe df = load(filter_flags);
            std::string attr = filter_attr;
            ValueSet allowed;
            if (keep_top) {
                attr = df.activity_column();
                if (df.row_count()) allowed.insert(most_frequent_activity(df));
            } else {
                const ColumnType type = df.column(attr).type;
                for (const auto& v : filter_values) allowed.insert(typed_value(v, type));
            }
            const Dataframe kept = level == "case" ? filter_cases(df, attr, allowed) : filter_events(df, attr, allowed);
            emit(kept, filter_out, kCompressions.at(filter_compress), out);
        } else if (*dfg) {
            const Dataframe df = load(dfg_flags);
            DfgGraph g;
            if (algo == "iterate") {
                g = dfg_iterate(dataframe_to_log(df));
            } else if (algo == "mapreduce") {
                g = dfg_mapreduce(df, workers);
            } else {
                g = dfg_shift_count(df, assume_sorted);
            }
            emit_text(dfg_format == "csv" ? dfg_to_edge_csv(g) : dfg_to_dot(g), dfg_output, out);
        } else if (*gen) {
            gen_spec.model = model == "sequential" ? GenModel::SequentialWithNoise : GenModel::UniformRandom;
            emit(generate(gen_spec), gen_out, kCompressions.at(gen_compress), out);
        } else if (*bench_cmd) {
            const BenchReport r = bench(bench_input, bench_columns == "two" ? ColumnsMode::Two : ColumnsMode::All,
                                        bench_repeat, bench_label);
            out << BenchReport::csv_header() << '\n' << r.csv_row() << '\n';
            err << r.human_readable();
        }
    } catch (const CLI::ValidationError& e) {
        err << "evdf: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "evdf: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "evdf: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

}  // namespace evdf
