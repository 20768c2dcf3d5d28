// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "evdf/bench.hpp"
#include "evdf/dfg.hpp"
#include "evdf/edf.hpp"
#include "evdf/error.hpp"
#include "evdf/eventlog.hpp"
#include "evdf/timing.hpp"
#include "evdf/transforms.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace fs = std::filesystem;
using namespace evdf;
namespace et = evdf::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Raw log with events regrouped so each case is contiguous (order within a
// case preserved).
et::RawLog contiguous(const et::RawLog& raw) {
    et::RawLog out;
    std::vector<std::string> order;
    std::map<std::string, std::vector<const et::RawEvent*>> by_case;
    for (const auto& e : raw) {
        auto& bucket = by_case[e.case_id];
        if (bucket.empty()) order.push_back(e.case_id);
        bucket.push_back(&e);
    }
    for (const auto& c : order) {
        for (const auto* e : by_case[c]) out.push_back(*e);
    }
    return out;
}

std::string check_conservation(const DfgGraph& g, std::uint64_t events, std::uint64_t cases) {
    if (g.total_edge_count() != events - cases) return "edge total != events - cases";
    if (g.total_start_count() != cases) return "start total != cases";
    if (g.total_end_count() != cases) return "end total != cases";
    return {};
}

// ---------------------------------------------------------------- criteria

Outcome dfg_equivalence() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    int logs = 0;
    for (int round = 0; round < 240 && o.ok; ++round) {
        const bool interleave = round % 3 != 0;
        const auto raw = et::random_raw_log(rng, {50, 30, 10, interleave});
        const EventLog log = et::to_event_log(raw, rng);
        const Dataframe df = log_to_dataframe(log);
        const DfgGraph reference = dfg_iterate(log);
        const std::string at = " (log " + std::to_string(round) + ")";
        if (!(reference == et::brute_force_dfg(raw))) o.fail("iterate != brute force" + at);
        for (unsigned w : {1u, 2u, 8u}) {
            if (!(dfg_mapreduce(df, w) == reference)) o.fail("mapreduce(" + std::to_string(w) + ") differs" + at);
        }
        if (!(dfg_shift_count(df, false) == reference)) o.fail("shift(unsorted) differs" + at);

        const auto grouped = contiguous(raw);
        const Dataframe contiguous_df = log_to_dataframe(et::to_event_log(grouped, rng));
        if (!(dfg_shift_count(contiguous_df, true) == reference)) o.fail("shift(assume_sorted) differs" + at);
        if (!(dfg_shift_count(contiguous_df, false) == reference)) o.fail("shift(unsorted, contiguous) differs" + at);
        ++logs;
    }
    if (o.ok) o.detail = std::to_string(logs) + " logs, 7 strategies each";
    return o;
}

Outcome algebra_properties() {
    Outcome o;
    std::mt19937_64 rng(77);
    int frames = 0;
    if (auto v = et::check_sort_tie_fixture(); !v.empty()) o.fail("tie fixture: " + v);
    for (int round = 0; round < 150 && o.ok; ++round) {
        const Dataframe df = et::random_frame(rng, 80, round % 2 == 0);
        const std::string at = " (frame " + std::to_string(round) + ")";
        for (const auto& v : {et::check_projection_laws(df, rng), et::check_group_partition(df), et::check_shift_law(df),
                              et::check_sort_laws(df), et::check_concat_shift_count(df),
                              et::check_merge_adds_one_column(df)}) {
            if (!v.empty()) o.fail(v + at);
        }
        ++frames;
    }
    if (o.ok) o.detail = std::to_string(frames) + " frames, 6 property groups + tie fixture";
    return o;
}

Outcome edge_conservation() {
    Outcome o;
    std::mt19937_64 rng(3);
    int logs = 0;
    for (int round = 0; round < 200 && o.ok; ++round) {
        const auto raw = et::random_raw_log(rng, {50, 30, 10, true});
        const Dataframe df = log_to_dataframe(et::to_event_log(raw, rng));
        const LogStats s = et::brute_force_stats(raw);
        for (const auto& g : {dfg_shift_count(df, false), dfg_mapreduce(df, 2)}) {
            if (auto v = check_conservation(g, s.events, s.cases); !v.empty()) o.fail(v);
        }
        ++logs;
    }
    for (std::uint64_t seed = 0; seed < 20 && o.ok; ++seed) {
        GenSpec spec;
        spec.num_cases = 500 + seed * 50;
        spec.num_activities = 3 + static_cast<std::uint32_t>(seed % 9);
        spec.mean_case_length = 1 + static_cast<double>(seed % 8);
        spec.seed = seed;
        spec.model = seed % 2 ? GenModel::SequentialWithNoise : GenModel::UniformRandom;
        const Dataframe df = generate(spec);
        if (auto v = check_conservation(dfg_shift_count(df, true), df.row_count(), spec.num_cases); !v.empty()) {
            o.fail(v + " (generated log " + std::to_string(seed) + ")");
        }
        ++logs;
    }
    if (o.ok) o.detail = std::to_string(logs) + " logs";
    return o;
}

Outcome edf_round_trip() {
    Outcome o;
    std::mt19937_64 rng(4242);
    int pairs = 0;
    for (int round = 0; round < 60 && o.ok; ++round) {
        const Dataframe df = et::random_frame(rng, 120);
        const auto compression = round % 2 ? Compression::Deflate : Compression::None;
        const auto bytes = write_edf(df, compression);
        const Dataframe full = read_edf(bytes);
        if (!equal_ignoring_index(full, df)) o.fail("read(all) differs from the written frame");
        std::vector<std::string> subset;
        for (const auto& name : df.column_names()) {
            if (rng() % 2) subset.push_back(name);
        }
        if (!(read_edf(bytes, subset) == full.select(subset))) o.fail("read(subset) != restriction of read(all)");
        ++pairs;
    }

    GenSpec spec;
    spec.num_cases = 3000;
    spec.num_activities = 20;
    spec.mean_case_length = 7;
    spec.seed = 9;
    spec.extra_attributes = 5;
    const auto bytes = write_edf(generate(spec), Compression::Deflate);
    EdfReadStats all;
    EdfReadStats two;
    read_edf(bytes, std::nullopt, &all);
    read_edf(bytes, std::vector<std::string>{"case", "activity"}, &two);
    const double ratio = static_cast<double>(two.block_bytes_decoded) / static_cast<double>(all.block_bytes_decoded);
    if (all.columns_decoded < 6) o.fail("file has fewer than 6 columns");
    if (!(ratio < 0.5)) o.fail(fmt("two-column decoded bytes are %.1f%% of all-column bytes", 100 * ratio));
    if (o.ok) {
        o.detail = std::to_string(pairs) + " frame/subset pairs; 2 of " + std::to_string(all.columns_decoded) +
                   " columns decode " + fmt("%.1f%% of the bytes", 100 * ratio);
    }
    return o;
}

Outcome golden_files() {
    Outcome o;
    const fs::path dir = EVDF_GOLDEN_DIR;
    const std::tuple<const char*, Dataframe, Compression> goldens[] = {
        {et::kGoldenEmpty, et::golden_empty_frame(), Compression::None},
        {et::kGoldenMixed, et::golden_mixed_frame(), Compression::None},
        {et::kGoldenDeflate, et::golden_deflate_frame(), Compression::Deflate},
    };
    for (const auto& [name, frame, compression] : goldens) {
        const auto expected = et::read_file((dir / name).string());
        if (write_edf(frame, compression) != expected) o.fail(std::string(name) + " does not byte-match");
        if (!(read_edf(expected) == frame)) o.fail(std::string(name) + " does not read back");
    }
    if (o.ok) o.detail = "3 fixtures byte-identical";
    return o;
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& t) {
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        mx += std::log(n[i]);
        my += std::log(t[i]);
    }
    mx /= static_cast<double>(n.size());
    my /= static_cast<double>(n.size());
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        sxy += (std::log(n[i]) - mx) * (std::log(t[i]) - my);
        sxx += (std::log(n[i]) - mx) * (std::log(n[i]) - mx);
    }
    return sxy / sxx;
}

Outcome scaling_shape() {
    Outcome o;
    std::vector<double> sizes;
    std::vector<double> filter_t;
    std::vector<double> sorted_t;
    std::vector<double> unsorted_t;
    for (const double events : {1e5, 3e5, 1e6}) {
        GenSpec spec;
        spec.num_cases = static_cast<std::uint64_t>(events / 7);
        spec.num_activities = 26;
        spec.mean_case_length = 7;
        spec.seed = 6;
        const Dataframe df = generate(spec);
        const ValueSet keep{most_frequent_activity(df)};
        sizes.push_back(static_cast<double>(df.row_count()));
        filter_t.push_back(median_seconds(3, [&] { (void)filter_events(df, "activity", keep); }));
        sorted_t.push_back(median_seconds(3, [&] { (void)dfg_shift_count(df, true); }));
        unsorted_t.push_back(median_seconds(3, [&] { (void)dfg_shift_count(df, false); }));
    }
    const double filter_k = loglog_slope(sizes, filter_t);
    const double sorted_k = loglog_slope(sizes, sorted_t);
    const double unsorted_k = loglog_slope(sizes, unsorted_t);
    if (!(filter_k < 1.3)) o.fail(fmt("filter exponent %.3f >= 1.3", filter_k));
    if (!(sorted_k < 1.3)) o.fail(fmt("shift(sorted) exponent %.3f >= 1.3", sorted_k));
    if (!(unsorted_k < 1.45)) o.fail(fmt("shift(unsorted) exponent %.3f >= 1.45", unsorted_k));
    const std::string exps = fmt("exponents filter %.3f, shift sorted %.3f, shift unsorted %.3f", filter_k, sorted_k,
                                 unsorted_k) +
                             fmt("; at 1e6 events: %.3fs / %.3fs / %.3fs", filter_t.back(), sorted_t.back(),
                                 unsorted_t.back());
    o.detail = o.ok ? exps : o.detail + " (" + exps + ")";
    return o;
}

Dataframe big_log() {
    GenSpec spec;
    spec.num_cases = 1000000 / 7;
    spec.num_activities = 26;
    spec.mean_case_length = 7;
    spec.seed = 2018;
    spec.extra_attributes = 7;
    return generate(spec);
}

Outcome selective_speedup(const fs::path& workdir, const Dataframe& df) {
    Outcome o;
    const fs::path path = workdir / "ten_columns.edf";
    write_edf_file(path, df, Compression::Deflate);
    const std::vector<std::string> two_cols{"case", "activity"};
    const double all = median_seconds(5, [&] { (void)read_edf_file(path); });
    const double two = median_seconds(5, [&] { (void)read_edf_file(path, two_cols); });
    const double ratio = two / all;
    const std::string detail = std::to_string(df.column_names().size()) + " columns, " +
                               std::to_string(df.row_count()) + " events: " +
                               fmt("all %.3fs, two %.3fs (%.1f%%)", all, two, 100 * ratio);
    if (df.column_names().size() != 10) o.fail("file does not have 10 columns");
    if (!(ratio < 0.6)) o.fail("two-column load not below 60%");
    o.detail = o.ok ? detail : o.detail + " (" + detail + ")";
    fs::remove(path);
    return o;
}

Outcome compression_effect(const Dataframe& df) {
    Outcome o;
    const double plain = static_cast<double>(write_edf(df, Compression::None).size());
    const double packed = static_cast<double>(write_edf(df, Compression::Deflate).size());
    const double ratio = packed / plain;
    const std::string detail = fmt("deflate %.0f bytes vs %.0f uncompressed (%.1f%%)", packed, plain, 100 * ratio);
    if (!(ratio <= 0.30)) o.fail("deflate above 30% of uncompressed");
    o.detail = o.ok ? detail : o.detail + " (" + detail + ")";
    return o;
}

Outcome stats_correctness() {
    Outcome o;
    std::mt19937_64 rng(100);
    for (int round = 0; round < 100 && o.ok; ++round) {
        const auto raw = et::random_raw_log(rng, {50, 30, 10, round % 2 == 0});
        const Dataframe df = log_to_dataframe(et::to_event_log(raw, rng));
        if (!(log_stats(df) == et::brute_force_stats(raw))) o.fail("log " + std::to_string(round) + " disagrees");
    }
    if (o.ok) o.detail = "100 logs";
    return o;
}

// ------------------------------------------------------------------- CLI

std::string quote(const std::string& s) {
    std::string out = "'";
    for (const char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_contract(const std::string& cli, const fs::path& workdir) {
    Outcome o;
    const fs::path dir = workdir / "cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto p = [&](const char* name) { return (dir / name).string(); };

    auto run = [&](const std::string& what, const std::string& args, const std::string& stdout_file) {
        const std::string cmd = quote(cli) + " " + args + " > " + quote(stdout_file) + " 2> " + quote(p("stderr.txt"));
        const int status = std::system(cmd.c_str());
        if (status != 0) o.fail(what + " exited with status " + std::to_string(status) + ": " + slurp(p("stderr.txt")));
        return status == 0;
    };

    const bool generated = run("gen",
                               "gen --cases 2000 --activities 9 --mean-len 7 --seed 11 --extra-attrs 2 -o " +
                                   quote(p("log.edf")),
                               p("gen.out"));
    if (!generated) return o;
    run("convert", "convert " + quote(p("log.edf")) + " -o " + quote(p("log.csv")), p("convert.out"));
    run("convert --columns", "convert " + quote(p("log.edf")) + " --columns case,activity", p("two.csv"));
    run("info", "info " + quote(p("log.csv")) + " --time-col timestamp", p("info.out"));
    run("filter", "filter " + quote(p("log.edf")) + " --keep-top-activity -o " + quote(p("top.edf")), p("filter.out"));
    run("filter --level case",
        "filter " + quote(p("log.edf")) + " --attr activity --values A3 --level case -o " + quote(p("cases.csv")),
        p("filter2.out"));
    run("dfg shift", "dfg " + quote(p("log.edf")) + " --algo shift --out csv", p("shift.csv"));
    run("dfg mapreduce", "dfg " + quote(p("log.edf")) + " --algo mapreduce --workers 4 --out csv", p("mr.csv"));
    run("dfg dot", "dfg " + quote(p("log.edf")) + " --out dot -o " + quote(p("g.dot")), p("dot.out"));
    run("bench", "bench " + quote(p("log.edf")) + " --columns two --repeat 3 --label L", p("bench.csv"));
    if (!o.ok) return o;

    const Dataframe df = read_edf_file(p("log.edf"));
    const LogStats s = log_stats(df);
    const std::string expected_info = std::to_string(s.events) + "," + std::to_string(s.cases) + "," +
                                      std::to_string(s.variants) + "," + std::to_string(s.classes) + "\n";
    if (slurp(p("info.out")) != expected_info) o.fail("info output '" + slurp(p("info.out")) + "'");

    CsvOptions csv;
    csv.timestamp_column = "timestamp";
    if (!equal_ignoring_index(ingest_csv(slurp(p("log.csv")), csv), df)) o.fail("convert csv does not round trip");
    const std::string two = slurp(p("two.csv"));
    if (two.rfind("case,activity\n", 0) != 0 || two.find("case,activity,") != std::string::npos) {
        o.fail("convert --columns does not yield exactly 2 columns");
    }
    if (ingest_csv(two, CsvOptions{}).row_count() != df.row_count()) o.fail("convert --columns lost rows");

    const Dataframe top = read_edf_file(p("top.edf"));
    if (top.row_count() == 0 || top.distinct_values("activity").size() != 1) o.fail("filter output malformed");
    const Dataframe cases = ingest_csv(slurp(p("cases.csv")), csv);
    if (!equal_ignoring_index(cases, filter_cases(df, "activity", ValueSet{AttrValue::of_str("A3")}))) {
        o.fail("case-level filter output differs from the library");
    }

    const std::string shift_csv = slurp(p("shift.csv"));
    if (shift_csv != slurp(p("mr.csv"))) o.fail("dfg shift and mapreduce outputs differ");
    if (shift_csv != dfg_to_edge_csv(dfg_iterate(dataframe_to_log(df)))) o.fail("dfg edge CSV differs from iterate");
    const std::regex edge_line(R"([^,\n]+,[^,\n]+,[1-9][0-9]*)");
    std::istringstream lines(shift_csv);
    std::string line;
    std::getline(lines, line);
    if (line != "source,target,count") o.fail("edge CSV header '" + line + "'");
    while (std::getline(lines, line)) {
        if (!std::regex_match(line, edge_line)) o.fail("edge CSV line '" + line + "'");
    }
    const std::string dot = slurp(p("g.dot"));
    if (dot.rfind("digraph dfg {\n", 0) != 0 || dot.substr(dot.size() - 2) != "}\n") o.fail("DOT output malformed");

    std::istringstream bench_lines(slurp(p("bench.csv")));
    std::getline(bench_lines, line);
    if (line != BenchReport::csv_header()) o.fail("bench header '" + line + "'");
    std::getline(bench_lines, line);
    const std::regex bench_row(R"(L,[0-9]+,[0-9]+\.[0-9]{3},[0-9]+,[0-9]+\.[0-9]{3},[0-9]+\.[0-9]{3},2)");
    if (!std::regex_match(line, bench_row)) o.fail("bench row '" + line + "'");

    if (std::system((quote(cli) + " dfg --bogus > /dev/null 2>&1").c_str()) == 0) o.fail("unknown flag accepted");
    if (o.ok) o.detail = "gen, convert, info, filter, dfg, bench; shift and mapreduce CSVs byte-identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string cli = "evdf";
    std::string workdir = (fs::temp_directory_path() / "evdf_acceptance").string();
    std::vector<int> only;
    app.add_option("--cli", cli, "Path to the evdf binary");
    app.add_option("--workdir", workdir, "Scratch directory");
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);
    fs::create_directories(workdir);

    const auto selected = [&](int k) { return only.empty() || std::find(only.begin(), only.end(), k) != only.end(); };
    std::optional<Dataframe> big;
    const auto big_frame = [&]() -> const Dataframe& {
        if (!big) big = big_log();
        return *big;
    };

    struct Criterion {
        std::string name;
        std::function<Outcome()> run;
        double budget_seconds = 0;  // 0: no limit
    };
    const std::vector<Criterion> criteria = {
        {"three-way DFG equivalence", dfg_equivalence, 60},
        {"transformation algebra properties", algebra_properties, 60},
        {"edge-count conservation", edge_conservation},
        {"EDF1 round trip and selective load", edf_round_trip, 30},
        {"golden-file bit-exactness", golden_files},
        {"scaling shape", scaling_shape, 600},
        {"selective-load speedup", [&] { return selective_speedup(workdir, big_frame()); }},
        {"compression effect", [&] { return compression_effect(big_frame()); }},
        {"stats correctness", stats_correctness},
        {"CLI contract", [&] { return cli_contract(cli, workdir); }},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int number = static_cast<int>(k + 1);
        if (!selected(number)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[k].run();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criteria[k].budget_seconds > 0 && secs >= criteria[k].budget_seconds) {
            outcome.fail(fmt("took %.1fs, budget %.0fs", secs, criteria[k].budget_seconds));
        }
        failures += !outcome.ok;
        std::cout << (outcome.ok ? "PASS" : "FAIL") << " [" << number << "] " << criteria[k].name << ": "
                  << outcome.detail << fmt(" [%.1fs]", secs) << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
