#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "evdf/dataframe.hpp"

namespace evdf {

enum class GenModel {
    /// Every activity drawn independently and uniformly.
    UniformRandom,
    /// A0 -> A1 -> ... cyclically, with a 10% chance of a uniform jump.
    SequentialWithNoise,
};

/// Synthetic log recipe. Case lengths are 1 + Poisson(mean_case_length - 1).
struct GenSpec {
    std::uint64_t num_cases = 1;
    std::uint32_t num_activities = 1;
    double mean_case_length = 1.0;
    std::uint64_t seed = 0;
    GenModel model = GenModel::UniformRandom;
    /// Additional low-cardinality string attributes "attr_0", "attr_1", ...
    std::uint32_t extra_attributes = 0;
};

inline constexpr std::string_view kGenCaseColumn = "case";
inline constexpr std::string_view kGenActivityColumn = "activity";
inline constexpr std::string_view kGenTimestampColumn = "timestamp";

/// Deterministic in `spec` (seed included). Rows are grouped by case, with
/// timestamps increasing inside each case. Throws InvalidArgument.
Dataframe generate(const GenSpec& spec);

enum class ColumnsMode { All, Two };

struct BenchReport {
    std::string log_label;
    std::uint64_t disk_bytes = 0;
    double load_seconds = 0;
    std::uint64_t ram_bytes = 0;
    double filter_seconds = 0;
    double dfg_seconds = 0;
    std::uint64_t columns_loaded = 0;

    static std::string csv_header();
    std::string csv_row() const;
    std::string human_readable() const;
};

/// Times loading `path`, filtering on the most frequent activity and the
/// shifting DFG (unsorted input), each as the median of `repeat` runs
/// (at least 3). Throws InvalidArgument, Io.
BenchReport bench(const std::filesystem::path& path, ColumnsMode mode, unsigned repeat = 3, std::string label = {});

}  // namespace evdf
