#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evdf/dataframe.hpp"

namespace evdf::testing {

Column str_column(const std::vector<std::string>& values);

/// Two Str columns "case" and "act".
Dataframe case_act_frame(const std::vector<std::string>& cases, const std::vector<std::string>& acts);

/// Frames checked in under tests/golden.
Dataframe golden_empty_frame();
Dataframe golden_mixed_frame();
Dataframe golden_deflate_frame();

inline constexpr const char* kGoldenEmpty = "empty.edf";
inline constexpr const char* kGoldenMixed = "mixed5.edf";
inline constexpr const char* kGoldenDeflate = "deflate1000.edf";

/// Random frame: "case"/"act" Str columns plus a few typed and Object
/// columns with Missing slots. Index entries are distinct but shuffled and
/// non-contiguous when `scramble_index` is set.
Dataframe random_frame(std::mt19937_64& rng, std::size_t max_rows, bool scramble_index = true);

std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace evdf::testing
