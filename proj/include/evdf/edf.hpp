#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evdf/dataframe.hpp"
#include "evdf/eventlog.hpp"

namespace evdf {

// EDF1 layout (all integers little-endian):
//
//   "EDF1" | u16 version=1 | u64 row_count | u32 column_count
//   column_count x { u16 name_len | name | u8 type | u8 compression |
//                    u64 offset | u64 compressed_length | u64 uncompressed_length }
//   u32 case_column_ordinal | u32 activity_column_ordinal
//   column blocks, in directory order
//
// A block is a presence bitmap (ceil(rows/8) bytes, LSB-first) followed by the
// present values in row order: Int/Timestamp as i64, Float as IEEE-754 f64,
// Str as u32 length + bytes, Object as a type byte + that type's encoding.
// With compression=1 the whole block is a raw DEFLATE stream. The dataframe
// index is not stored; reads always yield 0..row_count-1.

enum class Compression : std::uint8_t { None = 0, Deflate = 1 };

inline constexpr char kEdfMagic[4] = {'E', 'D', 'F', '1'};
inline constexpr std::uint16_t kEdfVersion = 1;

struct EdfColumnMeta {
    std::string name;
    ColumnType type = ColumnType::Object;
    Compression compression = Compression::None;
    std::uint64_t offset = 0;
    std::uint64_t compressed_length = 0;
    std::uint64_t uncompressed_length = 0;
};

struct EdfHeader {
    std::uint16_t version = kEdfVersion;
    std::uint64_t row_count = 0;
    std::vector<EdfColumnMeta> directory;
    std::uint32_t case_column_ordinal = 0;
    std::uint32_t activity_column_ordinal = 0;
    /// Bytes occupied by the header itself.
    std::uint64_t header_length = 0;
};

/// Byte accounting for one read.
struct EdfReadStats {
    std::uint64_t bytes_read = 0;
    /// Sum of compressed_length over the decoded columns.
    std::uint64_t block_bytes_decoded = 0;
    std::uint64_t columns_decoded = 0;
};

std::vector<std::uint8_t> write_edf(const Dataframe& df, Compression compression);
void write_edf_file(const std::filesystem::path& path, const Dataframe& df, Compression compression);

/// Parses and validates the header of an in-memory file. Throws BadMagic,
/// UnsupportedVersion, CorruptDirectory, Truncated.
EdfHeader read_edf_header(std::span<const std::uint8_t> bytes);
EdfHeader read_edf_header_file(const std::filesystem::path& path);

/// Decodes the requested columns only (all when `columns` is nullopt). The
/// case and activity columns are always included.
Dataframe read_edf(std::span<const std::uint8_t> bytes, const std::optional<std::vector<std::string>>& columns = {},
                   EdfReadStats* stats = nullptr);

/// Like read_edf, but seeks so unrequested blocks are never read from disk.
Dataframe read_edf_file(const std::filesystem::path& path,
                        const std::optional<std::vector<std::string>>& columns = {}, EdfReadStats* stats = nullptr);

std::vector<std::uint8_t> csv_to_edf(std::string_view csv, const CsvOptions& options, Compression compression);
std::vector<std::uint8_t> csv_to_edf(std::istream& csv, const CsvOptions& options, Compression compression);

}  // namespace evdf
