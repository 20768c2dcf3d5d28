#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evdf/value.hpp"

namespace evdf {

/// One attribute's values in row order. Missing slots are explicit.
struct Column {
    ColumnType type = ColumnType::Object;
    std::vector<AttrValue> values;

    friend bool operator==(const Column&, const Column&) = default;
};

using ColumnPtr = std::shared_ptr<const Column>;

struct NamedColumn {
    std::string name;
    ColumnPtr column;
};

/// Indexed columnar table of events.
///
/// Every column holds exactly `row_count()` slots and row `k` of every column
/// belongs to index entry `index()[k]`. Index entries are distinct signed
/// integers; they need not be contiguous or ordered (shift produces -1,
/// sort keeps entries attached to their rows). The case and activity columns
/// exist and never hold Missing.
///
/// Frames are immutable. Transformations return new frames and share the
/// untouched columns by reference, so a frame is safe to read from any
/// number of threads.
class Dataframe {
public:
    /// Validating constructor. Throws LengthMismatch, DuplicateIndex,
    /// MissingMandatory or TypeViolation.
    static Dataframe build(std::vector<std::int64_t> index,
                           std::vector<std::pair<std::string, Column>> columns,
                           std::string case_column, std::string activity_column);

    /// Build with index 0..n-1.
    static Dataframe build(std::vector<std::pair<std::string, Column>> columns,
                           std::string case_column, std::string activity_column);

    /// Assembles a frame from parts that the caller guarantees are valid.
    /// Only structural checks (lengths, mandatory columns present, unique
    /// names) are performed; used by transformations whose output is valid
    /// by construction.
    static Dataframe assemble(std::shared_ptr<const std::vector<std::int64_t>> index,
                              std::vector<NamedColumn> columns, std::string case_column,
                              std::string activity_column);

    std::size_t row_count() const noexcept { return index_->size(); }
    std::size_t column_count() const noexcept { return columns_.size(); }

    std::span<const std::int64_t> index() const noexcept { return *index_; }
    const std::shared_ptr<const std::vector<std::int64_t>>& index_ptr() const noexcept { return index_; }

    const std::string& case_column() const noexcept { return case_column_; }
    const std::string& activity_column() const noexcept { return activity_column_; }

    /// Columns in insertion order.
    const std::vector<NamedColumn>& columns() const noexcept { return columns_; }
    std::vector<std::string> column_names() const;

    bool has_column(std::string_view name) const;
    /// Throws UnknownAttribute.
    const Column& column(std::string_view name) const;
    const ColumnPtr& column_ptr(std::string_view name) const;
    std::size_t column_position(std::string_view name) const;

    /// O(1) in rows and columns. Throws UnknownAttribute / RowOutOfRange.
    const AttrValue& value_at(std::size_t row, std::string_view attr) const;

    /// (index entry, value) pairs in positional order.
    std::vector<std::pair<std::int64_t, AttrValue>> column_values(std::string_view attr) const;

    /// Deduplicated column values in first-occurrence order, Missing included.
    std::vector<AttrValue> distinct_values(std::string_view attr) const;

    /// Deterministic size estimate in bytes:
    ///   kFrameOverhead
    ///   + per column: kColumnOverhead + name length
    ///   + 8 bytes per index entry
    ///   + kSlotBytes per value slot (tag byte + 8-byte payload)
    ///   + byte length of every stored string.
    std::size_t memory_footprint() const;

    static constexpr std::size_t kFrameOverhead = 64;
    static constexpr std::size_t kColumnOverhead = 32;
    static constexpr std::size_t kSlotBytes = 9;

    /// Same frame restricted to `names`; the case and activity columns are
    /// always kept. Order follows this frame's column order.
    Dataframe select(std::span<const std::string> names) const;

    friend bool operator==(const Dataframe& a, const Dataframe& b);

private:
    struct NameHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    Dataframe() = default;
    void index_columns();

    std::shared_ptr<const std::vector<std::int64_t>> index_;
    std::vector<NamedColumn> columns_;
    std::unordered_map<std::string, std::size_t, NameHash, std::equal_to<>> lookup_;
    std::string case_column_;
    std::string activity_column_;
};

/// Equality ignoring index entries (used after EDF round trips, which
/// renumber rows 0..n-1).
bool equal_ignoring_index(const Dataframe& a, const Dataframe& b);

}  // namespace evdf
