#include "evdf/dataframe.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "evdf/error.hpp"

namespace evdf {

namespace {

void check_unique_index(std::span<const std::int64_t> index) {
    if (std::adjacent_find(index.begin(), index.end(), std::greater_equal<>{}) == index.end()) return;
    std::unordered_set<std::int64_t> seen;
    seen.reserve(index.size());
    for (const auto i : index) {
        if (!seen.insert(i).second) throw Error(Errc::DuplicateIndex, "index entry " + std::to_string(i) + " repeats");
    }
}

}  // namespace

Dataframe Dataframe::build(std::vector<std::int64_t> index, std::vector<std::pair<std::string, Column>> columns,
                           std::string case_column, std::string activity_column) {
    for (const auto& [name, col] : columns) {
        if (col.values.size() != index.size()) {
            throw Error(Errc::LengthMismatch, "column '" + name + "' has " + std::to_string(col.values.size()) +
                                                  " values, index has " + std::to_string(index.size()));
        }
    }
    check_unique_index(index);

    std::vector<NamedColumn> named;
    named.reserve(columns.size());
    for (auto& [name, col] : columns) {
        named.push_back({std::move(name), std::make_shared<const Column>(std::move(col))});
    }
    Dataframe df = assemble(std::make_shared<const std::vector<std::int64_t>>(std::move(index)), std::move(named),
                            std::move(case_column), std::move(activity_column));

    for (const auto& [name, col] : df.columns_) {
        const bool mandatory = name == df.case_column_ || name == df.activity_column_;
        for (std::size_t row = 0; row < col->values.size(); ++row) {
            const ValueTag tag = col->values[row].tag();
            if (mandatory && tag == ValueTag::Missing) {
                throw Error(Errc::MissingMandatory, "column '" + name + "' is Missing at row " + std::to_string(row));
            }
            if (!accepts(col->type, tag)) {
                throw Error(Errc::TypeViolation, "column '" + name + "' of type " + std::string(to_string(col->type)) +
                                                     " holds a " + std::string(to_string(tag)) + " at row " +
                                                     std::to_string(row));
            }
        }
    }
    return df;
}

Dataframe Dataframe::build(std::vector<std::pair<std::string, Column>> columns, std::string case_column,
                           std::string activity_column) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().second.values.size();
    std::vector<std::int64_t> index(rows);
    std::iota(index.begin(), index.end(), std::int64_t{0});
    return build(std::move(index), std::move(columns), std::move(case_column), std::move(activity_column));
}

Dataframe Dataframe::assemble(std::shared_ptr<const std::vector<std::int64_t>> index, std::vector<NamedColumn> columns,
                              std::string case_column, std::string activity_column) {
    Dataframe df;
    df.index_ = std::move(index);
    df.columns_ = std::move(columns);
    df.case_column_ = std::move(case_column);
    df.activity_column_ = std::move(activity_column);
    df.index_columns();
    for (const auto& [name, col] : df.columns_) {
        if (col->values.size() != df.index_->size()) {
            throw Error(Errc::LengthMismatch, "column '" + name + "' length differs from index length");
        }
    }
    for (const auto* mandatory : {&df.case_column_, &df.activity_column_}) {
        if (!df.has_column(*mandatory)) {
            throw Error(Errc::MissingMandatory, "mandatory column '" + *mandatory + "' is absent");
        }
    }
    return df;
}

void Dataframe::index_columns() {
    lookup_.clear();
    lookup_.reserve(columns_.size());
    for (std::size_t k = 0; k < columns_.size(); ++k) {
        if (!lookup_.emplace(columns_[k].name, k).second) {
            throw Error(Errc::NameCollision, "column '" + columns_[k].name + "' appears twice");
        }
    }
}

std::vector<std::string> Dataframe::column_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const auto& c : columns_) names.push_back(c.name);
    return names;
}

bool Dataframe::has_column(std::string_view name) const {
    return lookup_.find(name) != lookup_.end();
}

std::size_t Dataframe::column_position(std::string_view name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) throw Error(Errc::UnknownAttribute, "no column named '" + std::string(name) + "'");
    return it->second;
}

const ColumnPtr& Dataframe::column_ptr(std::string_view name) const {
    return columns_[column_position(name)].column;
}

const Column& Dataframe::column(std::string_view name) const {
    return *column_ptr(name);
}

const AttrValue& Dataframe::value_at(std::size_t row, std::string_view attr) const {
    const Column& col = column(attr);
    if (row >= row_count()) {
        throw Error(Errc::RowOutOfRange,
                    "row " + std::to_string(row) + " out of range (" + std::to_string(row_count()) + " rows)");
    }
    return col.values[row];
}

std::vector<std::pair<std::int64_t, AttrValue>> Dataframe::column_values(std::string_view attr) const {
    const Column& col = column(attr);
    std::vector<std::pair<std::int64_t, AttrValue>> out;
    out.reserve(row_count());
    for (std::size_t row = 0; row < row_count(); ++row) out.emplace_back((*index_)[row], col.values[row]);
    return out;
}

std::vector<AttrValue> Dataframe::distinct_values(std::string_view attr) const {
    const Column& col = column(attr);
    ValueSet seen;
    std::vector<AttrValue> out;
    for (const auto& v : col.values) {
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

std::size_t Dataframe::memory_footprint() const {
    std::size_t bytes = kFrameOverhead + 8 * row_count();
    for (const auto& [name, col] : columns_) {
        bytes += kColumnOverhead + name.size() + kSlotBytes * col->values.size();
        for (const auto& v : col->values) {
            if (v.tag() == ValueTag::Str) bytes += v.as_str().size();
        }
    }
    return bytes;
}

Dataframe Dataframe::select(std::span<const std::string> names) const {
    std::unordered_set<std::string_view> wanted(names.begin(), names.end());
    for (const auto& n : names) column_position(n);
    wanted.insert(case_column_);
    wanted.insert(activity_column_);
    std::vector<NamedColumn> kept;
    for (const auto& c : columns_) {
        if (wanted.count(c.name)) kept.push_back(c);
    }
    return assemble(index_, std::move(kept), case_column_, activity_column_);
}

bool equal_ignoring_index(const Dataframe& a, const Dataframe& b) {
    if (a.case_column() != b.case_column() || a.activity_column() != b.activity_column()) return false;
    if (a.row_count() != b.row_count() || a.column_count() != b.column_count()) return false;
    for (std::size_t k = 0; k < a.column_count(); ++k) {
        const auto& ca = a.columns()[k];
        const auto& cb = b.columns()[k];
        if (ca.name != cb.name) return false;
        if (ca.column != cb.column && *ca.column != *cb.column) return false;
    }
    return true;
}

bool operator==(const Dataframe& a, const Dataframe& b) {
    if (!equal_ignoring_index(a, b)) return false;
    return a.index_ == b.index_ || *a.index_ == *b.index_;
}

}  // namespace evdf
