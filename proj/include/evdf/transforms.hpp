#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evdf/dataframe.hpp"

namespace evdf {

/// Read access to one row, restricted to the attributes a predicate declared.
class RowView {
public:
    RowView(std::span<const std::string> names, std::span<const Column* const> columns, std::size_t row,
            std::int64_t index_entry)
        : names_(names), columns_(columns), row_(row), index_entry_(index_entry) {}

    /// Value of a declared attribute. Throws UnknownAttribute for anything
    /// outside the declared set.
    const AttrValue& operator[](std::string_view name) const;

    /// Value of the k-th declared attribute.
    const AttrValue& at(std::size_t k) const { return columns_[k]->values[row_]; }

    std::int64_t index_entry() const noexcept { return index_entry_; }
    std::size_t position() const noexcept { return row_; }

private:
    std::span<const std::string> names_;
    std::span<const Column* const> columns_;
    std::size_t row_;
    std::int64_t index_entry_;
};

/// Row filter over a declared attribute set. `eval` receives the row's index
/// entry and a view exposing only `attrs`; it must be deterministic.
struct RowPredicate {
    std::vector<std::string> attrs;
    std::function<bool(std::int64_t, const RowView&)> eval;
};

/// Keeps the rows where the predicate holds. Order, index entries, columns
/// and case/activity designation are preserved.
Dataframe project(const Dataframe& df, const RowPredicate& pred);

/// Keeps rows whose `attr` value is a member of `allowed`.
Dataframe project_in(const Dataframe& df, std::string_view attr, const ValueSet& allowed);

/// Row positions of each group of equal `attr` values, groups in
/// first-occurrence order, positions ascending.
std::vector<std::vector<std::size_t>> group_positions(const Dataframe& df, std::string_view attr);

/// One frame per distinct value of `attr`, in first-occurrence order.
std::vector<Dataframe> group_by(const Dataframe& df, std::string_view attr);

/// Decrements every index entry by one. Values and row order are untouched.
Dataframe shift(const Dataframe& df);

/// Joins `right` onto `left` by index entry. Right columns are renamed with
/// `suffix` appended. Only entries present in both operands are kept, in
/// left's positional order.
/// Throws EmptySuffix, NameCollision.
Dataframe concat(const Dataframe& left, const Dataframe& right, std::string_view suffix);

/// Stable sort of the rows by `attr` under `compare()`. Index entries travel
/// with their rows.
Dataframe sort_by(const Dataframe& df, std::string_view attr);

/// Adds a Str column `new_attr` = render(a1) + sep + render(a2).
/// Throws UnknownAttribute, NameCollision.
Dataframe merge_as_string(const Dataframe& df, std::string new_attr, std::string_view a1, std::string_view a2,
                          std::string_view sep);

/// Rows at `positions`, in that order, index entries included.
Dataframe take_rows(const Dataframe& df, std::span<const std::size_t> positions);

/// Same rows with index renumbered to 0..n-1.
Dataframe reset_index(const Dataframe& df);

}  // namespace evdf
