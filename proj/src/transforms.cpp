#include "evdf/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "evdf/error.hpp"

namespace evdf {

namespace {

ColumnPtr gather(const Column& col, std::span<const std::size_t> positions) {
    auto out = std::make_shared<Column>();
    out->type = col.type;
    out->values.reserve(positions.size());
    for (const auto p : positions) out->values.push_back(col.values[p]);
    return out;
}

bool is_identity(std::span<const std::size_t> positions, std::size_t rows) {
    if (positions.size() != rows) return false;
    for (std::size_t k = 0; k < rows; ++k) {
        if (positions[k] != k) return false;
    }
    return true;
}

// Maps index entries of a frame back to positions. Contiguous ascending
// indices (the common case) need no table.
class IndexLookup {
public:
    explicit IndexLookup(std::span<const std::int64_t> index) : size_(index.size()) {
        contiguous_ = true;
        for (std::size_t k = 1; k < index.size(); ++k) {
            if (index[k] != index[k - 1] + 1) {
                contiguous_ = false;
                break;
            }
        }
        if (contiguous_) {
            first_ = index.empty() ? 0 : index.front();
        } else {
            table_.reserve(index.size());
            for (std::size_t k = 0; k < index.size(); ++k) table_.emplace(index[k], k);
        }
    }

    std::optional<std::size_t> find(std::int64_t entry) const {
        if (contiguous_) {
            if (size_ == 0 || entry < first_) return std::nullopt;
            const auto offset = static_cast<std::uint64_t>(entry - first_);
            if (offset >= size_) return std::nullopt;
            return static_cast<std::size_t>(offset);
        }
        auto it = table_.find(entry);
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::size_t size_;
    bool contiguous_ = true;
    std::int64_t first_ = 0;
    std::unordered_map<std::int64_t, std::size_t> table_;
};

}  // namespace

const AttrValue& RowView::operator[](std::string_view name) const {
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (names_[k] == name) return columns_[k]->values[row_];
    }
    throw Error(Errc::UnknownAttribute, "predicate did not declare attribute '" + std::string(name) + "'");
}

Dataframe take_rows(const Dataframe& df, std::span<const std::size_t> positions) {
    if (is_identity(positions, df.row_count())) return df;
    auto index = std::make_shared<std::vector<std::int64_t>>();
    index->reserve(positions.size());
    const auto src = df.index();
    for (const auto p : positions) index->push_back(src[p]);
    std::vector<NamedColumn> cols;
    cols.reserve(df.column_count());
    for (const auto& c : df.columns()) cols.push_back({c.name, gather(*c.column, positions)});
    return Dataframe::assemble(std::move(index), std::move(cols), df.case_column(), df.activity_column());
}

Dataframe project(const Dataframe& df, const RowPredicate& pred) {
    std::vector<const Column*> cols;
    cols.reserve(pred.attrs.size());
    for (const auto& name : pred.attrs) cols.push_back(&df.column(name));
    const auto index = df.index();
    std::vector<std::size_t> kept;
    for (std::size_t row = 0; row < df.row_count(); ++row) {
        const RowView view(pred.attrs, cols, row, index[row]);
        if (pred.eval(index[row], view)) kept.push_back(row);
    }
    return take_rows(df, kept);
}

Dataframe project_in(const Dataframe& df, std::string_view attr, const ValueSet& allowed) {
    const Column& col = df.column(attr);
    std::vector<std::size_t> kept;
    if (!allowed.empty()) {
        for (std::size_t row = 0; row < col.values.size(); ++row) {
            if (allowed.count(col.values[row])) kept.push_back(row);
        }
    }
    return take_rows(df, kept);
}

std::vector<std::vector<std::size_t>> group_positions(const Dataframe& df, std::string_view attr) {
    const Column& col = df.column(attr);
    std::unordered_map<AttrValue, std::size_t, AttrValueHash> slot;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t row = 0; row < col.values.size(); ++row) {
        auto [it, inserted] = slot.try_emplace(col.values[row], groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(row);
    }
    return groups;
}

std::vector<Dataframe> group_by(const Dataframe& df, std::string_view attr) {
    std::vector<Dataframe> out;
    for (const auto& positions : group_positions(df, attr)) out.push_back(take_rows(df, positions));
    return out;
}

Dataframe shift(const Dataframe& df) {
    auto index = std::make_shared<std::vector<std::int64_t>>(df.index().begin(), df.index().end());
    for (auto& i : *index) --i;
    return Dataframe::assemble(std::move(index), df.columns(), df.case_column(), df.activity_column());
}

Dataframe concat(const Dataframe& left, const Dataframe& right, std::string_view suffix) {
    if (suffix.empty()) throw Error(Errc::EmptySuffix, "concat requires a non-empty suffix");
    for (const auto& c : right.columns()) {
        const std::string renamed = c.name + std::string(suffix);
        if (left.has_column(renamed)) {
            throw Error(Errc::NameCollision, "suffixed column '" + renamed + "' already exists on the left");
        }
    }

    const IndexLookup lookup(right.index());
    const auto left_index = left.index();
    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    left_rows.reserve(left.row_count());
    right_rows.reserve(left.row_count());
    for (std::size_t row = 0; row < left_index.size(); ++row) {
        if (auto match = lookup.find(left_index[row])) {
            left_rows.push_back(row);
            right_rows.push_back(*match);
        }
    }

    const bool left_whole = is_identity(left_rows, left.row_count());
    const bool right_whole = is_identity(right_rows, right.row_count());
    std::shared_ptr<const std::vector<std::int64_t>> index;
    if (left_whole) {
        index = left.index_ptr();
    } else {
        auto built = std::make_shared<std::vector<std::int64_t>>();
        built->reserve(left_rows.size());
        for (const auto p : left_rows) built->push_back(left_index[p]);
        index = std::move(built);
    }

    std::vector<NamedColumn> cols;
    cols.reserve(left.column_count() + right.column_count());
    for (const auto& c : left.columns()) {
        cols.push_back({c.name, left_whole ? c.column : gather(*c.column, left_rows)});
    }
    for (const auto& c : right.columns()) {
        cols.push_back({c.name + std::string(suffix), right_whole ? c.column : gather(*c.column, right_rows)});
    }
    return Dataframe::assemble(std::move(index), std::move(cols), left.case_column(), left.activity_column());
}

Dataframe sort_by(const Dataframe& df, std::string_view attr) {
    const Column& key = df.column(attr);
    std::vector<std::size_t> order(df.row_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (key.type == ColumnType::Str) {
        // Homogeneous strings: skip the tag dispatch; Missing still sorts last.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const AttrValue& va = key.values[a];
            const AttrValue& vb = key.values[b];
            if (vb.is_missing()) return !va.is_missing();
            if (va.is_missing()) return false;
            return va.as_str() < vb.as_str();
        });
    } else {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return less(key.values[a], key.values[b]); });
    }
    return take_rows(df, order);
}

Dataframe merge_as_string(const Dataframe& df, std::string new_attr, std::string_view a1, std::string_view a2,
                          std::string_view sep) {
    const Column& first = df.column(a1);
    const Column& second = df.column(a2);
    if (df.has_column(new_attr)) throw Error(Errc::NameCollision, "column '" + new_attr + "' already exists");

    auto merged = std::make_shared<Column>();
    merged->type = ColumnType::Str;
    merged->values.reserve(df.row_count());
    std::string buf;
    for (std::size_t row = 0; row < df.row_count(); ++row) {
        buf.clear();
        render_to(buf, first.values[row]);
        buf += sep;
        render_to(buf, second.values[row]);
        merged->values.push_back(AttrValue::of_str(buf));
    }
    std::vector<NamedColumn> cols = df.columns();
    cols.push_back({std::move(new_attr), std::move(merged)});
    return Dataframe::assemble(df.index_ptr(), std::move(cols), df.case_column(), df.activity_column());
}

Dataframe reset_index(const Dataframe& df) {
    auto index = std::make_shared<std::vector<std::int64_t>>(df.row_count());
    std::iota(index->begin(), index->end(), std::int64_t{0});
    return Dataframe::assemble(std::move(index), df.columns(), df.case_column(), df.activity_column());
}

}  // namespace evdf
