#include "evdf/dfg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "evdf/error.hpp"
#include "evdf/transforms.hpp"

namespace evdf {

std::uint64_t DfgGraph::total_edge_count() const {
    std::uint64_t n = 0;
    for (const auto& [edge, count] : edges) n += count;
    return n;
}

std::uint64_t DfgGraph::total_start_count() const {
    std::uint64_t n = 0;
    for (const auto& [a, count] : start_activities) n += count;
    return n;
}

std::uint64_t DfgGraph::total_end_count() const {
    std::uint64_t n = 0;
    for (const auto& [a, count] : end_activities) n += count;
    return n;
}

DfgGraph dfg_iterate(const EventLog& log) {
    DfgGraph g;
    for (const auto& e : log.events) g.nodes.insert(e.activity);
    std::vector<std::size_t> trace;
    for (const auto& [id, positions] : log.cases) {
        if (positions.empty()) continue;
        trace.assign(positions.begin(), positions.end());
        std::sort(trace.begin(), trace.end());
        for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
            ++g.edges[{log.events[trace[k]].activity, log.events[trace[k + 1]].activity}];
        }
        ++g.start_activities[log.events[trace.front()].activity];
        ++g.end_activities[log.events[trace.back()].activity];
    }
    return g;
}

namespace {

// Dense ids for the activity values of a column, with their renderings.
struct ActivityCodes {
    std::vector<std::uint32_t> code_of_row;
    std::vector<std::string> names;
};

ActivityCodes encode_activities(const Column& acts) {
    ActivityCodes out;
    out.code_of_row.reserve(acts.values.size());
    std::unordered_map<AttrValue, std::uint32_t, AttrValueHash> ids;
    for (const auto& v : acts.values) {
        auto [it, inserted] = ids.try_emplace(v, static_cast<std::uint32_t>(out.names.size()));
        if (inserted) out.names.push_back(render(v));
        out.code_of_row.push_back(it->second);
    }
    return out;
}

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct PartialCounts {
    std::unordered_map<std::uint64_t, std::uint64_t> edges;
    std::vector<std::uint64_t> starts;
    std::vector<std::uint64_t> ends;
};

void fold_into(DfgGraph& g, const PartialCounts& part, const std::vector<std::string>& names) {
    for (const auto& [key, count] : part.edges) {
        const auto a = static_cast<std::uint32_t>(key >> 32);
        const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
        g.edges[{names[a], names[b]}] += count;
    }
    for (std::size_t a = 0; a < part.starts.size(); ++a) {
        if (part.starts[a]) g.start_activities[names[a]] += part.starts[a];
        if (part.ends[a]) g.end_activities[names[a]] += part.ends[a];
    }
}

}  // namespace

DfgGraph dfg_mapreduce(const Dataframe& df, unsigned workers) {
    if (workers == 0) throw Error(Errc::InvalidArgument, "workers must be positive");
    const ActivityCodes codes = encode_activities(df.column(df.activity_column()));
    const auto groups = group_positions(df, df.case_column());

    std::vector<PartialCounts> partials(std::min<std::size_t>(workers, std::max<std::size_t>(groups.size(), 1)));
    auto map_phase = [&](std::size_t worker) {
        PartialCounts& part = partials[worker];
        part.starts.assign(codes.names.size(), 0);
        part.ends.assign(codes.names.size(), 0);
        for (std::size_t gi = worker; gi < groups.size(); gi += partials.size()) {
            const auto& rows = groups[gi];
            for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
                ++part.edges[pair_key(codes.code_of_row[rows[k]], codes.code_of_row[rows[k + 1]])];
            }
            ++part.starts[codes.code_of_row[rows.front()]];
            ++part.ends[codes.code_of_row[rows.back()]];
        }
    };
    if (partials.size() == 1) {
        map_phase(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(partials.size());
        for (std::size_t w = 0; w < partials.size(); ++w) pool.emplace_back(map_phase, w);
    }

    DfgGraph g;
    g.nodes.insert(codes.names.begin(), codes.names.end());
    for (const auto& part : partials) fold_into(g, part, codes.names);
    return g;
}

DfgGraph dfg_shift_count(const Dataframe& df, bool assume_sorted, EdgeKeying keying) {
    const std::string& case_col = df.case_column();
    const std::string& act_col = df.activity_column();

    DfgGraph g;
    const ActivityCodes all_codes = encode_activities(df.column(act_col));
    g.nodes.insert(all_codes.names.begin(), all_codes.names.end());
    if (keying == EdgeKeying::MergedStrings) {
        for (const auto& name : all_codes.names) {
            if (name.find(',') != std::string::npos) {
                throw Error(Errc::SeparatorCollision, "activity '" + name + "' contains the separator ','");
            }
        }
    }

    // Only the case and activity attributes take part in the computation.
    const std::string keep[] = {case_col, act_col};
    Dataframe sorted = df.select(keep);
    if (!assume_sorted) sorted = sort_by(sorted, case_col);
    sorted = reset_index(sorted);

    const Dataframe joined = concat(sorted, shift(sorted), "_2");
    const RowPredicate same_case{{case_col, case_col + "_2"},
                                 [](std::int64_t, const RowView& row) { return row.at(0) == row.at(1); }};
    const Dataframe paired = project(joined, same_case);

    std::string merged_col = act_col + "_pair";
    while (paired.has_column(merged_col)) merged_col += '_';
    const Dataframe merged = merge_as_string(paired, merged_col, act_col, act_col + "_2", ",");

    if (keying == EdgeKeying::ValuePairs) {
        std::unordered_map<AttrValue, std::uint32_t, AttrValueHash> ids;
        std::vector<std::string> names;
        auto id_of = [&](const AttrValue& v) {
            auto [it, inserted] = ids.try_emplace(v, static_cast<std::uint32_t>(names.size()));
            if (inserted) names.push_back(render(v));
            return it->second;
        };
        const Column& from = merged.column(act_col);
        const Column& to = merged.column(act_col + "_2");
        PartialCounts counts;
        for (std::size_t row = 0; row < merged.row_count(); ++row) {
            ++counts.edges[pair_key(id_of(from.values[row]), id_of(to.values[row]))];
        }
        counts.starts.assign(names.size(), 0);
        counts.ends.assign(names.size(), 0);
        fold_into(g, counts, names);
    } else {
        std::unordered_map<std::string, std::uint64_t> counts;
        for (const auto& v : merged.column(merged_col).values) ++counts[v.as_str()];
        for (const auto& [key, count] : counts) {
            const auto comma = key.find(',');
            g.edges[{key.substr(0, comma), key.substr(comma + 1)}] += count;
        }
    }

    const Column& cases = sorted.column(case_col);
    const Column& acts = sorted.column(act_col);
    const std::size_t n = sorted.row_count();
    for (std::size_t row = 0; row < n; ++row) {
        if (row == 0 || !(cases.values[row] == cases.values[row - 1])) {
            ++g.start_activities[render(acts.values[row])];
        }
        if (row + 1 == n || !(cases.values[row] == cases.values[row + 1])) {
            ++g.end_activities[render(acts.values[row])];
        }
    }
    return g;
}

Dataframe filter_events(const Dataframe& df, std::string_view attr, const ValueSet& allowed) {
    return project_in(df, attr, allowed);
}

Dataframe filter_cases(const Dataframe& df, std::string_view attr, const ValueSet& allowed) {
    const Column& col = df.column(attr);
    const Column& cases = df.column(df.case_column());
    ValueSet qualifying;
    if (!allowed.empty()) {
        for (std::size_t row = 0; row < df.row_count(); ++row) {
            if (allowed.count(col.values[row])) qualifying.insert(cases.values[row]);
        }
    }
    return project_in(df, df.case_column(), qualifying);
}

AttrValue most_frequent_activity(const Dataframe& df) {
    const Column& acts = df.column(df.activity_column());
    std::unordered_map<AttrValue, std::pair<std::uint64_t, std::size_t>, AttrValueHash> counts;
    for (std::size_t row = 0; row < acts.values.size(); ++row) {
        auto [it, inserted] = counts.try_emplace(acts.values[row], 0, row);
        ++it->second.first;
    }
    const AttrValue* best = nullptr;
    std::pair<std::uint64_t, std::size_t> best_score{0, 0};
    for (const auto& [value, score] : counts) {
        if (!best || score.first > best_score.first ||
            (score.first == best_score.first && score.second < best_score.second)) {
            best = &value;
            best_score = score;
        }
    }
    return best ? *best : AttrValue::missing();
}

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_quote(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string dfg_to_dot(const DfgGraph& g) {
    std::ostringstream out;
    out << "digraph dfg {\n";
    if (!g.start_activities.empty()) out << "  \"@@start\" [shape=circle,label=\"start\"];\n";
    if (!g.end_activities.empty()) out << "  \"@@end\" [shape=doublecircle,label=\"end\"];\n";
    for (const auto& n : g.nodes) out << "  " << dot_quote(n) << " [shape=box];\n";
    for (const auto& [edge, count] : g.edges) {
        out << "  " << dot_quote(edge.first) << " -> " << dot_quote(edge.second) << " [label=\"" << count
            << "\"];\n";
    }
    for (const auto& [a, count] : g.start_activities) {
        out << "  \"@@start\" -> " << dot_quote(a) << " [label=\"" << count << "\",style=dashed];\n";
    }
    for (const auto& [a, count] : g.end_activities) {
        out << "  " << dot_quote(a) << " -> \"@@end\" [label=\"" << count << "\",style=dashed];\n";
    }
    out << "}\n";
    return out.str();
}

std::string dfg_to_edge_csv(const DfgGraph& g) {
    std::string out = "source,target,count\n";
    for (const auto& [edge, count] : g.edges) {
        out += csv_quote(edge.first);
        out += ',';
        out += csv_quote(edge.second);
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

}  // namespace evdf
