#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "evdf/dataframe.hpp"
#include "evdf/eventlog.hpp"

namespace evdf {

/// Directly-follows graph with edge counts and start/end activity counts.
/// Activities are identified by their canonical rendering.
struct DfgGraph {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, std::uint64_t> edges;
    std::map<std::string, std::uint64_t> start_activities;
    std::map<std::string, std::uint64_t> end_activities;

    std::uint64_t total_edge_count() const;
    std::uint64_t total_start_count() const;
    std::uint64_t total_end_count() const;

    friend bool operator==(const DfgGraph&, const DfgGraph&) = default;
};

/// Counts consecutive activity pairs case by case over the classical log.
DfgGraph dfg_iterate(const EventLog& log);

/// Groups rows by case and hands groups round-robin to `workers` threads;
/// each thread counts consecutive pairs (positional order within the group)
/// and the partial counts are summed.
DfgGraph dfg_mapreduce(const Dataframe& df, unsigned workers);

/// How the shifting pipeline derives edge keys.
enum class EdgeKeying {
    /// Count the (activity, next activity) value pairs. Robust to any name.
    ValuePairs,
    /// Count the merged "a,b" strings and split them back. Throws
    /// SeparatorCollision when an activity contains ','.
    MergedStrings,
};

/// Shifting-and-counting: optional stable sort by case, then
/// concat(D, shift(D), "_2"), keep same-case rows, merge the two activity
/// columns into "a,b" strings and count. With `assume_sorted` the caller
/// guarantees rows of a case are contiguous.
DfgGraph dfg_shift_count(const Dataframe& df, bool assume_sorted, EdgeKeying keying = EdgeKeying::ValuePairs);

/// Event-level filter: rows whose `attr` value is in `allowed`.
Dataframe filter_events(const Dataframe& df, std::string_view attr, const ValueSet& allowed);

/// Case-level filter: every row of each case having at least one row whose
/// `attr` value is in `allowed`.
Dataframe filter_cases(const Dataframe& df, std::string_view attr, const ValueSet& allowed);

/// Most frequent value of the activity column (ties: first occurrence).
/// Missing when the frame is empty.
AttrValue most_frequent_activity(const Dataframe& df);

/// Graphviz digraph. Nodes sorted, edges sorted by (source, target), start
/// and end activities attached to the "@@start" / "@@end" pseudo-nodes.
std::string dfg_to_dot(const DfgGraph& g);

/// "source,target,count" with rows sorted by (source, target).
std::string dfg_to_edge_csv(const DfgGraph& g);

}  // namespace evdf
