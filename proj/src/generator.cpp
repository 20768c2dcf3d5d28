#include <random>

#include "evdf/bench.hpp"
#include "evdf/error.hpp"

namespace evdf {

namespace {

constexpr std::int64_t kEpochStartMs = 1'577'836'800'000;  // 2020-01-01T00:00:00Z
constexpr double kJumpProbability = 0.1;

std::uint32_t extra_cardinality(std::uint32_t j) { return 3 + 2 * j; }

}  // namespace

Dataframe generate(const GenSpec& spec) {
    if (spec.num_cases == 0) throw Error(Errc::InvalidArgument, "num_cases must be positive");
    if (spec.num_activities == 0) throw Error(Errc::InvalidArgument, "num_activities must be positive");
    if (!(spec.mean_case_length >= 1.0)) throw Error(Errc::InvalidArgument, "mean_case_length must be >= 1");

    std::mt19937_64 rng(spec.seed);
    std::poisson_distribution<std::uint64_t> extra_length(spec.mean_case_length - 1.0);
    std::uniform_int_distribution<std::uint32_t> any_activity(0, spec.num_activities - 1);
    std::uniform_int_distribution<std::int64_t> gap_seconds(1, 3600);
    std::uniform_int_distribution<std::int64_t> start_jitter(0, 86'400'000);
    std::bernoulli_distribution jump(kJumpProbability);
    std::bernoulli_distribution absent(0.1);

    std::vector<std::string> activity_names(spec.num_activities);
    for (std::uint32_t a = 0; a < spec.num_activities; ++a) activity_names[a] = "A" + std::to_string(a);

    Column cases{ColumnType::Str, {}};
    Column acts{ColumnType::Str, {}};
    Column times{ColumnType::Timestamp, {}};
    std::vector<Column> extras(spec.extra_attributes, Column{ColumnType::Str, {}});
    const auto expected = static_cast<std::size_t>(static_cast<double>(spec.num_cases) * spec.mean_case_length * 1.05);
    cases.values.reserve(expected);
    acts.values.reserve(expected);
    times.values.reserve(expected);

    for (std::uint64_t c = 0; c < spec.num_cases; ++c) {
        const std::uint64_t length = 1 + (spec.mean_case_length > 1.0 ? extra_length(rng) : 0);
        const AttrValue case_id = AttrValue::of_str("C" + std::to_string(c));
        std::int64_t now = kEpochStartMs + static_cast<std::int64_t>(c) * 60'000 + start_jitter(rng);
        std::uint32_t activity = 0;
        for (std::uint64_t k = 0; k < length; ++k) {
            if (spec.model == GenModel::UniformRandom) {
                activity = any_activity(rng);
            } else if (k == 0) {
                activity = jump(rng) ? any_activity(rng) : 0;
            } else {
                activity = jump(rng) ? any_activity(rng) : (activity + 1) % spec.num_activities;
            }
            cases.values.push_back(case_id);
            acts.values.push_back(AttrValue::of_str(activity_names[activity]));
            times.values.push_back(AttrValue::of_timestamp_ms(now));
            now += gap_seconds(rng) * 1000;
            for (std::uint32_t j = 0; j < spec.extra_attributes; ++j) {
                if (j % 2 == 1 && absent(rng)) {
                    extras[j].values.emplace_back();
                    continue;
                }
                std::uniform_int_distribution<std::uint32_t> pick(0, extra_cardinality(j) - 1);
                extras[j].values.push_back(AttrValue::of_str("v" + std::to_string(pick(rng))));
            }
        }
    }

    std::vector<std::pair<std::string, Column>> columns;
    columns.emplace_back(std::string(kGenCaseColumn), std::move(cases));
    columns.emplace_back(std::string(kGenActivityColumn), std::move(acts));
    columns.emplace_back(std::string(kGenTimestampColumn), std::move(times));
    for (std::uint32_t j = 0; j < spec.extra_attributes; ++j) {
        columns.emplace_back("attr_" + std::to_string(j), std::move(extras[j]));
    }
    return Dataframe::build(std::move(columns), std::string(kGenCaseColumn), std::string(kGenActivityColumn));
}

}  // namespace evdf
