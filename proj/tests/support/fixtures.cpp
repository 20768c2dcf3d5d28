#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <stdexcept>

namespace evdf::testing {

Column str_column(const std::vector<std::string>& values) {
    Column c{ColumnType::Str, {}};
    for (const auto& v : values) c.values.push_back(AttrValue::of_str(v));
    return c;
}

Dataframe case_act_frame(const std::vector<std::string>& cases, const std::vector<std::string>& acts) {
    return Dataframe::build({{"case", str_column(cases)}, {"act", str_column(acts)}}, "case", "act");
}

Dataframe golden_empty_frame() {
    return Dataframe::build({{"case", Column{ColumnType::Str, {}}}, {"act", Column{ColumnType::Str, {}}}}, "case",
                            "act");
}

Dataframe golden_mixed_frame() {
    const AttrValue M;
    Column amount{ColumnType::Int,
                  {AttrValue::of_int(10), AttrValue::of_int(-3), M, AttrValue::of_int(1LL << 40), AttrValue::of_int(0)}};
    Column cost{ColumnType::Float,
                {M, AttrValue::of_float(2.5), AttrValue::of_float(-0.125), AttrValue::of_float(1e300), M}};
    Column when{ColumnType::Timestamp,
                {AttrValue::of_timestamp_ms(1546398245006), AttrValue::of_timestamp_ms(1546398246000), M,
                 AttrValue::of_timestamp_ms(0), AttrValue::of_timestamp_ms(-1000)}};
    Column misc{ColumnType::Object,
                {AttrValue::of_int(7), AttrValue::of_str("x,y"), AttrValue::of_float(0.5), M,
                 AttrValue::of_timestamp_ms(42)}};
    return Dataframe::build({{"case", str_column({"c1", "c1", "c2", "c2", "c3"})},
                             {"act", str_column({"register", "check", "register", "pay \"now\"", "ε"})},
                             {"amount", std::move(amount)},
                             {"cost", std::move(cost)},
                             {"time", std::move(when)},
                             {"misc", std::move(misc)}},
                            "case", "act");
}

Dataframe golden_deflate_frame() {
    Column cases{ColumnType::Str, {}};
    Column acts{ColumnType::Str, {}};
    Column amount{ColumnType::Int, {}};
    Column when{ColumnType::Timestamp, {}};
    for (std::int64_t r = 0; r < 1000; ++r) {
        cases.values.push_back(AttrValue::of_str("c" + std::to_string(r / 7)));
        acts.values.push_back(AttrValue::of_str("A" + std::to_string((r * r) % 5)));
        amount.values.push_back(r % 3 == 0 ? AttrValue::missing() : AttrValue::of_int(r * 11));
        when.values.push_back(AttrValue::of_timestamp_ms(1'600'000'000'000 + r * 1000));
    }
    return Dataframe::build(
        {{"case", std::move(cases)}, {"act", std::move(acts)}, {"amount", std::move(amount)}, {"time", std::move(when)}},
        "case", "act");
}

Dataframe random_frame(std::mt19937_64& rng, std::size_t max_rows, bool scramble_index) {
    std::uniform_int_distribution<std::size_t> row_dist(0, max_rows);
    const std::size_t rows = row_dist(rng);
    std::uniform_int_distribution<int> small(0, 4);
    std::uniform_int_distribution<int> coin(0, 9);

    std::vector<std::int64_t> index(rows);
    std::iota(index.begin(), index.end(), std::int64_t{0});
    if (scramble_index) {
        for (auto& i : index) i = i * 3 - 7;
        std::shuffle(index.begin(), index.end(), rng);
    }

    Column cases{ColumnType::Str, {}};
    Column acts{ColumnType::Str, {}};
    Column num{ColumnType::Int, {}};
    Column real{ColumnType::Float, {}};
    Column obj{ColumnType::Object, {}};
    for (std::size_t r = 0; r < rows; ++r) {
        cases.values.push_back(AttrValue::of_str("c" + std::to_string(small(rng))));
        acts.values.push_back(AttrValue::of_str(std::string(1, static_cast<char>('A' + small(rng)))));
        num.values.push_back(coin(rng) < 2 ? AttrValue::missing() : AttrValue::of_int(small(rng) - 2));
        real.values.push_back(coin(rng) < 2 ? AttrValue::missing() : AttrValue::of_float(small(rng) * 0.5));
        switch (small(rng)) {
            case 0: obj.values.push_back(AttrValue::of_int(small(rng))); break;
            case 1: obj.values.push_back(AttrValue::of_float(small(rng) + 0.25)); break;
            case 2: obj.values.push_back(AttrValue::of_timestamp_ms(small(rng) * 1000)); break;
            case 3: obj.values.push_back(AttrValue::of_str("s" + std::to_string(small(rng)))); break;
            default: obj.values.emplace_back(); break;
        }
    }
    return Dataframe::build(std::move(index),
                            {{"case", std::move(cases)},
                             {"act", std::move(acts)},
                             {"num", std::move(num)},
                             {"real", std::move(real)},
                             {"obj", std::move(obj)}},
                            "case", "act");
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace evdf::testing
