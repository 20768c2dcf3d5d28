#pragma once

#include <algorithm>
#include <chrono>
#include <vector>

namespace evdf {

/// Median wall-clock seconds of `repeat` calls to `fn` (monotonic clock).
template <typename Fn>
double median_seconds(unsigned repeat, Fn&& fn) {
    std::vector<double> samples;
    samples.reserve(repeat);
    for (unsigned k = 0; k < repeat; ++k) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double>(stop - start).count());
    }
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace evdf
