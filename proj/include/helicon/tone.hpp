#pragma once

// A sampled monophonic tone: the raw samples plus the wave period in samples
// per wave (possibly fractional).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "helicon/phase.hpp"

namespace helicon {

struct SampledTone {
    SampledTone(std::vector<double> samples_in, double period_in)
        : samples(std::move(samples_in)), period(period_in) {
        const long long rt = round_period(period);  // also validates period >= 2
        const std::size_t minimum = static_cast<std::size_t>(2 * rt + 2);
        if (samples.size() < minimum)
            throw std::invalid_argument(
                "tone too short: need at least two full waves plus interpolation margin (" +
                std::to_string(minimum) + " samples for period " + std::to_string(period) +
                "), got " + std::to_string(samples.size()));
    }

    long long rounded_period() const { return round_period(period); }

    std::vector<double> samples;
    double period;
};

}  // namespace helicon
