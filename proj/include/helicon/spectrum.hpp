#pragma once

// DFT magnitude analysis used to verify frequency mapping and compression
// behaviour, plus the CSV report the CLI writes.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace helicon {

struct SpectrumRow {
    std::size_t bin;
    double freq_per_wave;  // cycles per wave (bin/size * period)
    double freq_hz;        // bin/size * sample rate
    double magnitude;
};

struct SpectrumReport {
    std::size_t size;
    std::vector<SpectrumRow> rows;  // bins 0 .. size/2
};

// |DFT| of the first `size` samples, rectangular window.  size must be a
// power of two and at most the sample count.  Returns size/2 + 1 magnitudes.
std::vector<double> spectrum_magnitudes(std::span<const double> samples, std::size_t size);

SpectrumReport spectrum(std::span<const double> samples, std::size_t size, double period,
                        double sample_rate);

// CSV rows "bin,freq_per_wave,magnitude" with a header line.
void write_spectrum_csv(const SpectrumReport& report, const std::string& path);

std::size_t peak_bin(std::span<const double> magnitudes, std::size_t first_bin = 1);

}  // namespace helicon
