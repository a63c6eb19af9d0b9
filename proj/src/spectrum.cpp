#include "helicon/spectrum.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace helicon {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 decimation-in-time FFT.
void fft_in_place(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> root(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto even = a[i + j];
                const auto odd = a[i + j + len / 2] * w;
                a[i + j] = even + odd;
                a[i + j + len / 2] = even - odd;
                w *= root;
            }
        }
    }
}
}  // namespace

std::vector<double> spectrum_magnitudes(std::span<const double> samples, std::size_t size) {
    if (!is_power_of_two(size))
        throw std::invalid_argument("spectrum size must be a power of two");
    if (size > samples.size())
        throw std::invalid_argument("spectrum size exceeds sample count");

    std::vector<std::complex<double>> buffer(size);
    for (std::size_t i = 0; i < size; ++i) buffer[i] = samples[i];
    fft_in_place(buffer);

    std::vector<double> magnitudes(size / 2 + 1);
    for (std::size_t k = 0; k < magnitudes.size(); ++k) magnitudes[k] = std::abs(buffer[k]);
    return magnitudes;
}

SpectrumReport spectrum(std::span<const double> samples, std::size_t size, double period,
                        double sample_rate) {
    const auto magnitudes = spectrum_magnitudes(samples, size);
    SpectrumReport report{size, {}};
    report.rows.reserve(magnitudes.size());
    for (std::size_t k = 0; k < magnitudes.size(); ++k) {
        const double cycles_per_sample = static_cast<double>(k) / static_cast<double>(size);
        report.rows.push_back(SpectrumRow{k, cycles_per_sample * period,
                                          cycles_per_sample * sample_rate, magnitudes[k]});
    }
    return report;
}

void write_spectrum_csv(const SpectrumReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "bin,freq_per_wave,magnitude\n";
    out.precision(17);
    for (const auto& row : report.rows)
        out << row.bin << ',' << row.freq_per_wave << ',' << row.magnitude << '\n';
}

std::size_t peak_bin(std::span<const double> magnitudes, std::size_t first_bin) {
    std::size_t best = first_bin;
    for (std::size_t k = first_bin; k < magnitudes.size(); ++k)
        if (magnitudes[k] > magnitudes[best]) best = k;
    return best;
}

}  // namespace helicon
