#include "helicon/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace helicon {

namespace {
constexpr double kPi = std::numbers::pi;

// Catmull-Rom as an even function of node distance; matches
// eval_cubic_weights at lambda - offset.
double catmull_rom(double t) {
    const double s = std::abs(t);
    if (s < 1.0) return ((1.5 * s - 2.5) * s) * s + 1.0;
    if (s < 2.0) return ((-0.5 * s + 2.5) * s - 4.0) * s + 2.0;
    return 0.0;
}
}  // namespace

double eval_constant(double t) { return (t > -1.0 && t <= 0.0) ? 1.0 : 0.0; }

double eval_hat(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

double eval_windowed_sinc(double t, int radius) {
    if (radius < 1) throw std::invalid_argument("windowed sinc radius must be >= 1");
    if (!(std::abs(t) < radius)) return 0.0;
    const double core = (t == 0.0) ? 1.0 : std::sin(kPi * t) / (kPi * t);
    const double window = 0.5 * (1.0 + std::cos(kPi * t / radius));
    return core * window;
}

std::array<double, 4> eval_cubic_weights(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw std::invalid_argument("cubic weights: lambda must lie in [0,1)");
    const double l2 = lambda * lambda;
    const double l3 = l2 * lambda;
    return {
        -0.5 * (l3 - 2.0 * l2 + lambda),
        1.5 * l3 - 2.5 * l2 + 1.0,
        -1.5 * l3 + 2.0 * l2 + 0.5 * lambda,
        0.5 * (l3 - l2),
    };
}

Kernel Kernel::windowed_sinc(int radius) {
    if (radius < 1 || radius > kMaxKernelNodes / 2)
        throw std::invalid_argument("windowed sinc radius must lie in [1, " +
                                    std::to_string(kMaxKernelNodes / 2) + "]");
    return Kernel(KernelKind::windowed_sinc, radius);
}

Kernel Kernel::parse(std::string_view text) {
    if (text == "constant") return constant();
    if (text == "linear") return hat();
    if (text == "cubic") return cubic();
    if (text.rfind("sinc:", 0) == 0) {
        int radius = 0;
        try {
            radius = std::stoi(std::string(text.substr(5)));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad sinc radius in kernel spec '" + std::string(text) + "'");
        }
        return windowed_sinc(radius);
    }
    throw std::invalid_argument("unknown kernel '" + std::string(text) +
                                "' (expected constant, linear, cubic or sinc:<radius>)");
}

int Kernel::min_offset() const {
    switch (kind_) {
        case KernelKind::constant: return 0;
        case KernelKind::hat: return 0;
        case KernelKind::cubic: return -1;
        case KernelKind::windowed_sinc: return -radius_ + 1;
    }
    return 0;
}

int Kernel::max_offset() const {
    switch (kind_) {
        case KernelKind::constant: return 0;
        case KernelKind::hat: return 1;
        case KernelKind::cubic: return 2;
        case KernelKind::windowed_sinc: return radius_;
    }
    return 0;
}

void Kernel::weights(double lambda, std::span<double> out) const {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw std::invalid_argument("kernel weights: lambda must lie in [0,1)");
    if (out.size() != static_cast<std::size_t>(node_count()))
        throw std::invalid_argument("kernel weights: wrong output size");
    switch (kind_) {
        case KernelKind::constant:
            out[0] = 1.0;
            return;
        case KernelKind::hat:
            out[0] = 1.0 - lambda;
            out[1] = lambda;
            return;
        case KernelKind::cubic: {
            const auto w = eval_cubic_weights(lambda);
            for (int i = 0; i < 4; ++i) out[i] = w[i];
            return;
        }
        case KernelKind::windowed_sinc: {
            double sum = 0.0;
            for (int j = min_offset(); j <= max_offset(); ++j) {
                const double w = eval_windowed_sinc(lambda - j, radius_);
                out[j - min_offset()] = w;
                sum += w;
            }
            for (auto& w : out) w /= sum;
            return;
        }
    }
}

double Kernel::evaluate(double t) const {
    switch (kind_) {
        case KernelKind::constant: return eval_constant(t);
        case KernelKind::hat: return eval_hat(t);
        case KernelKind::cubic: return catmull_rom(t);
        case KernelKind::windowed_sinc: return eval_windowed_sinc(t, radius_);
    }
    return 0.0;
}

std::string_view Kernel::name() const {
    switch (kind_) {
        case KernelKind::constant: return "constant";
        case KernelKind::hat: return "linear";
        case KernelKind::cubic: return "cubic";
        case KernelKind::windowed_sinc: return "sinc";
    }
    return "?";
}

}  // namespace helicon
