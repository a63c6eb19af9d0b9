#include "helicon/skew_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "helicon/errors.hpp"

namespace helicon {

CellAddress cell_locate(double t, Phase phi, double period) {
    if (!std::isfinite(t)) throw std::invalid_argument("cell_locate: t must be finite");
    const long long rt = round_period(period);
    const double frac_l = split_fraction(t - representative(phi)).fraction;
    const double r = t * period - frac_l * static_cast<double>(rt);
    return CellAddress{r, frac_l};
}

double eval_bilinear(const SampledTone& tone, double t, Phase phi) {
    const long long rt = tone.rounded_period();
    const CellAddress cell = cell_locate(t, phi, tone.period);
    const long long n = cell.n();
    const double fr = cell.frac_r();

    const auto& u = tone.samples;
    const long long last = static_cast<long long>(u.size()) - 1;
    if (n < 0) throw BoundaryError(n, "eval_bilinear");
    if (n + rt + 1 > last) throw BoundaryError(n + rt + 1, "eval_bilinear");

    const double a = lerp(u[n], u[n + 1], fr);
    const double b = lerp(u[n + rt], u[n + rt + 1], fr);
    return lerp(a, b, cell.frac_l);
}

double eval_cell_raw(std::span<const double> data, long long first_index, double t,
                     double phase_rep, double period, const Kernel& step, const Kernel& leap) {
    const long long rt = round_period(period);
    const double frac_l = split_fraction(t - phase_rep).fraction;
    const double r = t * period - frac_l * static_cast<double>(rt);
    const SplitFraction rr = split_fraction(r);
    const long long n = static_cast<long long>(rr.integral);

    const long long lo = n + step.min_offset() + static_cast<long long>(leap.min_offset()) * rt;
    const long long hi = n + step.max_offset() + static_cast<long long>(leap.max_offset()) * rt;
    if (lo < first_index) throw BoundaryError(lo, "eval_general");
    if (hi >= first_index + static_cast<long long>(data.size()))
        throw BoundaryError(hi, "eval_general");

    double ws[kMaxKernelNodes];
    double wl[kMaxKernelNodes];
    const int nstep = step.node_count();
    const int nleap = leap.node_count();
    step.weights(rr.fraction, {ws, static_cast<std::size_t>(nstep)});
    leap.weights(frac_l, {wl, static_cast<std::size_t>(nleap)});

    double acc = 0.0;
    for (int k = 0; k < nleap; ++k) {
        const long long base =
            n + static_cast<long long>(leap.min_offset() + k) * rt + step.min_offset() - first_index;
        double row = 0.0;
        for (int j = 0; j < nstep; ++j) row += ws[j] * data[base + j];
        acc += wl[k] * row;
    }
    return acc;
}

double eval_general(const SampledTone& tone, double t, Phase phi, const Kernel& step,
                    const Kernel& leap) {
    return eval_cell_raw(tone.samples, 0, t, representative(phi), tone.period, step, leap);
}

double clamp_lower_bound(double period, const Kernel& step, const Kernel& leap) {
    const long long rt = round_period(period);
    // floor(t*T - rt) + step.min + leap.min*rt >= 0 must hold for every phase.
    const long long need = -(step.min_offset() + static_cast<long long>(leap.min_offset()) * rt);
    double t_min = static_cast<double>(rt + need) / period;
    while (std::floor(t_min * period - static_cast<double>(rt)) < static_cast<double>(need))
        t_min = std::nextafter(t_min, std::numeric_limits<double>::infinity());
    return t_min;
}

TimeBounds compute_time_bounds(std::size_t length, double period, const Kernel& step,
                               const Kernel& leap) {
    const long long rt = round_period(period);
    const double t_min = clamp_lower_bound(period, step, leap);

    // floor(t*T) + step.max + leap.max*rt <= length-1 must hold for every phase.
    const long long cap = static_cast<long long>(length) - 1 - step.max_offset() -
                          static_cast<long long>(leap.max_offset()) * rt;
    double t_max = static_cast<double>(cap + 1) / period;
    while (std::floor(t_max * period) > static_cast<double>(cap))
        t_max = std::nextafter(t_max, -std::numeric_limits<double>::infinity());

    if (!(t_min <= t_max))
        throw std::invalid_argument(
            "signal too short for the chosen kernels: usable span is empty (need " +
            std::to_string(step.node_count()) + " step and " + std::to_string(leap.node_count()) +
            " leap nodes over " + std::to_string(length) + " samples)");
    return TimeBounds{t_min, t_max};
}

double clamp_time(double t, const SampledTone& tone, const Kernel& step, const Kernel& leap) {
    return compute_time_bounds(tone, step, leap).clamp(t);
}

}  // namespace helicon
