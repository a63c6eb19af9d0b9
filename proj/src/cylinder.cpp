#include "helicon/cylinder.hpp"

#include <cmath>
#include <stdexcept>

#include "helicon/errors.hpp"

namespace helicon {

ContinuousSignal::ContinuousSignal(std::vector<double> samples, double period, Kernel step,
                                   long long first_index)
    : samples_(std::move(samples)),
      period_(period),
      rounded_period_(round_period(period)),
      step_(step),
      first_index_(first_index) {
    if (samples_.size() < static_cast<std::size_t>(step_.node_count()))
        throw std::invalid_argument("continuous signal needs at least one full kernel support");
}

double ContinuousSignal::value(double t) const {
    const double position = t * period_;
    const SplitFraction p = split_fraction(position);
    const long long n = static_cast<long long>(p.integral);

    const long long lo = n + step_.min_offset();
    const long long hi = n + step_.max_offset();
    if (lo < first_index_) throw BoundaryError(lo, "signal interpolation");
    if (hi >= end_index()) throw BoundaryError(hi, "signal interpolation");

    double w[kMaxKernelNodes];
    const int count = step_.node_count();
    step_.weights(p.fraction, {w, static_cast<std::size_t>(count)});

    double acc = 0.0;
    for (int j = 0; j < count; ++j)
        acc += w[j] * samples_[static_cast<std::size_t>(lo + j - first_index_)];
    return acc;
}

double Cylinder::value(double t, Phase phi) const {
    const double period = source_.period();
    const double rt = static_cast<double>(source_.rounded_period());
    const double frac_l = split_fraction(t - representative(phi)).fraction;

    double w[kMaxKernelNodes];
    const int count = leap_.node_count();
    leap_.weights(frac_l, {w, static_cast<std::size_t>(count)});

    // Walk the leap axis: node k sits (frac_l - k) leaps behind the query,
    // each leap spanning round(T) samples.
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
        const int k = leap_.min_offset() + i;
        const double sample_position = t * period - (frac_l - k) * rt;
        acc += w[i] * source_.value(sample_position / period);
    }
    return acc;
}

double sample_path(const Cylinder& y, const std::function<double(double)>& shape,
                   const std::function<double(double)>& phase, double t) {
    return y.value(shape(t), periodise(phase(t)));
}

double transform(const Cylinder& y, double v, double alpha, double t) {
    return y.value(v * t, periodise(alpha * t));
}

double map_frequency(double a, double v, double alpha) {
    if (!std::isfinite(a)) throw std::invalid_argument("map_frequency: frequency must be finite");
    const double n = std::round(a);
    const double b = a - n;
    if (std::abs(b) >= 0.5)
        throw std::invalid_argument(
            "map_frequency: fractional frequency part must satisfy |b| < 1/2; the "
            "half-integer case diverges");
    return b * v + n * alpha;
}

}  // namespace helicon
