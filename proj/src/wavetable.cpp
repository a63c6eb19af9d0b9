#include "helicon/wavetable.hpp"

#include <cmath>
#include <limits>

#include "helicon/errors.hpp"
#include "helicon/skew_grid.hpp"

namespace helicon {

double eval_wavetable(const WavetableTone& wt, double t, Phase phi) {
    if (!std::isfinite(t)) throw std::invalid_argument("eval_wavetable: t must be finite");
    const long long T = wt.period;
    const double s = static_cast<double>(T) * representative(phi);
    const SplitFraction ts = split_fraction(t);
    const SplitFraction ss = split_fraction(s);
    const long long n = T * static_cast<long long>(ts.integral) + static_cast<long long>(ss.integral);

    const auto& u = wt.samples;
    const long long last = static_cast<long long>(u.size()) - 1;
    if (n < 0) throw BoundaryError(n, "eval_wavetable");
    if (n + T + 1 > last) throw BoundaryError(n + T + 1, "eval_wavetable");

    const double a = lerp(u[n], u[n + 1], ss.fraction);
    const double b = lerp(u[n + T], u[n + T + 1], ss.fraction);
    return lerp(a, b, ts.fraction);
}

double wavetable_time_max(const WavetableTone& wt) {
    // floor(t)*T + (T-1) + T + 1 <= len-1 for the worst phase.
    const long long T = wt.period;
    const long long cap = (static_cast<long long>(wt.samples.size()) - 1) / T - 2;
    double t_max = static_cast<double>(cap + 1);
    // t must stay strictly below cap+1 so floor(t) <= cap.
    t_max = std::nextafter(t_max, -std::numeric_limits<double>::infinity());
    if (cap < 0) throw std::invalid_argument("wavetable too short to render");
    return t_max;
}

std::vector<double> render_batch_wavetable(const WavetableTone& wt, const ControlCurve& shape,
                                           const ControlCurve& phase, std::size_t count) {
    const double t_max = wavetable_time_max(wt);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        double t = shape.value(k);
        t = t < 0.0 ? 0.0 : (t > t_max ? t_max : t);
        out.push_back(eval_wavetable(wt, t, periodise(phase.value(k))));
    }
    return out;
}

}  // namespace helicon
