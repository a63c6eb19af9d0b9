#pragma once

// Cyclic (phase) arithmetic and period rounding.
//
// A Phase is a point on the unit circle R/Z, stored as its canonical
// representative in [0,1).  All grid math derives from two helpers here:
// periodise (wrap a real into [0,1)) and round_period (samples per wave,
// rounded to the nearest integer).

#include <cmath>
#include <stdexcept>
#include <string>

namespace helicon {

struct SplitFraction {
    double integral;
    double fraction;  // in [0,1)
};

// floor/fraction split with a guard for the fraction rounding up to 1.0
// (happens for tiny negative inputs).
inline SplitFraction split_fraction(double x) {
    double ip = std::floor(x);
    double f = x - ip;
    if (f >= 1.0) {
        ip += 1.0;
        f = 0.0;
    }
    return {ip, f};
}

class Phase {
public:
    double representative() const { return rep_; }

private:
    friend Phase periodise(double);
    explicit Phase(double rep) : rep_(rep) {}
    double rep_;
};

inline Phase periodise(double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("periodise: value must be finite");
    return Phase(split_fraction(t).fraction);
}

inline double representative(Phase phi) { return phi.representative(); }

// Nearest integer, ties away from zero.  Wave periods below 2 samples are
// rejected: a wave carrying fewer than two samples cannot be interpolated
// in the step direction.
inline long long round_period(double period) {
    if (!std::isfinite(period) || period < 2.0)
        throw std::invalid_argument("round_period: wave period must be finite and >= 2, got " +
                                    std::to_string(period));
    return std::llround(period);
}

}  // namespace helicon
