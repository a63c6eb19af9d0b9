#pragma once

// Direct, unoptimised evaluation of the tone-on-a-cylinder model, used as the
// correctness reference for the skew-grid evaluator and for frequency-mapping
// arithmetic.
//
// A ContinuousSignal turns discrete samples u with wave period T into a
// function of shape time (in waves) with x(n/T) = u(n).  A Cylinder wraps it
// together with a leap kernel: the signal is laid onto the cylinder along its
// helix and interpolated across waves with that kernel, one wave apart in
// phase and round(T) samples apart in the data.  For integral T this is
// exactly the classic kernel interpolation over the phase class of the query;
// for fractional T the leap axis is skewed by round(T)/T, matching the
// periodic discrete scheme (interpolating the step-reconstructed signal at
// unit wave spacing instead would split every cell into two unequal halves).
//
// Everything here evaluates one point per call with no caching; it exists for
// correctness, not speed.

#include <functional>
#include <vector>

#include "helicon/kernel.hpp"
#include "helicon/phase.hpp"
#include "helicon/tone.hpp"

namespace helicon {

class ContinuousSignal {
public:
    // Valid sample indices are [first_index, first_index + samples.size()).
    ContinuousSignal(std::vector<double> samples, double period, Kernel step,
                     long long first_index = 0);
    ContinuousSignal(const SampledTone& tone, Kernel step)
        : ContinuousSignal(tone.samples, tone.period, step) {}

    // x(t) for shape time t in waves; x(n/T) = u(n) for interpolating kernels.
    double value(double t) const;

    double period() const { return period_; }
    long long rounded_period() const { return rounded_period_; }
    long long first_index() const { return first_index_; }
    long long end_index() const { return first_index_ + static_cast<long long>(samples_.size()); }
    const Kernel& step_kernel() const { return step_; }

private:
    std::vector<double> samples_;
    double period_;
    long long rounded_period_;
    Kernel step_;
    long long first_index_;
};

class Cylinder {
public:
    Cylinder(ContinuousSignal source, Kernel leap)
        : source_(std::move(source)), leap_(leap) {}

    // Has period 1 in phi by construction.
    double value(double t, Phase phi) const;

    // Ring slice at time zero: value(0, phi).
    double slice_at_zero(Phase phi) const { return value(0.0, phi); }

    const ContinuousSignal& source() const { return source_; }
    const Kernel& leap_kernel() const { return leap_; }

private:
    ContinuousSignal source_;
    Kernel leap_;
};

// Observation along a path: y(h(t), g(t)) with the phase curve wrapped.
double sample_path(const Cylinder& y, const std::function<double(double)>& shape,
                   const std::function<double(double)>& phase, double t);

// Uniform-helix observation with time progression v and angular speed alpha.
double transform(const Cylinder& y, double v, double alpha, double t);

// Frequency mapping a = b + n (|b| < 1/2, n the nearest integer) |-> b*v + n*alpha.
// The half-integer case is rejected: the underlying interpolation diverges.
double map_frequency(double a, double v, double alpha);

}  // namespace helicon
