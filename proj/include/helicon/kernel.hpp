#pragma once

// Interpolation kernels shared by the continuous reference evaluator and the
// discrete skew-grid evaluator.
//
// A kernel is described by the integer node offsets it touches for an in-cell
// query and by its weight vector at an in-cell position lambda in [0,1):
// the value at base node n + lambda is sum_j weight[j] * u(n + offset_j).
// All kernels here are interpolating: lambda = 0 yields the unit weight on
// offset 0, so queries on the unit helix reproduce samples exactly.

#include <array>
#include <span>
#include <string_view>

namespace helicon {

enum class KernelKind { constant, hat, cubic, windowed_sinc };

// Pointwise kernel functions.
double eval_constant(double t);                    // indicator of (-1, 0]
double eval_hat(double t);                         // max(0, 1 - |t|)
double eval_windowed_sinc(double t, int radius);   // sinc with integral zeros, Hann window
std::array<double, 4> eval_cubic_weights(double lambda);  // Catmull-Rom over {-1,0,1,2}

class Kernel {
public:
    static Kernel constant() { return Kernel(KernelKind::constant, 0); }
    static Kernel hat() { return Kernel(KernelKind::hat, 0); }
    static Kernel cubic() { return Kernel(KernelKind::cubic, 0); }
    static Kernel windowed_sinc(int radius);

    // CLI selection strings: "constant", "linear", "cubic", "sinc:<radius>".
    static Kernel parse(std::string_view text);

    KernelKind kind() const { return kind_; }
    int radius() const { return radius_; }
    bool interpolating() const { return true; }

    int min_offset() const;
    int max_offset() const;
    int node_count() const { return max_offset() - min_offset() + 1; }

    // In-cell weight vector at lambda in [0,1); out.size() == node_count().
    // Windowed-sinc weights are normalised to unit sum so constant signals
    // and static waves pass through unchanged.
    void weights(double lambda, std::span<double> out) const;

    // The kernel as a plain function of the node distance.  The constant
    // kernel is the one asymmetric case: its cell weights use the mirrored
    // indicator [0,1) so its single supported node is the cell base.
    double evaluate(double t) const;

    std::string_view name() const;

    friend bool operator==(const Kernel& a, const Kernel& b) {
        return a.kind_ == b.kind_ && a.radius_ == b.radius_;
    }

private:
    Kernel(KernelKind kind, int radius) : kind_(kind), radius_(radius) {}
    KernelKind kind_;
    int radius_;
};

// Largest node count any kernel may report; callers use it for stack buffers.
inline constexpr int kMaxKernelNodes = 64;

}  // namespace helicon
