#pragma once

#include "nli/grid.hpp"

namespace nli {

// Dispersive medium characterized by a second-order Taylor expansion of k(w)
// around the carrier: k0 (rad/length), group slowness k1 = dk/dw
// (time/length), k2 = d^2k/dw^2 (time^2/length), and propagation length.
// Higher orders are out of scope.
struct DispersiveMedium {
    DispersiveMedium(double k0_in, double k1_in, double k2_in, double length_in);
    double k0;
    double k1;
    double k2;
    double length;

    DispersiveMedium negated() const { return {-k0, -k1, -k2, length}; }
};

// Multiplies the selected frequency axis (arm 1 or 2) by
// exp(i * length * (k0 + k1 * dw + k2/2 * dw^2)), dw relative to that axis's
// center. Pure phase: the norm is preserved.
JointAmplitude apply_medium(const JointAmplitude& state, const DispersiveMedium& medium,
                            int arm);

// RMS width of the t1 - t2 marginal intensity (any input domain).
double correlation_width(const JointAmplitude& state);

// Ratio of the correlation width after media on arms 1 and 2 to the bare
// width. Requires a frequency-anticorrelated input; equal-and-opposite
// second-order media give a ratio of 1.
double nonlocal_cancellation_check(const JointAmplitude& state, const DispersiveMedium& m1,
                                   const DispersiveMedium& m2);

}  // namespace nli
