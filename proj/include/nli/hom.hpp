#pragma once

#include <optional>
#include <span>

#include "nli/dispersion.hpp"
#include "nli/grid.hpp"

namespace nli {

// Hong-Ou-Mandel configuration: relative delay of arm 1 and an optional
// dispersive element in that arm (applied to the state before the overlap).
struct HomSetup {
    double delay = 0.0;
    std::optional<DispersiveMedium> medium;
};

// Coincidence probability behind a symmetric 50/50 beam splitter:
//   P(tau) = 1/2 - 1/2 Re sum f(w1, w2) conj(f(w2, w1)) e^{i (w1 - w2) tau}.
// Requires a frequency-domain state with identical axes.
double hom_coincidence(const JointAmplitude& state, const HomSetup& setup);

struct HomScan {
    std::vector<double> delays;
    std::vector<double> probabilities;
    double dip_visibility = 0.0;  // (0.5 - P_min) / 0.5
    double dip_rms_width = 0.0;   // moment-based width of 0.5 - P
    double dip_center = 0.0;      // centroid of 0.5 - P
};

// Element-wise hom_coincidence over the delay list, plus moment-based dip
// diagnostics. An empty delay list yields an empty scan.
HomScan hom_scan(const JointAmplitude& state, std::span<const double> delays,
                 const std::optional<DispersiveMedium>& medium = std::nullopt);

// Ratio of the dip RMS width with the medium in arm 1 to the bare width,
// evaluated on the same delay list.
double hom_dispersion_cancellation(const JointAmplitude& state, const DispersiveMedium& medium,
                                   std::span<const double> delays);

}  // namespace nli
