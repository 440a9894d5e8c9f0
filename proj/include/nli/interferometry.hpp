#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nli/grid.hpp"

namespace nli {

// One unbalanced Mach-Zehnder: long-short path delay and the long-arm phase.
// The phase is reduced to [0, 2*pi) on construction.
struct UnbalancedMZ {
    UnbalancedMZ(double delay_in, double phase_in);
    double delay;
    double phase;
};

enum class Port { H, V };

// Two matched unbalanced interferometers plus the coincidence window and the
// selected output-port pair. Both beam splitters are symmetric 50/50 with
// transmission 1/sqrt(2) and reflection i/sqrt(2); port H is the output whose
// long-arm contribution carries a + sign under that convention, port V the
// one with a - sign.
struct FransonSetup {
    FransonSetup(UnbalancedMZ left_in, UnbalancedMZ right_in, double window_in,
                 Port port_left_in = Port::H, Port port_right_in = Port::H);
    UnbalancedMZ left;
    UnbalancedMZ right;
    double window;
    Port port_left;
    Port port_right;
};

struct PhasePoint {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double rate = 0.0;
};

struct FringeScan {
    std::vector<PhasePoint> points;
    std::string source;
    std::vector<std::string> warnings;
};

// Precomputes the windowed pairwise overlaps of the four path-shifted copies
// of the state, after which each (phi1, phi2, port-pair) rate costs O(1).
// Delays are rounded to whole grid cells; reads past the grid edge are zero.
class FransonAnalyzer {
public:
    FransonAnalyzer(const JointAmplitude& state, double delay_left, double delay_right,
                    double window);

    // Windowed coincidence integral (not normalized).
    double rate(double phi1, double phi2, Port p1, Port p2) const;
    // Same but without the |t1 - t2| <= window gate.
    double rate_windowless(double phi1, double phi2, Port p1, Port p2) const;

    // Reference value for normalization: HH rate at phi1 = phi2 = 0, the
    // fringe maximum in the valid regime.
    double reference() const { return reference_; }

    // 1/4 of the total retained mass of the four shifted copies; equals the
    // sum of the four windowless port-pair rates at any fixed phases.
    double pair_detection_probability() const;

    double effective_delay_left() const { return delay_cells_left_ * step_; }
    double effective_delay_right() const { return delay_cells_right_ * step_; }

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    struct Overlaps {
        double m00 = 0, mL0 = 0, m0L = 0, mLL = 0;
        cplx x00_L0, x00_0L, x00_LL, xL0_0L, xL0_LL, x0L_LL;
    };
    double rate_from(const Overlaps& o, double phi1, double phi2, Port p1, Port p2) const;

    Overlaps windowed_;
    Overlaps full_;
    int delay_cells_left_ = 0;
    int delay_cells_right_ = 0;
    double step_ = 0.0;
    double reference_ = 0.0;
    std::vector<std::string> warnings_;
};

// Joint detection amplitude at (t1, t2): the coherent sum of the SS, LL, LS
// and SL paths with the port-dependent signs of the 50/50 convention.
// Requires a time-domain state.
cplx coincidence_amplitude(const JointAmplitude& state, const FransonSetup& setup,
                           double t1, double t2);

// Windowed coincidence rate normalized so the HH rate at phi1 + phi2 = 0 is 1.
// Regime violations (window vs correlation time vs delay vs pair coherence
// time) are appended to *warnings when provided; they are not fatal.
double coincidence_rate(const JointAmplitude& state, const FransonSetup& setup,
                        std::vector<std::string>* warnings = nullptr);

FringeScan fringe_scan(const JointAmplitude& state, const FransonSetup& setup,
                       std::span<const std::pair<double, double>> phases);

// Fringe visibility (Rmax - Rmin) / (Rmax + Rmin) from a least-squares fit of
// C0 + C1 cos(phi1 + phi2) + C2 sin(phi1 + phi2). Throws if the scan covers
// less than 7*pi/4 of the phase-sum period.
double visibility(const FringeScan& scan);

struct ChshSettings {
    double a = 0.0;
    double a_prime = 0.0;
    double b = 0.0;
    double b_prime = 0.0;
};

enum class ChshMinusTerm { AB, ABPrime, APrimeB, APrimeBPrime };

// S from the four port-pair correlation values E(phi1, phi2). The minus sign
// defaults to the (a', b') term. visibility_scale parametrically degrades the
// correlations, modeling reduced fringe visibility.
double chsh_value(const JointAmplitude& state, const FransonSetup& setup,
                  const ChshSettings& settings,
                  ChshMinusTerm minus = ChshMinusTerm::APrimeBPrime,
                  double visibility_scale = 1.0,
                  std::vector<std::string>* warnings = nullptr);

// Eq.-style classical-field visibility bound from the bare coincidence rates
// R_c0 at relative delays 0 and dt (no interferometers in place).
double classical_bound(const JointAmplitude& state, double dt);

struct ClassicalBoundCheck {
    double bound = 0.0;
    double visibility = 0.0;
    bool violated = false;
    double margin = 0.0;
};

// Compares the bound at dt (default: the interferometer delay) against the
// simulated fringe visibility of the setup.
ClassicalBoundCheck classical_bound_violated(const JointAmplitude& state,
                                             const FransonSetup& setup, double dt);

}  // namespace nli
