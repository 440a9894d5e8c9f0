#pragma once

#include <string>
#include <variant>

#include "nli/grid.hpp"

namespace nli {

struct FrequencyGrid {
    Axis axis1, axis2;
};

struct TimeGrid {
    Axis axis1, axis2;
};

// Atomic-cascade pair source. sum_frequency is the total transition frequency
// (Delta E_A in hbar = 1 units); tau1 and tau2 are the two transition times,
// tau1 > tau2 > 0. The slow first transition pins omega1 + omega2 to
// sum_frequency within 1/tau1; the second photon has linewidth 1/tau2 around
// the grid's axis-2 center.
struct CascadeSpec {
    double sum_frequency = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
};

// Down-conversion source with Gaussian envelopes in the sum and difference
// frequencies. sigma_sum < sigma_diff gives frequency anti-correlation;
// sigma_sum = sigma_diff is a product state.
struct GaussianPdcSpec {
    double center1 = 0.0;
    double center2 = 0.0;
    double sigma_sum = 0.0;
    double sigma_diff = 0.0;
};

// Pair emitted by one of two pump pulses separated by `separation`, with
// relative phase `phase`. pulse_width is the intensity RMS width of each bin.
struct TimeBinSpec {
    double pulse_width = 0.0;
    double separation = 0.0;
    double phase = 0.0;
};

using SourceSpec = std::variant<CascadeSpec, GaussianPdcSpec, TimeBinSpec>;

std::string source_id(const SourceSpec& spec);

// f(w1, w2) = N * L(w1 + w2 - sum_frequency; 1/tau1) * L(w2 - c2; 1/tau2)
// with L a unit-peak Lorentzian and c2 the axis-2 center.
JointAmplitude make_cascade_state(const CascadeSpec& spec, const FrequencyGrid& grid);

// f = N * exp(-(w1+w2-ws)^2 / 4 sigma_sum^2) * exp(-(w1-w2-wd)^2 / 4 sigma_diff^2),
// ws and wd taken from the spec's center frequencies.
JointAmplitude make_gaussian_pdc_state(const GaussianPdcSpec& spec, const FrequencyGrid& grid);

// g(t1) g(t2) + e^{i phase} g(t1 - T) g(t2 - T), g Gaussian of width pulse_width.
JointAmplitude make_timebin_state(const TimeBinSpec& spec, const TimeGrid& grid);

// Coherence-time diagnostics, both intensity-weighted:
//  - first_order_coherence_time: transform-limited single-photon duration
//    1 / (2 sigma_w), with sigma_w^2 the mean of the two marginal-spectrum
//    variances.
//  - second_order_coherence_time: RMS width of the symmetric pair emission
//    coordinate (t1 + t2) / sqrt(2).
// A separable transform-limited state gives a ratio of exactly 1; for a
// cascade the ratio grows like tau1 / tau2.
double first_order_coherence_time(const JointAmplitude& state);
double second_order_coherence_time(const JointAmplitude& state);

}  // namespace nli
