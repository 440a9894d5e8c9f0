#include "nli/biphoton.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

namespace nli {

namespace {

// Containment gates on the boundary-frame intensity fraction. Lorentzian
// line shapes have power-law tails, so the cascade gate is necessarily looser
// than the Gaussian one; it still rejects grids that truncate the state.
constexpr double kGaussianFrameGate = 1e-6;
constexpr double kCascadeFrameGate = 1e-3;

double lorentzian(double x, double gamma) {
    return gamma * gamma / (gamma * gamma + x * x);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void check_containment(const JointAmplitude& state, double gate, const char* what) {
    const double frac = state.boundary_frame_fraction();
    if (frac > gate)
        throw std::domain_error(std::string(what) +
                                ": state not contained by the grid (boundary fraction " +
                                fmt(frac) + " > " + fmt(gate) + "); enlarge the span");
}

}  // namespace

std::string source_id(const SourceSpec& spec) {
    if (const auto* c = std::get_if<CascadeSpec>(&spec))
        return "cascade(sum_frequency=" + fmt(c->sum_frequency) + ",tau1=" + fmt(c->tau1) +
               ",tau2=" + fmt(c->tau2) + ")";
    if (const auto* g = std::get_if<GaussianPdcSpec>(&spec))
        return "gaussian-pdc(sigma_sum=" + fmt(g->sigma_sum) +
               ",sigma_diff=" + fmt(g->sigma_diff) + ")";
    const auto& t = std::get<TimeBinSpec>(spec);
    return "time-bin(pulse_width=" + fmt(t.pulse_width) + ",separation=" + fmt(t.separation) +
           ",phase=" + fmt(t.phase) + ")";
}

JointAmplitude make_cascade_state(const CascadeSpec& spec, const FrequencyGrid& grid) {
    if (!(spec.tau2 > 0.0) || !(spec.tau1 > spec.tau2))
        throw std::invalid_argument("make_cascade_state: requires tau1 > tau2 > 0");
    validate_axis(grid.axis1, "axis1");
    validate_axis(grid.axis2, "axis2");

    const double gamma_sum = 1.0 / spec.tau1;
    const double gamma2 = 1.0 / spec.tau2;

    // The sum-frequency line must be resolved (the dual time window must
    // cover the tau1-scale envelope) and the broad line must fit the span.
    for (const Axis* ax : {&grid.axis1, &grid.axis2}) {
        if (ax->step > gamma_sum)
            throw std::domain_error(
                "make_cascade_state: grid step " + fmt(ax->step) +
                " does not resolve the sum-frequency linewidth 1/tau1 = " + fmt(gamma_sum));
        if (ax->span() < 4.0 * gamma2)
            throw std::domain_error(
                "make_cascade_state: axis span " + fmt(ax->span()) +
                " < 4/tau2; the second-photon line does not fit the grid");
    }

    const double c2 = grid.axis2.center;
    std::vector<cplx> values(std::size_t(grid.axis1.n) * grid.axis2.n);
    for (int i = 0; i < grid.axis1.n; ++i) {
        const double w1 = grid.axis1.value(i);
        for (int j = 0; j < grid.axis2.n; ++j) {
            const double w2 = grid.axis2.value(j);
            values[std::size_t(i) * grid.axis2.n + j] =
                lorentzian(w1 + w2 - spec.sum_frequency, gamma_sum) *
                lorentzian(w2 - c2, gamma2);
        }
    }

    JointAmplitude state(Domain::Frequency, grid.axis1, grid.axis2, std::move(values));
    check_containment(state, kCascadeFrameGate, "make_cascade_state");
    return state;
}

JointAmplitude make_gaussian_pdc_state(const GaussianPdcSpec& spec, const FrequencyGrid& grid) {
    if (!(spec.sigma_sum > 0.0) || !(spec.sigma_diff > 0.0))
        throw std::invalid_argument("make_gaussian_pdc_state: widths must be positive");
    validate_axis(grid.axis1, "axis1");
    validate_axis(grid.axis2, "axis2");
    const double step = std::max(grid.axis1.step, grid.axis2.step);
    if (step > std::min(spec.sigma_sum, spec.sigma_diff))
        throw std::domain_error(
            "make_gaussian_pdc_state: grid step does not resolve the narrower envelope");

    const double ws = spec.center1 + spec.center2;
    const double wd = spec.center1 - spec.center2;
    std::vector<cplx> values(std::size_t(grid.axis1.n) * grid.axis2.n);
    for (int i = 0; i < grid.axis1.n; ++i) {
        const double w1 = grid.axis1.value(i);
        for (int j = 0; j < grid.axis2.n; ++j) {
            const double w2 = grid.axis2.value(j);
            const double xs = w1 + w2 - ws;
            const double xd = w1 - w2 - wd;
            values[std::size_t(i) * grid.axis2.n + j] =
                std::exp(-xs * xs / (4.0 * spec.sigma_sum * spec.sigma_sum) -
                         xd * xd / (4.0 * spec.sigma_diff * spec.sigma_diff));
        }
    }

    JointAmplitude state(Domain::Frequency, grid.axis1, grid.axis2, std::move(values));
    check_containment(state, kGaussianFrameGate, "make_gaussian_pdc_state");
    return state;
}

JointAmplitude make_timebin_state(const TimeBinSpec& spec, const TimeGrid& grid) {
    if (!(spec.pulse_width > 0.0))
        throw std::invalid_argument("make_timebin_state: pulse_width must be positive");
    if (!(spec.separation > 5.0 * spec.pulse_width))
        throw std::invalid_argument(
            "make_timebin_state: bins overlap (separation must exceed 5 * pulse_width)");
    validate_axis(grid.axis1, "axis1");
    validate_axis(grid.axis2, "axis2");

    for (const Axis* ax : {&grid.axis1, &grid.axis2}) {
        if (ax->step > spec.pulse_width / 4.0)
            throw std::domain_error("make_timebin_state: need >= 4 cells per pulse width");
        const double lo = ax->value(0), hi = ax->value(ax->n - 1);
        if (lo > -4.0 * spec.pulse_width || hi < spec.separation + 4.0 * spec.pulse_width)
            throw std::domain_error("make_timebin_state: grid does not cover both bins");
    }

    // Amplitude width 2 sigma^2 in the exponent so the intensity RMS is sigma.
    const double denom = 4.0 * spec.pulse_width * spec.pulse_width;
    auto g = [&](double t) { return std::exp(-t * t / denom); };
    const cplx bin_phase = std::polar(1.0, spec.phase);

    std::vector<cplx> values(std::size_t(grid.axis1.n) * grid.axis2.n);
    for (int i = 0; i < grid.axis1.n; ++i) {
        const double t1 = grid.axis1.value(i);
        for (int j = 0; j < grid.axis2.n; ++j) {
            const double t2 = grid.axis2.value(j);
            values[std::size_t(i) * grid.axis2.n + j] =
                g(t1) * g(t2) +
                bin_phase * g(t1 - spec.separation) * g(t2 - spec.separation);
        }
    }

    JointAmplitude state(Domain::Time, grid.axis1, grid.axis2, std::move(values));
    check_containment(state, kGaussianFrameGate, "make_timebin_state");
    return state;
}

double first_order_coherence_time(const JointAmplitude& state) {
    std::optional<JointAmplitude> converted;
    const JointAmplitude* freq = &state;
    if (state.domain() == Domain::Time) {
        converted.emplace(to_frequency_domain(state));
        freq = &*converted;
    }

    const Moments m1 = weighted_moments(freq->marginal1(), freq->axis1().value(0),
                                        freq->axis1().step);
    const Moments m2 = weighted_moments(freq->marginal2(), freq->axis2().value(0),
                                        freq->axis2().step);
    const double sigma_w = std::sqrt(0.5 * (m1.rms * m1.rms + m2.rms * m2.rms));
    return 1.0 / (2.0 * sigma_w);
}

double second_order_coherence_time(const JointAmplitude& state) {
    std::optional<JointAmplitude> converted;
    const JointAmplitude* time = &state;
    if (state.domain() == Domain::Frequency) {
        converted.emplace(to_time_domain(state));
        time = &*converted;
    }

    const LagMarginal sum = sum_marginal(*time);
    const Moments m = weighted_moments(sum.weights, sum.first, sum.step);
    return m.rms / std::sqrt(2.0);
}

}  // namespace nli
