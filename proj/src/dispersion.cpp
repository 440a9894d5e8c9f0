#include "nli/dispersion.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace nli {

DispersiveMedium::DispersiveMedium(double k0_in, double k1_in, double k2_in, double length_in)
    : k0(k0_in), k1(k1_in), k2(k2_in), length(length_in) {
    if (!(length >= 0.0))
        throw std::invalid_argument("DispersiveMedium: length must be >= 0");
    for (double c : {k0, k1, k2})
        if (!std::isfinite(c))
            throw std::invalid_argument("DispersiveMedium: coefficients must be finite");
}

JointAmplitude apply_medium(const JointAmplitude& state, const DispersiveMedium& medium,
                            int arm) {
    if (state.domain() != Domain::Frequency)
        throw std::invalid_argument("apply_medium: state must be in the frequency domain");
    if (arm != 1 && arm != 2) throw std::invalid_argument("apply_medium: arm must be 1 or 2");

    const Axis& ax = (arm == 1) ? state.axis1() : state.axis2();
    std::vector<cplx> phase(ax.n);
    for (int k = 0; k < ax.n; ++k) {
        const double dw = ax.value(k) - ax.center;
        phase[k] = std::polar(
            1.0, medium.length * (medium.k0 + medium.k1 * dw + 0.5 * medium.k2 * dw * dw));
    }

    std::vector<cplx> values = state.values();
    const int n1 = state.n1(), n2 = state.n2();
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            values[std::size_t(i) * n2 + j] *= (arm == 1) ? phase[i] : phase[j];

    return JointAmplitude(Domain::Frequency, state.axis1(), state.axis2(), std::move(values),
                          JointAmplitude::Normalize::No);
}

double correlation_width(const JointAmplitude& state) {
    std::optional<JointAmplitude> storage;
    const JointAmplitude* ts = &state;
    if (state.domain() == Domain::Frequency) {
        storage.emplace(to_time_domain(state));
        ts = &*storage;
    }
    const LagMarginal diff = difference_marginal(*ts);
    return weighted_moments(diff.weights, diff.first, diff.step).rms;
}

double nonlocal_cancellation_check(const JointAmplitude& state, const DispersiveMedium& m1,
                                   const DispersiveMedium& m2) {
    if (state.domain() != Domain::Frequency)
        throw std::invalid_argument(
            "nonlocal_cancellation_check: state must be in the frequency domain");
    const double bare = correlation_width(state);
    const JointAmplitude dispersed = apply_medium(apply_medium(state, m1, 1), m2, 2);
    return correlation_width(dispersed) / bare;
}

}  // namespace nli
