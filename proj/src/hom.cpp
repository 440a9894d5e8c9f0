#include "nli/hom.hpp"

#include <cmath>
#include <stdexcept>

namespace nli {

namespace {

void require_hom_state(const JointAmplitude& state) {
    if (state.domain() != Domain::Frequency)
        throw std::invalid_argument("hom: state must be in the frequency domain");
    const Axis& a1 = state.axis1();
    const Axis& a2 = state.axis2();
    if (a1.n != a2.n || std::abs(a1.center - a2.center) > 1e-12 * std::abs(a1.step) ||
        std::abs(a1.step - a2.step) > 1e-12 * a1.step)
        throw std::invalid_argument("hom: the two photons must share one frequency axis");
}

// Exchange overlap grouped by frequency lag: S_d = sum_j f(j, j-d) conj(f(j-d, j)).
// P(tau) is then 1/2 - 1/2 Re sum_d S_d e^{i d dw tau}, O(n) per delay.
std::vector<cplx> lag_overlaps(const JointAmplitude& state) {
    const int n = state.n1();
    std::vector<cplx> s(std::size_t(2 * n - 1));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            s[std::size_t(j - k + n - 1)] += state.at(j, k) * std::conj(state.at(k, j));
    return s;
}

double coincidence_from_lags(const std::vector<cplx>& s, double dw, double tau) {
    const int n = (int(s.size()) + 1) / 2;
    cplx overlap{};
    for (int d = -(n - 1); d <= n - 1; ++d)
        overlap += s[std::size_t(d + n - 1)] * std::polar(1.0, double(d) * dw * tau);
    return 0.5 - 0.5 * overlap.real();
}

}  // namespace

double hom_coincidence(const JointAmplitude& state, const HomSetup& setup) {
    require_hom_state(state);
    const JointAmplitude* s = &state;
    std::optional<JointAmplitude> dispersed;
    if (setup.medium) {
        dispersed.emplace(apply_medium(state, *setup.medium, 1));
        s = &*dispersed;
    }
    return coincidence_from_lags(lag_overlaps(*s), s->axis1().step, setup.delay);
}

HomScan hom_scan(const JointAmplitude& state, std::span<const double> delays,
                 const std::optional<DispersiveMedium>& medium) {
    HomScan scan;
    if (delays.empty()) return scan;

    require_hom_state(state);
    const JointAmplitude* s = &state;
    std::optional<JointAmplitude> dispersed;
    if (medium) {
        dispersed.emplace(apply_medium(state, *medium, 1));
        s = &*dispersed;
    }
    const std::vector<cplx> lags = lag_overlaps(*s);
    const double dw = s->axis1().step;

    scan.delays.assign(delays.begin(), delays.end());
    scan.probabilities.reserve(delays.size());
    double p_min = 1.0;
    for (double tau : delays) {
        const double p = coincidence_from_lags(lags, dw, tau);
        scan.probabilities.push_back(p);
        p_min = std::min(p_min, p);
    }
    scan.dip_visibility = (0.5 - p_min) / 0.5;

    // Moment-based dip shape on the depth profile 0.5 - P.
    double mass = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < scan.delays.size(); ++i) {
        const double depth = std::max(0.0, 0.5 - scan.probabilities[i]);
        mass += depth;
        mean += depth * scan.delays[i];
    }
    if (mass > 0.0) {
        mean /= mass;
        double var = 0.0;
        for (std::size_t i = 0; i < scan.delays.size(); ++i) {
            const double depth = std::max(0.0, 0.5 - scan.probabilities[i]);
            const double x = scan.delays[i] - mean;
            var += depth * x * x;
        }
        scan.dip_center = mean;
        scan.dip_rms_width = std::sqrt(var / mass);
    }
    return scan;
}

double hom_dispersion_cancellation(const JointAmplitude& state, const DispersiveMedium& medium,
                                   std::span<const double> delays) {
    if (delays.empty())
        throw std::invalid_argument("hom_dispersion_cancellation: empty delay list");
    const HomScan bare = hom_scan(state, delays);
    const HomScan dispersed = hom_scan(state, delays, medium);
    if (!(bare.dip_rms_width > 0.0))
        throw std::domain_error("hom_dispersion_cancellation: no dip on the bare scan");
    return dispersed.dip_rms_width / bare.dip_rms_width;
}

}  // namespace nli
