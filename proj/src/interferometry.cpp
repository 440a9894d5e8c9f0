#include "nli/interferometry.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace nli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Soft regime margin: each inequality in tau2 << w << DT << tau1 is flagged
// when the ratio falls below this factor.
constexpr double kRegimeMargin = 3.0;

double port_sign(Port p) { return p == Port::H ? 1.0 : -1.0; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const JointAmplitude& as_time(const JointAmplitude& state,
                              std::optional<JointAmplitude>& storage) {
    if (state.domain() == Domain::Time) return state;
    storage.emplace(to_time_domain(state));
    return *storage;
}

}  // namespace

UnbalancedMZ::UnbalancedMZ(double delay_in, double phase_in) : delay(delay_in) {
    if (!(delay >= 0.0) || !std::isfinite(delay))
        throw std::invalid_argument("UnbalancedMZ: delay must be >= 0");
    phase = std::fmod(phase_in, kTwoPi);
    if (phase < 0.0) phase += kTwoPi;
}

FransonSetup::FransonSetup(UnbalancedMZ left_in, UnbalancedMZ right_in, double window_in,
                           Port port_left_in, Port port_right_in)
    : left(left_in),
      right(right_in),
      window(window_in),
      port_left(port_left_in),
      port_right(port_right_in) {
    if (!(window > 0.0))
        throw std::invalid_argument("FransonSetup: coincidence window must be positive");
    if (std::abs(left.delay - right.delay) > window)
        throw std::invalid_argument(
            "FransonSetup: interferometers are unmatched (delay difference exceeds the "
            "coincidence window)");
}

FransonAnalyzer::FransonAnalyzer(const JointAmplitude& state, double delay_left,
                                 double delay_right, double window) {
    std::optional<JointAmplitude> storage;
    const JointAmplitude& ts = as_time(state, storage);

    const Axis& ax1 = ts.axis1();
    const Axis& ax2 = ts.axis2();
    if (std::abs(ax1.step - ax2.step) > 1e-12 * ax1.step)
        throw std::invalid_argument("FransonAnalyzer: axes must share a time step");
    step_ = ax1.step;
    delay_cells_left_ = int(std::lround(delay_left / step_));
    delay_cells_right_ = int(std::lround(delay_right / step_));

    const int n1 = ts.n1(), n2 = ts.n2();
    const int d1 = delay_cells_left_, d2 = delay_cells_right_;
    const double wtol = window + 1e-12 * step_;

    for (int i = 0; i < n1; ++i) {
        const double t1 = ax1.value(i);
        for (int j = 0; j < n2; ++j) {
            const cplx v00 = ts.at(i, j);
            const cplx vL0 = (i >= d1) ? ts.at(i - d1, j) : cplx{};
            const cplx v0L = (j >= d2) ? ts.at(i, j - d2) : cplx{};
            const cplx vLL = (i >= d1 && j >= d2) ? ts.at(i - d1, j - d2) : cplx{};

            const bool in_window = std::abs(t1 - ax2.value(j)) <= wtol;
            for (Overlaps* o : {&full_, in_window ? &windowed_ : nullptr}) {
                if (!o) continue;
                o->m00 += std::norm(v00);
                o->mL0 += std::norm(vL0);
                o->m0L += std::norm(v0L);
                o->mLL += std::norm(vLL);
                o->x00_L0 += v00 * std::conj(vL0);
                o->x00_0L += v00 * std::conj(v0L);
                o->x00_LL += v00 * std::conj(vLL);
                o->xL0_0L += vL0 * std::conj(v0L);
                o->xL0_LL += vL0 * std::conj(vLL);
                o->x0L_LL += v0L * std::conj(vLL);
            }
        }
    }

    reference_ = rate_from(windowed_, 0.0, 0.0, Port::H, Port::H);

    // Regime diagnostics from the state itself.
    const LagMarginal diff = difference_marginal(ts);
    const LagMarginal sum = sum_marginal(ts);
    const double t_corr = weighted_moments(diff.weights, diff.first, diff.step).rms;
    const double t_env =
        weighted_moments(sum.weights, sum.first, sum.step).rms / std::sqrt(2.0);
    const double delay = 0.5 * (effective_delay_left() + effective_delay_right());

    if (window < kRegimeMargin * t_corr)
        warnings_.push_back("regime: coincidence window w=" + fmt(window) +
                            " does not exceed " + fmt(kRegimeMargin) +
                            "x the correlation time " + fmt(t_corr) + " (tau2 << w violated)");
    if (delay < kRegimeMargin * window)
        warnings_.push_back("regime: path delay " + fmt(delay) + " does not exceed " +
                            fmt(kRegimeMargin) + "x the window " + fmt(window) +
                            " (w << DT violated)");
    if (kRegimeMargin * delay > t_env)
        warnings_.push_back("regime: pair coherence time " + fmt(t_env) +
                            " does not exceed " + fmt(kRegimeMargin) + "x the delay " +
                            fmt(delay) + " (DT << tau1 violated)");
}

double FransonAnalyzer::rate_from(const Overlaps& o, double phi1, double phi2, Port p1,
                                  Port p2) const {
    const double s1 = port_sign(p1);
    const double s2 = port_sign(p2);
    const cplx e1 = std::polar(1.0, -phi1);
    const cplx e2 = std::polar(1.0, -phi2);

    const double msum = o.m00 + o.mL0 + o.m0L + o.mLL;
    const cplx cross = s1 * e1 * (o.x00_L0 + o.x0L_LL) + s2 * e2 * (o.x00_0L + o.xL0_LL) +
                       s1 * s2 * (e1 * e2 * o.x00_LL + e2 * std::conj(e1) * o.xL0_0L);
    return (msum + 2.0 * cross.real()) / 16.0;
}

double FransonAnalyzer::rate(double phi1, double phi2, Port p1, Port p2) const {
    return rate_from(windowed_, phi1, phi2, p1, p2);
}

double FransonAnalyzer::rate_windowless(double phi1, double phi2, Port p1, Port p2) const {
    return rate_from(full_, phi1, phi2, p1, p2);
}

double FransonAnalyzer::pair_detection_probability() const {
    return (full_.m00 + full_.mL0 + full_.m0L + full_.mLL) / 4.0;
}

cplx coincidence_amplitude(const JointAmplitude& state, const FransonSetup& setup,
                           double t1, double t2) {
    if (state.domain() != Domain::Time)
        throw std::invalid_argument("coincidence_amplitude: state must be in the time domain");
    const Axis& ax1 = state.axis1();
    const Axis& ax2 = state.axis2();

    auto sample = [&](double ta, double tb) -> cplx {
        const int i = int(std::lround((ta - ax1.center) / ax1.step)) + ax1.n / 2;
        const int j = int(std::lround((tb - ax2.center) / ax2.step)) + ax2.n / 2;
        if (i < 0 || i >= ax1.n || j < 0 || j >= ax2.n) return {};
        return state.at(i, j);
    };

    const double dL = setup.left.delay, dR = setup.right.delay;
    const double s1 = port_sign(setup.port_left), s2 = port_sign(setup.port_right);
    const cplx e1 = std::polar(1.0, setup.left.phase);
    const cplx e2 = std::polar(1.0, setup.right.phase);

    return 0.25 * (sample(t1, t2) + s1 * e1 * sample(t1 - dL, t2) +
                   s2 * e2 * sample(t1, t2 - dR) + s1 * s2 * e1 * e2 * sample(t1 - dL, t2 - dR));
}

double coincidence_rate(const JointAmplitude& state, const FransonSetup& setup,
                        std::vector<std::string>* warnings) {
    FransonAnalyzer an(state, setup.left.delay, setup.right.delay, setup.window);
    if (warnings)
        warnings->insert(warnings->end(), an.warnings().begin(), an.warnings().end());
    return an.rate(setup.left.phase, setup.right.phase, setup.port_left, setup.port_right) /
           an.reference();
}

FringeScan fringe_scan(const JointAmplitude& state, const FransonSetup& setup,
                       std::span<const std::pair<double, double>> phases) {
    FringeScan scan;
    if (phases.empty()) return scan;

    FransonAnalyzer an(state, setup.left.delay, setup.right.delay, setup.window);
    scan.warnings = an.warnings();
    scan.points.reserve(phases.size());
    for (const auto& [phi1, phi2] : phases)
        scan.points.push_back(
            {phi1, phi2,
             an.rate(phi1, phi2, setup.port_left, setup.port_right) / an.reference()});
    return scan;
}

double visibility(const FringeScan& scan) {
    if (scan.points.size() < 3)
        throw std::invalid_argument("visibility: scan has fewer than 3 points");

    double lo = scan.points.front().phi1 + scan.points.front().phi2;
    double hi = lo;
    for (const PhasePoint& p : scan.points) {
        const double phi = p.phi1 + p.phi2;
        lo = std::min(lo, phi);
        hi = std::max(hi, phi);
    }
    if (hi - lo < 1.75 * std::numbers::pi)
        throw std::invalid_argument("visibility: scan does not cover a full phase-sum period");

    // Least-squares fit of C0 + C1 cos(phi) + C2 sin(phi).
    double s[3][3] = {};
    double rhs[3] = {};
    for (const PhasePoint& p : scan.points) {
        const double phi = p.phi1 + p.phi2;
        const double basis[3] = {1.0, std::cos(phi), std::sin(phi)};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) s[a][b] += basis[a] * basis[b];
            rhs[a] += basis[a] * p.rate;
        }
    }
    const double det = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                       s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                       s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
    if (std::abs(det) < 1e-12)
        throw std::invalid_argument("visibility: degenerate phase coverage");

    auto solve = [&](int col) {
        double m[3][3];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m[a][b] = (b == col) ? rhs[a] : s[a][b];
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) /
               det;
    };
    const double c0 = solve(0), c1 = solve(1), c2 = solve(2);
    if (!(c0 > 0.0)) return 0.0;
    const double v = std::sqrt(c1 * c1 + c2 * c2) / c0;
    return std::min(v, 1.0);
}

double chsh_value(const JointAmplitude& state, const FransonSetup& setup,
                  const ChshSettings& settings, ChshMinusTerm minus, double visibility_scale,
                  std::vector<std::string>* warnings) {
    FransonAnalyzer an(state, setup.left.delay, setup.right.delay, setup.window);
    if (warnings)
        warnings->insert(warnings->end(), an.warnings().begin(), an.warnings().end());

    auto corr = [&](double phi1, double phi2) {
        const double hh = an.rate(phi1, phi2, Port::H, Port::H);
        const double vv = an.rate(phi1, phi2, Port::V, Port::V);
        const double hv = an.rate(phi1, phi2, Port::H, Port::V);
        const double vh = an.rate(phi1, phi2, Port::V, Port::H);
        const double total = hh + vv + hv + vh;
        if (!(total > 0.0)) throw std::domain_error("chsh_value: zero total coincidence rate");
        return visibility_scale * (hh + vv - hv - vh) / total;
    };

    const double e_ab = corr(settings.a, settings.b);
    const double e_abp = corr(settings.a, settings.b_prime);
    const double e_apb = corr(settings.a_prime, settings.b);
    const double e_apbp = corr(settings.a_prime, settings.b_prime);

    double sum = 0.0;
    switch (minus) {
        case ChshMinusTerm::AB: sum = -e_ab + e_abp + e_apb + e_apbp; break;
        case ChshMinusTerm::ABPrime: sum = e_ab - e_abp + e_apb + e_apbp; break;
        case ChshMinusTerm::APrimeB: sum = e_ab + e_abp - e_apb + e_apbp; break;
        case ChshMinusTerm::APrimeBPrime: sum = e_ab + e_abp + e_apb - e_apbp; break;
    }
    return std::abs(sum);
}

double classical_bound(const JointAmplitude& state, double dt) {
    std::optional<JointAmplitude> storage;
    const JointAmplitude& ts = as_time(state, storage);
    if (std::abs(ts.axis1().step - ts.axis2().step) > 1e-12 * ts.axis1().step)
        throw std::invalid_argument("classical_bound: axes must share a time step");

    const int d = int(std::lround(dt / ts.axis1().step));
    const int n1 = ts.n1(), n2 = ts.n2();
    if (std::abs(d) >= std::min(n1, n2))
        throw std::invalid_argument("classical_bound: dt is off the grid");

    // Bare coincidence rate at relative delay dt: photon 2 sampled at t - dt.
    auto bare = [&](int lag) {
        double r = 0.0;
        for (int i = 0; i < n1; ++i) {
            const int j = i - lag;
            if (j >= 0 && j < n2) r += ts.intensity(i, j);
        }
        return r;
    };
    const double r0 = bare(0);
    const double rd = bare(d);
    if (!(r0 + rd > 0.0)) throw std::domain_error("classical_bound: no coincident support");
    return rd / (r0 + rd);
}

ClassicalBoundCheck classical_bound_violated(const JointAmplitude& state,
                                             const FransonSetup& setup, double dt) {
    ClassicalBoundCheck out;
    out.bound = classical_bound(state, dt);

    std::vector<std::pair<double, double>> phases;
    constexpr int kPoints = 33;
    for (int i = 0; i < kPoints; ++i)
        phases.emplace_back(kTwoPi * double(i) / (kPoints - 1), 0.0);
    out.visibility = visibility(fringe_scan(state, setup, phases));
    out.violated = out.visibility > out.bound;
    out.margin = out.visibility - out.bound;
    return out;
}

}  // namespace nli
