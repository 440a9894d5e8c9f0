#include "nli/lightcone.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace nli {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void validate_two_atom(const TwoAtomConfig& c) {
    if (!(c.separation > 0.0)) throw std::invalid_argument("two-atom: separation must be > 0");
    if (!(c.omega_a > 0.0))
        throw std::invalid_argument("two-atom: transition frequency must be > 0");
    if (!(c.duration >= 0.0)) throw std::invalid_argument("two-atom: duration must be >= 0");
}

// Adaptive Simpson with Richardson correction on a complex integrand; the
// accumulated |delta|/15 terms form the error estimate.
template <typename F>
struct AdaptiveSimpson {
    const F& f;
    double abs_tol;
    int max_depth;
    long& evals;
    long budget;
    double err = 0.0;

    cplx eval(double x) {
        if (++evals > budget)
            throw std::runtime_error("amplitude_b_numeric: quadrature node budget exhausted");
        return f(x);
    }

    cplx run(double a, double b) {
        const cplx fa = eval(a), fm = eval(0.5 * (a + b)), fb = eval(b);
        const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return rec(a, b, fa, fm, fb, whole, abs_tol, max_depth);
    }

    cplx rec(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
             int depth) {
        const double m = 0.5 * (a + b);
        const cplx flm = eval(0.5 * (a + m)), frm = eval(0.5 * (m + b));
        const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const cplx delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace

cplx feynman_propagator(double r, double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("feynman_propagator: eps must be > 0");
    return cplx(0.0, 1.0 / kFourPiSq) / cplx(r * r - t * t, -eps);
}

ScanResult propagator_map(double x_min, double x_max, int nx, double t_min, double t_max,
                          int nt, double eps) {
    if (nx < 2 || nt < 2) throw std::invalid_argument("propagator_map: need >= 2 samples");
    if (!(x_max > x_min) || !(t_max > t_min))
        throw std::invalid_argument("propagator_map: empty range");

    ScanResult out;
    out.name = "propagator_map";
    out.columns = {"x", "t", "re", "im", "abs"};
    out.metadata["eps"] = fmt(eps);
    out.metadata["light_cone"] = "|x| = |t|";
    for (int i = 0; i < nx; ++i) {
        const double x = x_min + (x_max - x_min) * double(i) / (nx - 1);
        for (int j = 0; j < nt; ++j) {
            const double t = t_min + (t_max - t_min) * double(j) / (nt - 1);
            const cplx d = feynman_propagator(std::abs(x), t, eps);
            out.add_row({x, t, d.real(), d.imag(), std::abs(d)});
        }
    }
    return out;
}

cplx amplitude_b_closed(const TwoAtomConfig& config) {
    validate_two_atom(config);
    const double wdt = config.omega_a * config.duration;
    const cplx bracket = cplx(0.0, wdt) + 1.0 - std::polar(1.0, wdt);
    const double scale = kFineStructure / kFourPiSq * config.dipole * config.dipole /
                         (config.separation * config.separation);
    return -scale * bracket;
}

QuadratureResult amplitude_b_numeric(const TwoAtomConfig& config,
                                     const QuadratureOptions& options) {
    validate_two_atom(config);
    if (config.duration == 0.0) return {cplx{}, 0.0, 0};
    if (config.separation <= config.duration)
        throw std::domain_error(
            "amplitude_b_numeric: r <= duration puts the propagator pole on the integration "
            "domain; only the outside-the-cone regime is supported");

    const double r = config.separation;
    const double dt = config.duration;
    const double w = config.omega_a;
    // Overall factor from the second-order amplitude with the commutator
    // matrix element -i c hbar D_F and the (e d E_A / hbar c)^2 vertex pair,
    // in Gaussian natural units where e^2 is the fine-structure constant:
    //   b = i alpha d^2 w^2 int dt' int dt'' e^{i w (t'-t'')} D_F(r, t'-t'').
    // The far-field limit of this assembly is amplitude_b_closed.
    const cplx prefactor = cplx(0.0, 1.0) * kFineStructure * config.dipole * config.dipole *
                           w * w;

    auto integral_at_eps = [&](double eps_abs, double& err_out,
                               long& evals) -> cplx {
        auto g = [&](double u) { return std::polar(1.0, w * u) * feynman_propagator(r, u, eps_abs); };

        // Scale estimate for absolute tolerances.
        double gmax = 0.0;
        for (int k = 0; k <= 8; ++k) gmax = std::max(gmax, std::abs(g(dt * k / 8.0)));
        const double scale = std::max(gmax * dt * dt / 2.0, 1e-300);
        const double tol_total = options.rel_tol * scale;

        double inner_err_density = 0.0;
        auto outer_integrand = [&](double tp) -> cplx {
            if (tp <= 0.0) return {};
            auto inner_integrand = [&](double ts) { return g(tp - ts); };
            AdaptiveSimpson<decltype(inner_integrand)> inner{
                inner_integrand, 0.25 * tol_total * (tp / dt), options.max_depth, evals,
                options.node_budget};
            const cplx val = inner.run(0.0, tp);
            inner_err_density = std::max(inner_err_density, inner.err / tp);
            return val;
        };

        AdaptiveSimpson<decltype(outer_integrand)> outer{
            outer_integrand, 0.5 * tol_total, options.max_depth, evals, options.node_budget};
        const cplx val = outer.run(0.0, dt);
        err_out = outer.err + dt * inner_err_density;
        return val;
    };

    QuadratureResult result;
    double err_full = 0.0, err_half = 0.0;
    const double eps_abs = options.eps * r * r;
    const cplx j_full = integral_at_eps(eps_abs, err_full, result.evaluations);
    const cplx j_half = integral_at_eps(0.5 * eps_abs, err_half, result.evaluations);

    result.value = prefactor * j_half;
    result.error_estimate =
        std::abs(prefactor) * (err_half + std::abs(j_full - j_half));
    return result;
}

TwoAtomState assemble_two_atom_state(cplx b, double emission_probability) {
    if (!(emission_probability >= 0.0))
        throw std::invalid_argument("assemble_two_atom_state: emission probability < 0");
    const double rest = 1.0 - std::norm(b) - emission_probability;
    if (!(rest > 0.0))
        throw std::invalid_argument(
            "assemble_two_atom_state: |b|^2 + emission probability must be < 1");
    return {std::sqrt(rest), b, std::sqrt(emission_probability)};
}

PostSelectedState post_select(const TwoAtomState& state) {
    const double kept = std::norm(state.a) + std::norm(state.b);
    if (!(kept > 0.0))
        throw std::domain_error("post_select: no support on the photon-free subspace");
    const double scale = 1.0 / std::sqrt(kept);
    return {state.a * scale, state.b * scale, kept};
}

BalanceResult balance_to_maximal(const PostSelectedState& state) {
    const double mag_a = std::abs(state.a), mag_b = std::abs(state.b);
    if (!(mag_b > 0.0))
        throw std::domain_error("balance_to_maximal: b' is zero, nothing to balance toward");
    if (mag_a < mag_b)
        throw std::invalid_argument(
            "balance_to_maximal: requires |a'| >= |b'| (the pulse drains the larger branch)");

    BalanceResult out;
    out.cos_theta = mag_b / mag_a;
    out.stage_success = 2.0 * mag_b * mag_b;
    out.combined_success = state.success_probability * out.stage_success;

    const double scale = 1.0 / (std::sqrt(2.0) * mag_b);
    out.state.a = state.a * out.cos_theta * scale;
    out.state.b = state.b * scale;
    out.state.success_probability = out.combined_success;
    return out;
}

double concurrence(const PostSelectedState& state) {
    return 2.0 * std::abs(state.a) * std::abs(state.b);
}

double mutual_information_bits(const PostSelectedState& state) {
    const double p = std::norm(state.a);
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

RwaPoint rwa_detection_probability(double r, double t, double eps) {
    if (!(t > 0.0)) throw std::invalid_argument("rwa_detection_probability: t must be > 0");
    const cplx d = feynman_propagator(r, t, eps);
    return {std::norm(d), r > t};
}

}  // namespace nli
