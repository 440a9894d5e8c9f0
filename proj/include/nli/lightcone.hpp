#pragma once

#include <complex>

#include "nli/scan.hpp"

namespace nli {

using cplx = std::complex<double>;

// CODATA fine-structure constant.
inline constexpr double kFineStructure = 7.2973525693e-3;

// Massless Feynman propagator in c = 1 units:
//   D_F(r, t) = -1 / (4 i pi^2) * 1 / (r^2 - t^2 - i eps),  eps > 0.
cplx feynman_propagator(double r, double t, double eps);

// |D_F| sampled on an (x, t) rectangle; columns x, t, re, im, abs. The
// light-cone locus |x| = |t| is recorded in the metadata.
ScanResult propagator_map(double x_min, double x_max, int nx, double t_min, double t_max,
                          int nt, double eps);

// Two distant two-level atoms: separation r, transition frequency omega_a,
// dipole matrix element d (lengths and times in c = hbar = 1 units),
// interaction duration. The closed form for the transfer amplitude is valid
// in the far field r >> duration.
struct TwoAtomConfig {
    double separation = 0.0;
    double omega_a = 0.0;
    double dipole = 0.0;
    double duration = 0.0;

    bool far_field() const { return separation >= 100.0 * duration; }
};

// b = -(alpha / 4 pi^2) (d^2 / r^2) (i w dt + 1 - e^{i w dt}).
cplx amplitude_b_closed(const TwoAtomConfig& config);

struct QuadratureOptions {
    double rel_tol = 1e-9;
    int max_depth = 24;
    long node_budget = 2'000'000;
    double eps = 1e-8;  // i-eps regulator, scaled by r^2 internally
};

struct QuadratureResult {
    cplx value;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Second-order perturbative transfer amplitude by nested adaptive quadrature
// of e^{i w (t' - t'')} D_F(r, t' - t'') over the triangle 0 <= t'' <= t' <= dt,
// assembled so the far-field limit reproduces amplitude_b_closed. The error
// estimate combines the quadrature tolerance with an eps-halving check.
// Throws if r <= duration (the pole would cross the integration domain).
QuadratureResult amplitude_b_numeric(const TwoAtomConfig& config,
                                     const QuadratureOptions& options = {});

// Final two-atom amplitudes of the interaction: a |E1 G2> + b |G1 E2> +
// gamma |anything with a photon emitted>, with |a|^2 + |b|^2 + |gamma|^2 = 1.
struct TwoAtomState {
    cplx a;
    cplx b;
    cplx gamma;
};

// a = sqrt(1 - |b|^2 - p_emission) with phase 0, gamma = sqrt(p_emission).
TwoAtomState assemble_two_atom_state(cplx b, double emission_probability);

struct PostSelectedState {
    cplx a;
    cplx b;
    double success_probability = 0.0;
};

// Condition on detecting no photon: renormalizes (a, b); success probability
// |a|^2 + |b|^2.
PostSelectedState post_select(const TwoAtomState& state);

struct BalanceResult {
    PostSelectedState state;
    double cos_theta = 0.0;       // pulse mixing amplitude left on |G2>
    double stage_success = 0.0;   // probability atom 2 is not found in |F2>
    double combined_success = 0.0;
};

// Transfers |G2> amplitude to an auxiliary level until |a'| = |b'|, then
// conditions on atom 2 not being in that level. Requires |a| >= |b| > 0.
BalanceResult balance_to_maximal(const PostSelectedState& state);

// Pure-state concurrence 2 |a| |b| of the post-selected two-qubit state.
double concurrence(const PostSelectedState& state);

// Classical mutual information of the energy-basis measurement record:
// binary entropy of |a|^2, in bits.
double mutual_information_bits(const PostSelectedState& state);

struct RwaPoint {
    double value = 0.0;
    bool outside_cone = false;
};

// |D_F(r, t)|^2 as the first-order (rotating-wave) detection-probability
// proxy for a point emission at the origin; nonzero outside the cone, which
// is the causality artifact of that approximation.
RwaPoint rwa_detection_probability(double r, double t, double eps);

}  // namespace nli
