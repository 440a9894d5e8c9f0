#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace nli {

using cplx = std::complex<double>;

// Uniformly spaced, centered sampling axis. Index i maps to
// value = center + (i - n/2) * step, so the center sits on a grid point.
// n must be a power of two, n >= 16.
struct Axis {
    int n = 0;
    double center = 0.0;
    double step = 0.0;

    double value(int i) const { return center + (i - n / 2) * step; }
    double span() const { return n * step; }
};

bool is_pow2(int n);
void validate_axis(const Axis& ax, const char* what);

// Conjugate (Fourier-dual) axis: step' = 2*pi / (n * step), center 0.
Axis conjugate_axis(const Axis& ax);

enum class Domain { Frequency, Time };

// Two-photon joint amplitude on a 2-D grid, row-major: value(i, j) with i on
// axis 1 and j on axis 2. Stored values are cell amplitudes: sum |a|^2 = 1 for
// a normalized state, independent of axis step (unitary-DFT convention).
//
// Time-domain states are envelopes: the carrier phase exp(-i*center*t) of each
// axis is dropped in to_time_domain, so interferometer arm phases have to be
// applied explicitly. Round-tripping restores the frequency samples exactly.
class JointAmplitude {
public:
    enum class Normalize { Yes, No };

    JointAmplitude(Domain domain, Axis axis1, Axis axis2,
                   std::vector<cplx> values, Normalize norm = Normalize::Yes);

    Domain domain() const { return domain_; }
    const Axis& axis1() const { return axis1_; }
    const Axis& axis2() const { return axis2_; }

    int n1() const { return axis1_.n; }
    int n2() const { return axis2_.n; }

    cplx at(int i, int j) const { return values_[std::size_t(i) * axis2_.n + j]; }
    double intensity(int i, int j) const { return std::norm(at(i, j)); }

    const std::vector<cplx>& values() const { return values_; }

    // sqrt(sum |a|^2), cached at construction / transform time
    double l2_norm() const { return norm_; }

    // Intensity marginals over the other axis (not renormalized).
    std::vector<double> marginal1() const;
    std::vector<double> marginal2() const;

    // Fraction of |a|^2 in the outermost one-cell frame of the grid. Used by
    // source constructors as the grid-containment gate.
    double boundary_frame_fraction() const;

private:
    Domain domain_;
    Axis axis1_, axis2_;
    std::vector<cplx> values_;
    double norm_;

    friend JointAmplitude to_time_domain(const JointAmplitude&);
    friend JointAmplitude to_frequency_domain(const JointAmplitude&);
};

// 2-D centered unitary transforms between the frequency and time domains.
// Frequency -> time uses the exp(-i w t) kernel; the pair is an exact inverse.
JointAmplitude to_time_domain(const JointAmplitude& state);
JointAmplitude to_frequency_domain(const JointAmplitude& state);

// Mean and RMS width of a discrete intensity distribution sampled at
// value(i) = first + i * step. Throws std::domain_error if the distribution
// has collapsed onto a single cell (degenerate grid).
struct Moments {
    double mean = 0.0;
    double rms = 0.0;
};
Moments weighted_moments(const std::vector<double>& weights, double first, double step);

// Intensity marginal of t1 - t2 (lag d = i - j, 2n-1 bins) and of t1 + t2
// (s = i + j, 2n-1 bins). Requires equal axis steps.
struct LagMarginal {
    std::vector<double> weights;
    double first = 0.0;
    double step = 0.0;
};
LagMarginal difference_marginal(const JointAmplitude& state);
LagMarginal sum_marginal(const JointAmplitude& state);

}  // namespace nli
