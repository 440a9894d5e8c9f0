#include "nli/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nli {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_axis(const Axis& ax, const char* what) {
    if (!is_pow2(ax.n) || ax.n < 16)
        throw std::invalid_argument(std::string(what) + ": n must be a power of two >= 16");
    if (!(ax.step > 0.0) || !std::isfinite(ax.step))
        throw std::invalid_argument(std::string(what) + ": step must be positive and finite");
    if (!std::isfinite(ax.center))
        throw std::invalid_argument(std::string(what) + ": center must be finite");
}

Axis conjugate_axis(const Axis& ax) {
    return Axis{ax.n, 0.0, 2.0 * std::numbers::pi / (ax.n * ax.step)};
}

JointAmplitude::JointAmplitude(Domain domain, Axis axis1, Axis axis2,
                               std::vector<cplx> values, Normalize norm)
    : domain_(domain), axis1_(axis1), axis2_(axis2), values_(std::move(values)) {
    validate_axis(axis1_, "axis1");
    validate_axis(axis2_, "axis2");
    if (values_.size() != std::size_t(axis1_.n) * axis2_.n)
        throw std::invalid_argument("JointAmplitude: value count does not match grid");

    double sum = 0.0;
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("JointAmplitude: non-finite amplitude");
        sum += std::norm(v);
    }
    if (!(sum > 0.0))
        throw std::invalid_argument("JointAmplitude: zero state");

    if (norm == Normalize::Yes) {
        const double scale = 1.0 / std::sqrt(sum);
        for (cplx& v : values_) v *= scale;
        norm_ = 1.0;
    } else {
        norm_ = std::sqrt(sum);
    }
}

std::vector<double> JointAmplitude::marginal1() const {
    std::vector<double> m(axis1_.n, 0.0);
    for (int i = 0; i < axis1_.n; ++i)
        for (int j = 0; j < axis2_.n; ++j) m[i] += intensity(i, j);
    return m;
}

std::vector<double> JointAmplitude::marginal2() const {
    std::vector<double> m(axis2_.n, 0.0);
    for (int i = 0; i < axis1_.n; ++i)
        for (int j = 0; j < axis2_.n; ++j) m[j] += intensity(i, j);
    return m;
}

double JointAmplitude::boundary_frame_fraction() const {
    double frame = 0.0, total = 0.0;
    for (int i = 0; i < axis1_.n; ++i) {
        for (int j = 0; j < axis2_.n; ++j) {
            const double w = intensity(i, j);
            total += w;
            if (i == 0 || j == 0 || i == axis1_.n - 1 || j == axis2_.n - 1) frame += w;
        }
    }
    return frame / total;
}

namespace {

// Centered unitary 2-D DFT. The (-1)^(i+j) pre/post modulation moves the axis
// centers to the FFT origin; for n divisible by 4 the residual constant phase
// is exactly +1. sign = FFTW_FORWARD gives the exp(-i w t) kernel.
std::vector<cplx> centered_dft(const std::vector<cplx>& in, int n1, int n2, int sign) {
    std::vector<cplx> buf(in.size());
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const double s = ((i + j) & 1) ? -1.0 : 1.0;
            buf[std::size_t(i) * n2 + j] = s * in[std::size_t(i) * n2 + j];
        }

    fftw_plan plan = fftw_plan_dft_2d(n1, n2, reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    const double scale = 1.0 / std::sqrt(double(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const double s = ((i + j) & 1) ? -scale : scale;
            buf[std::size_t(i) * n2 + j] *= s;
        }
    return buf;
}

}  // namespace

JointAmplitude to_time_domain(const JointAmplitude& state) {
    if (state.domain() != Domain::Frequency)
        throw std::invalid_argument("to_time_domain: state is not in the frequency domain");
    std::vector<cplx> out =
        centered_dft(state.values(), state.n1(), state.n2(), FFTW_FORWARD);
    JointAmplitude result(Domain::Time, conjugate_axis(state.axis1()),
                          conjugate_axis(state.axis2()), std::move(out),
                          JointAmplitude::Normalize::No);
    return result;
}

JointAmplitude to_frequency_domain(const JointAmplitude& state) {
    if (state.domain() != Domain::Time)
        throw std::invalid_argument("to_frequency_domain: state is not in the time domain");
    std::vector<cplx> out =
        centered_dft(state.values(), state.n1(), state.n2(), FFTW_BACKWARD);
    JointAmplitude result(Domain::Frequency, conjugate_axis(state.axis1()),
                          conjugate_axis(state.axis2()), std::move(out),
                          JointAmplitude::Normalize::No);
    return result;
}

Moments weighted_moments(const std::vector<double>& weights, double first, double step) {
    double total = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        mean += weights[i] * (first + double(i) * step);
    }
    if (!(total > 0.0)) throw std::domain_error("weighted_moments: empty distribution");
    mean /= total;

    double var = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double x = first + double(i) * step - mean;
        var += weights[i] * x * x;
        peak = std::max(peak, weights[i]);
    }
    var /= total;

    // All mass on one cell means the grid cannot resolve this distribution.
    if (peak / total > 1.0 - 1e-12)
        throw std::domain_error("weighted_moments: distribution collapsed onto a single cell");
    return {mean, std::sqrt(var)};
}

namespace {

LagMarginal lag_marginal(const JointAmplitude& state, int sign2) {
    if (std::abs(state.axis1().step - state.axis2().step) >
        1e-12 * state.axis1().step)
        throw std::invalid_argument("lag marginal requires equal axis steps");
    const int n1 = state.n1(), n2 = state.n2();
    LagMarginal out;
    out.weights.assign(std::size_t(n1 + n2 - 1), 0.0);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const int k = (sign2 > 0) ? i + j : i - j + (n2 - 1);
            out.weights[k] += state.intensity(i, j);
        }
    const double d = state.axis1().step;
    const double v1_first = state.axis1().value(0);
    out.step = d;
    if (sign2 > 0) {
        out.first = v1_first + state.axis2().value(0);
    } else {
        out.first = v1_first - state.axis2().value(n2 - 1);
    }
    return out;
}

}  // namespace

LagMarginal difference_marginal(const JointAmplitude& state) { return lag_marginal(state, -1); }
LagMarginal sum_marginal(const JointAmplitude& state) { return lag_marginal(state, +1); }

}  // namespace nli
