// SPDX-License-Identifier: Apache-2.0
//
// ltvcap - regional information capacity of linear time-varying channels
// Copyright (C) 2026 The ltvcap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Discretized time-frequency primitives.
//
// Signals live on a uniform grid t_i = t0 + i*dt. Integrals over the real line
// become Riemann sums weighted by dt; for the smooth, exponentially localized
// functions used here those sums are spectrally accurate.
//
// Conventions:
//   (T_x f)(t) = f(t - x)
//   (M_w f)(t) = exp(2 pi i w t) f(t)
//   fhat(w)    = int f(t) exp(-2 pi i w t) dt
//   A(f,g)(x,w) = int f(t + x/2) conj(g(t - x/2)) exp(-2 pi i t w) dt
//   W(f,g)(x,w) = int f(x + t/2) conj(g(x - t/2)) exp(-2 pi i t w) dt

#pragma once

#include "ltvcap/error.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace ltvcap {

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform sample grid. The companion frequency grid has spacing 1/(n dt) and
// spans [-1/(2dt), 1/(2dt)).
struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 2;

    static TimeGrid centered(std::size_t n, double dt) {
        TimeGrid g{-static_cast<double>(n / 2) * dt, dt, n};
        g.validate();
        return g;
    }

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt)) fail_validation("TimeGrid: dt must be positive and finite");
        if (n < 2) fail_validation("TimeGrid: n must be at least 2");
        if (n % 2 != 0) fail_validation("TimeGrid: n must be even");
    }

    double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double span() const { return static_cast<double>(n) * dt; }
    double end() const { return at(n - 1); }
    double midpoint() const { return t0 + static_cast<double>(n / 2) * dt; }

    TimeGrid frequency_grid() const {
        const double dw = 1.0 / (static_cast<double>(n) * dt);
        return TimeGrid{-0.5 / dt, dw, n};
    }

    bool operator==(const TimeGrid& o) const { return t0 == o.t0 && dt == o.dt && n == o.n; }
};

struct SampledSignal {
    TimeGrid grid;
    CVector values;

    SampledSignal() = default;
    explicit SampledSignal(const TimeGrid& g) : grid(g), values(CVector::Zero(static_cast<Eigen::Index>(g.n))) {}
    SampledSignal(const TimeGrid& g, CVector v) : grid(g), values(std::move(v)) {
        if (values.size() != static_cast<Eigen::Index>(grid.n)) fail_validation("SampledSignal: value count does not match grid");
    }

    std::size_t size() const { return grid.n; }
    cd operator[](std::size_t i) const { return values[static_cast<Eigen::Index>(i)]; }
};

/// Equally spaced axis of a time-frequency grid function. Unlike TimeGrid the
/// count may be odd (symmetric lattices in delay/Doppler).
struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 1;

    static Axis from_grid(const TimeGrid& g) { return Axis{g.t0, g.dt, g.n}; }
    static Axis symmetric(double step, std::size_t half) {
        return Axis{-static_cast<double>(half) * step, step, 2 * half + 1};
    }
    double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
    double end() const { return at(count - 1); }
};

/// Function sampled on a product grid; rows index the frequency/Doppler axis,
/// columns the time/delay axis.
struct TFGridFunction {
    Axis x_axis;
    Axis w_axis;
    CMatrix values;

    TFGridFunction() = default;
    TFGridFunction(const Axis& x, const Axis& w)
        : x_axis(x), w_axis(w),
          values(CMatrix::Zero(static_cast<Eigen::Index>(w.count), static_cast<Eigen::Index>(x.count))) {}

    cd operator()(std::size_t wi, std::size_t xi) const {
        return values(static_cast<Eigen::Index>(wi), static_cast<Eigen::Index>(xi));
    }
    cd& operator()(std::size_t wi, std::size_t xi) {
        return values(static_cast<Eigen::Index>(wi), static_cast<Eigen::Index>(xi));
    }
};

// ---------------------------------------------------------------------------
// FFT helpers (unnormalized forward, 1/N-normalized inverse)

namespace detail {

inline Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

inline std::vector<cd> fft(const std::vector<cd>& in) {
    std::vector<cd> out;
    fft_engine().fwd(out, in);
    return out;
}

inline std::vector<cd> ifft(const std::vector<cd>& in) {
    std::vector<cd> out;
    fft_engine().inv(out, in);
    return out;
}

inline std::vector<cd> to_std(const CVector& v) { return std::vector<cd>(v.data(), v.data() + v.size()); }

inline CVector to_eigen(const std::vector<cd>& v) {
    return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Signed DFT bin index in [-n/2, n/2).
inline long signed_bin(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

inline bool near_integer(double v, double tol = 1e-9) { return std::abs(v - std::round(v)) <= tol * std::max(1.0, std::abs(v)); }

// Band-limited 2x upsampling: out[2i] = in[i], odd samples are the
// trigonometric interpolant. The Nyquist bin is split evenly.
inline std::vector<cd> upsample2(const CVector& values) {
    const std::size_t n = static_cast<std::size_t>(values.size());
    auto spectrum = fft(to_std(values));
    std::vector<cd> big(2 * n, cd{0.0, 0.0});
    for (std::size_t k = 0; k < n / 2; ++k) big[k] = spectrum[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) big[k + n] = spectrum[k];
    big[n / 2] = 0.5 * spectrum[n / 2];
    big[n + n / 2] = 0.5 * spectrum[n / 2];
    auto out = ifft(big);
    for (auto& v : out) v *= 2.0;
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Basic inner products

inline cd inner(const SampledSignal& f, const SampledSignal& g) {
    if (!(f.grid == g.grid)) fail_validation("inner: signals must share a grid");
    return g.values.dot(f.values) * f.grid.dt; // Eigen dot conjugates the left operand
}

inline double norm2(const SampledSignal& f) { return f.values.squaredNorm() * f.grid.dt; }
inline double norm(const SampledSignal& f) { return std::sqrt(norm2(f)); }

inline SampledSignal operator+(const SampledSignal& a, const SampledSignal& b) {
    return SampledSignal(a.grid, a.values + b.values);
}
inline SampledSignal operator-(const SampledSignal& a, const SampledSignal& b) {
    return SampledSignal(a.grid, a.values - b.values);
}
inline SampledSignal operator*(cd c, const SampledSignal& a) { return SampledSignal(a.grid, c * a.values); }

// ---------------------------------------------------------------------------
// Translation and modulation

/// T_x f. Grid-multiple shifts are exact circular shifts; other shifts apply a
/// frequency-domain phase ramp (periodic band-limited interpolation), so the
/// grid must be padded for wrapped mass to be negligible.
inline SampledSignal translate(const SampledSignal& f, double x) {
    const std::size_t n = f.grid.n;
    const double shift = x / f.grid.dt;
    if (x == 0.0) return f;
    SampledSignal out(f.grid);
    if (detail::near_integer(shift)) {
        long s = static_cast<long>(std::llround(shift)) % static_cast<long>(n);
        if (s < 0) s += static_cast<long>(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.values[static_cast<Eigen::Index>((i + static_cast<std::size_t>(s)) % n)] = f.values[static_cast<Eigen::Index>(i)];
        }
        return out;
    }
    auto spectrum = detail::fft(detail::to_std(f.values));
    for (std::size_t k = 0; k < n; ++k) {
        const double bin = static_cast<double>(detail::signed_bin(k, n));
        spectrum[k] *= std::polar(1.0, -kTwoPi * bin * shift / static_cast<double>(n));
    }
    out.values = detail::to_eigen(detail::ifft(spectrum));
    return out;
}

/// M_w f: pointwise multiplication by exp(2 pi i w t).
inline SampledSignal modulate(const SampledSignal& f, double w) {
    if (w == 0.0) return f;
    SampledSignal out(f.grid);
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        out.values[static_cast<Eigen::Index>(i)] = f.values[static_cast<Eigen::Index>(i)] * std::polar(1.0, kTwoPi * w * f.grid.at(i));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fourier transform with continuous normalization

/// fhat on the companion frequency grid, fhat(w_m) = dt * sum_j f_j exp(-2 pi i w_m t_j).
/// Unitary with respect to the dt- and dw-weighted norms.
inline SampledSignal fourier(const SampledSignal& f) {
    f.grid.validate();
    const std::size_t n = f.grid.n;
    const TimeGrid fg = f.grid.frequency_grid();
    std::vector<cd> buf(n);
    // w0 * dt = -1/2, so exp(-2 pi i w0 t_j) contributes (-1)^j.
    for (std::size_t j = 0; j < n; ++j) buf[j] = f.values[static_cast<Eigen::Index>(j)] * ((j % 2 == 0) ? 1.0 : -1.0);
    auto spectrum = detail::fft(buf);
    SampledSignal out(fg);
    const double t0 = f.grid.t0;
    for (std::size_t m = 0; m < n; ++m) {
        const double phase = -kTwoPi * fg.at(m) * t0;
        out.values[static_cast<Eigen::Index>(m)] = f.grid.dt * spectrum[m] * std::polar(1.0, phase);
    }
    return out;
}

/// Inverse of `fourier`: maps samples on the companion frequency grid back to
/// the time grid `time_grid`.
inline SampledSignal inverse_fourier(const SampledSignal& fhat, const TimeGrid& time_grid) {
    const std::size_t n = time_grid.n;
    if (fhat.grid.n != n) fail_validation("inverse_fourier: size mismatch");
    const TimeGrid fg = time_grid.frequency_grid();
    std::vector<cd> buf(n);
    for (std::size_t m = 0; m < n; ++m) {
        buf[m] = fhat.values[static_cast<Eigen::Index>(m)] * std::polar(1.0, kTwoPi * fg.at(m) * time_grid.t0);
    }
    auto sig = detail::ifft(buf);
    SampledSignal out(time_grid);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[static_cast<Eigen::Index>(j)] = sig[j] * ((j % 2 == 0) ? 1.0 : -1.0) / time_grid.dt;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian windows

/// Unit-norm Gaussian with time variance proportional to s:
/// g_s(t) = (2/s)^{1/4} exp(-pi (t - c)^2 / s).
inline double gaussian_value(double s, double t) {
    return std::pow(2.0 / s, 0.25) * std::exp(-kPi * t * t / s);
}

/// Samples g_s centered at `center` (defaults to the grid midpoint) and
/// renormalizes to unit discrete norm. Rejects grids that truncate more than
/// 1e-12 of the energy in time or in frequency.
inline SampledSignal gaussian_window(const TimeGrid& grid, double s, double center) {
    grid.validate();
    if (!(s > 0.0)) fail_validation("gaussian_window: scale s must be positive");
    const double radius = std::min(center - grid.t0, grid.end() - center);
    // |g_s|^2 is a Gaussian with variance s/(4 pi); tail mass is erfc(R sqrt(2 pi / s)).
    const double tail_t = radius <= 0.0 ? 1.0 : std::erfc(radius * std::sqrt(2.0 * kPi / s));
    const double nyquist = 0.5 / grid.dt;
    const double tail_w = std::erfc(nyquist * std::sqrt(2.0 * kPi * s));
    if (tail_t > 1e-12) fail_validation("gaussian_window: grid truncates the window in time (tail mass " + std::to_string(tail_t) + ")");
    if (tail_w > 1e-12) fail_validation("gaussian_window: grid undersamples the window (spectral tail mass " + std::to_string(tail_w) + ")");
    SampledSignal g(grid);
    for (std::size_t i = 0; i < grid.n; ++i) g.values[static_cast<Eigen::Index>(i)] = gaussian_value(s, grid.at(i) - center);
    g.values /= norm(g);
    return g;
}

inline SampledSignal gaussian_window(const TimeGrid& grid, double s) { return gaussian_window(grid, s, grid.midpoint()); }

// ---------------------------------------------------------------------------
// Ambiguity and Wigner distributions

namespace detail {

inline cd upsampled_at(const std::vector<cd>& up, long idx) {
    if (idx < 0 || idx >= static_cast<long>(up.size())) return cd{0.0, 0.0};
    return up[static_cast<std::size_t>(idx)];
}

} // namespace detail

/// A(f,g) on the product of the symmetric delay grid x_k = k dt,
/// k in [-n/2, n/2), and the companion frequency grid.
inline TFGridFunction cross_ambiguity(const SampledSignal& f, const SampledSignal& g) {
    if (!(f.grid == g.grid)) fail_validation("cross_ambiguity: signals must share a grid");
    const std::size_t n = f.grid.n;
    const auto fu = detail::upsample2(f.values);
    const auto gu = detail::upsample2(g.values);
    const TimeGrid fg = f.grid.frequency_grid();
    TFGridFunction out(Axis{-static_cast<double>(n / 2) * f.grid.dt, f.grid.dt, n}, Axis::from_grid(fg));
    std::vector<cd> buf(n);
    for (std::size_t kk = 0; kk < n; ++kk) {
        const long k = static_cast<long>(kk) - static_cast<long>(n / 2);
        for (std::size_t i = 0; i < n; ++i) {
            const long c = 2 * static_cast<long>(i);
            const cd p = detail::upsampled_at(fu, c + k) * std::conj(detail::upsampled_at(gu, c - k));
            buf[i] = p * ((i % 2 == 0) ? 1.0 : -1.0);
        }
        const auto spectrum = detail::fft(buf);
        for (std::size_t m = 0; m < n; ++m) {
            out(m, kk) = f.grid.dt * spectrum[m] * std::polar(1.0, -kTwoPi * fg.at(m) * f.grid.t0);
        }
    }
    return out;
}

/// W(f,g) on the product of the signal grid and the companion frequency grid.
inline TFGridFunction cross_wigner(const SampledSignal& f, const SampledSignal& g) {
    if (!(f.grid == g.grid)) fail_validation("cross_wigner: signals must share a grid");
    const std::size_t n = f.grid.n;
    const auto fu = detail::upsample2(f.values);
    const auto gu = detail::upsample2(g.values);
    TFGridFunction out(Axis::from_grid(f.grid), Axis::from_grid(f.grid.frequency_grid()));
    std::vector<cd> buf(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long c = 2 * static_cast<long>(i);
        for (std::size_t kk = 0; kk < n; ++kk) {
            const long k = detail::signed_bin(kk, n);
            // tau_k * w0 = -k/2 contributes (-1)^k.
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            buf[kk] = sign * detail::upsampled_at(fu, c + k) * std::conj(detail::upsampled_at(gu, c - k));
        }
        const auto spectrum = detail::fft(buf);
        for (std::size_t m = 0; m < n; ++m) out(m, i) = f.grid.dt * spectrum[m];
    }
    return out;
}

/// A(f,g)(x, w) at one point from pre-upsampled signals (see detail::upsample2);
/// the delay is x = delay_samples * dt.
inline cd ambiguity_at(const std::vector<cd>& f_up, const std::vector<cd>& g_up, const TimeGrid& grid, long delay_samples, double w) {
    cd acc{0.0, 0.0};
    const std::size_t n = grid.n;
    for (std::size_t i = 0; i < n; ++i) {
        const long c = 2 * static_cast<long>(i);
        const cd p = detail::upsampled_at(f_up, c + delay_samples) * std::conj(detail::upsampled_at(g_up, c - delay_samples));
        if (p == cd{0.0, 0.0}) continue;
        acc += p * std::polar(1.0, -kTwoPi * grid.at(i) * w);
    }
    return acc * grid.dt;
}

/// Riemann-sum pairing <F, G> = sum F conj(G) dx dw over a shared product grid.
inline cd grid_inner(const TFGridFunction& a, const TFGridFunction& b) {
    return (a.values.array() * b.values.array().conjugate()).sum() * a.x_axis.step * a.w_axis.step;
}

// ---------------------------------------------------------------------------
// Exponential envelope fit

struct DecayFitOptions {
    double floor = 1e-12;   // lower bound on |f| / max|f| for the fit region
    double ceiling = 1e-2;  // upper bound on |f| / max|f| for the fit region
};

struct DecayFit {
    double amplitude = 0.0;  // envelope constant C: |f(t)| <= C exp(-rate |t - center|)
    double rate = 0.0;       // fitted decay rate c (per unit of the grid variable)
    double intercept = 0.0;  // exp of the least-squares intercept
    double center = 0.0;
    std::size_t samples = 0; // points used in the fit
};

/// Least-squares fit of log|f| against |t - t_center| over the tail region
/// floor < |f|/max|f| < ceiling. The returned amplitude is raised to the
/// smallest C for which the envelope dominates every sample above the floor.
inline DecayFit decay_envelope_fit(const SampledSignal& f, DecayFitOptions opt = {}) {
    const std::size_t n = f.grid.n;
    Eigen::Index imax = 0;
    const double fmax = f.values.cwiseAbs().maxCoeff(&imax);
    if (!(fmax > 0.0)) fail_validation("decay_envelope_fit: zero signal");
    DecayFit fit;
    fit.center = f.grid.at(static_cast<std::size_t>(imax));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(f.values[static_cast<Eigen::Index>(i)]);
        if (a > opt.floor * fmax && a < opt.ceiling * fmax) {
            const double x = std::abs(f.grid.at(i) - fit.center);
            const double y = std::log(a);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++cnt;
        }
    }
    if (cnt < 8) fail_validation("decay_envelope_fit: insufficient tail (" + std::to_string(cnt) + " samples)");
    const double N = static_cast<double>(cnt);
    const double denom = N * sxx - sx * sx;
    if (!(denom > 0.0)) fail_validation("decay_envelope_fit: insufficient tail (degenerate abscissae)");
    const double slope = (N * sxy - sx * sy) / denom;
    fit.rate = -slope;
    fit.intercept = std::exp((sy - slope * sx) / N);
    fit.samples = cnt;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(f.values[static_cast<Eigen::Index>(i)]);
        if (a > opt.floor * fmax) c = std::max(c, a * std::exp(fit.rate * std::abs(f.grid.at(i) - fit.center)));
    }
    fit.amplitude = c;
    return fit;
}

/// Largest |t - center| where |f| exceeds `threshold * max|f|`.
inline double support_radius(const SampledSignal& f, double center, double threshold) {
    const double fmax = f.values.cwiseAbs().maxCoeff();
    double r = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        if (std::abs(f.values[static_cast<Eigen::Index>(i)]) > threshold * fmax) r = std::max(r, std::abs(f.grid.at(i) - center));
    }
    return r;
}

} // namespace ltvcap
