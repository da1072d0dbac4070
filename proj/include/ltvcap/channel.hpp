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

// Linear time-varying channels as Weyl operators.
//
//   (L f)(t) = int int sh(w, x) exp(2 pi i w (t + x/2)) f(t + x) dw dx
//
// i.e. L = int int sh(w,x) pi(w,x) with pi(w,x) = exp(-pi i x w) T_{-x} M_w.
// The shifts compose as pi(z1) pi(z2) = exp(pi i (x1 w2 - w1 x2)) pi(z1 + z2),
// which is the twisted convolution law, and the Weyl symbol is
//   sigma(t, nu) = int int sh(w, x) exp(2 pi i (w t + x nu)) dw dx,
// so that <L f, g> = <sigma, W(g, f)>.
//
// Numerically the spreading function is replaced by a measure on the lattice
// (m h_w, j h_x), |m| <= M, |j| <= J. The lattice is locked to the signal grid:
// h_x = r dt and h_w = 2 / (P dt), so every phase exp(2 pi i w_m (t + x_j/2))
// is a P-th root of unity and one length-P FFT per delay column tabulates
//   B_j(q dt/2) = sum_m mu[m, j] exp(2 pi i m q / P).
// The discrete operator is an exact Weyl operator of a measure; composition,
// adjoints and symbols are therefore exact up to rounding.

#pragma once

#include "ltvcap/gabor.hpp"
#include "ltvcap/tfcore.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace ltvcap {

enum class ChannelKind { separable_exponential, lti_limit_family, custom_grid, point_mass };

/// Unimodular factor exp(2 pi i (tau0 w + nu0 x + chirp w x)) with the three
/// coefficients drawn uniformly from (-1, 1). Seed 0 gives u = 1.
struct PhaseFactor {
    double tau0 = 0.0;
    double nu0 = 0.0;
    double chirp = 0.0;

    static PhaseFactor from_seed(std::uint64_t seed) {
        if (seed == 0) return {};
        std::mt19937_64 rng(seed);
        // Raw engine output is specified bit-for-bit; map the top 53 bits to [0,1).
        const auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
        PhaseFactor p;
        p.tau0 = uniform();
        p.nu0 = uniform();
        p.chirp = uniform();
        return p;
    }

    cd operator()(double w, double x) const { return std::polar(1.0, kTwoPi * (tau0 * w + nu0 * x + chirp * w * x)); }
    bool trivial() const { return tau0 == 0.0 && nu0 == 0.0 && chirp == 0.0; }
};

struct SpreadingFunction {
    ChannelKind kind = ChannelKind::separable_exponential;
    double amplitude = 1.0; // C of the decay envelope
    double alpha = 1.0;     // delay decay rate (1/seconds)
    double beta = 1.0;      // Doppler decay rate (1/hertz)
    std::uint64_t phase_seed = 0;
    std::optional<int> n_index;
    PhaseFactor phase;
    TFGridFunction density;           // custom_grid only: sh on a lattice
    double omega0 = 0.0, x0 = 0.0;    // point_mass only
    cd weight{1.0, 0.0};              // point_mass only

    /// Density sh(w, x). Point masses have no density and evaluate to 0.
    cd operator()(double w, double x) const {
        switch (kind) {
        case ChannelKind::separable_exponential:
            return amplitude * std::exp(-beta * std::abs(w) - alpha * std::abs(x)) * phase(w, x);
        case ChannelKind::lti_limit_family:
            return amplitude * std::exp(-beta * std::abs(w) - alpha * std::abs(x));
        case ChannelKind::custom_grid: {
            const double mi = (w - density.w_axis.start) / density.w_axis.step;
            const double xi = (x - density.x_axis.start) / density.x_axis.step;
            const long m = std::lround(mi), j = std::lround(xi);
            if (std::abs(mi - m) > 1e-9 || std::abs(xi - j) > 1e-9) return {0.0, 0.0};
            if (m < 0 || j < 0 || m >= static_cast<long>(density.w_axis.count) || j >= static_cast<long>(density.x_axis.count)) return {0.0, 0.0};
            return density(static_cast<std::size_t>(m), static_cast<std::size_t>(j));
        }
        case ChannelKind::point_mass:
            return {0.0, 0.0};
        }
        return {0.0, 0.0};
    }

    double envelope(double w, double x) const { return amplitude * std::exp(-beta * std::abs(w) - alpha * std::abs(x)); }
};

/// Parametric spreading function. For lti_limit_family the Doppler factor is
/// normalized, sh = C (beta/2) exp(-beta |w|) exp(-alpha |x|), so its integral
/// over w is C exp(-alpha |x|) for every beta.
inline SpreadingFunction make_spreading(ChannelKind kind, double C, double alpha, double beta, std::uint64_t phase_seed,
                                        std::optional<int> n_index = std::nullopt) {
    if (kind != ChannelKind::separable_exponential && kind != ChannelKind::lti_limit_family) {
        fail_validation("make_spreading: use make_custom_spreading or make_point_mass for this kind");
    }
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) fail_validation("make_spreading: alpha must be >= 1");
    if (!(beta >= 1.0) || !std::isfinite(beta)) fail_validation("make_spreading: beta must be >= 1");
    if (!(C >= 0.0) || !std::isfinite(C)) fail_validation("make_spreading: amplitude must be finite and non-negative");
    SpreadingFunction sf;
    sf.kind = kind;
    sf.alpha = alpha;
    sf.beta = beta;
    sf.phase_seed = phase_seed;
    sf.n_index = n_index;
    if (kind == ChannelKind::separable_exponential) {
        sf.amplitude = C;
        sf.phase = PhaseFactor::from_seed(phase_seed);
    } else {
        sf.amplitude = C * beta / 2.0;
    }
    return sf;
}

/// Spreading density given on a lattice (w_axis, x_axis). Axes must be
/// symmetric about zero.
inline SpreadingFunction make_custom_spreading(TFGridFunction density) {
    const auto symmetric = [](const Axis& ax) {
        return ax.count % 2 == 1 && std::abs(ax.start + static_cast<double>(ax.count / 2) * ax.step) <= 1e-9 * std::max(1.0, ax.step);
    };
    if (!symmetric(density.w_axis) || !symmetric(density.x_axis)) fail_validation("custom spreading: axes must be symmetric about zero");
    if (!density.values.allFinite()) fail_validation("custom spreading: non-finite density");
    SpreadingFunction sf;
    sf.kind = ChannelKind::custom_grid;
    sf.amplitude = density.values.size() > 0 ? density.values.cwiseAbs().maxCoeff() : 0.0;
    sf.alpha = sf.beta = 1.0;
    sf.density = std::move(density);
    return sf;
}

/// Single time-frequency shift weight * pi(omega0, x0). x0 must be a multiple
/// of the grid step and omega0 of the form 2 / (P dt) with P >= 3 on the grid
/// where the operator is applied.
inline SpreadingFunction make_point_mass(double omega0, double x0, cd weight = {1.0, 0.0}) {
    SpreadingFunction sf;
    sf.kind = ChannelKind::point_mass;
    sf.omega0 = omega0;
    sf.x0 = x0;
    sf.weight = weight;
    sf.amplitude = std::abs(weight);
    return sf;
}

// ---------------------------------------------------------------------------
// Discretization

struct QuadratureOptions {
    double eps = 1e-10;          // neglected spreading mass outside the box
    double step_factor = 8.0;    // h_x <= 1/(step_factor alpha), h_w <= 1/(step_factor beta)
    double max_nodes = 1e7;      // quadrature budget
};

namespace detail {

// Exact mass of exp(-c|u|) over the cell [(m - 1/2) h, (m + 1/2) h].
inline double exp_cell_mass(double c, double h, long m) {
    if (m == 0) return 2.0 * (1.0 - std::exp(-c * h / 2.0)) / c;
    const double lo = (static_cast<double>(std::abs(m)) - 0.5) * h;
    return std::exp(-c * lo) * (1.0 - std::exp(-c * h)) / c;
}

inline long grid_origin_index(const TimeGrid& grid) {
    const double g0 = grid.t0 / grid.dt;
    if (!near_integer(g0, 1e-8)) fail_validation("Weyl operator: t = 0 must be a node of the signal grid");
    return static_cast<long>(std::llround(g0));
}

} // namespace detail

/// Lattice measure (weights, not densities) approximating sf on a lattice
/// locked to `grid`. Rows index Doppler w_m, columns delay x_j.
inline TFGridFunction discretize(const SpreadingFunction& sf, const TimeGrid& grid, const QuadratureOptions& opt = {}) {
    grid.validate();
    const double dt = grid.dt;
    if (sf.kind == ChannelKind::point_mass) {
        const double jr = sf.x0 / dt;
        if (!detail::near_integer(jr, 1e-8)) fail_validation("point mass: delay must be a multiple of the grid step");
        const long j = std::lround(jr);
        Axis xa = Axis::symmetric(dt, static_cast<std::size_t>(std::abs(j)));
        Axis wa = sf.omega0 == 0.0 ? Axis{0.0, 2.0 / dt, 1} : Axis::symmetric(std::abs(sf.omega0), 1);
        TFGridFunction mu(xa, wa);
        const std::size_t wi = sf.omega0 == 0.0 ? 0 : (sf.omega0 > 0.0 ? 2 : 0);
        mu(wi, static_cast<std::size_t>(j + std::abs(j))) = sf.weight;
        return mu;
    }
    if (sf.kind == ChannelKind::custom_grid) {
        TFGridFunction mu = sf.density;
        mu.values *= sf.density.w_axis.step * sf.density.x_axis.step;
        return mu;
    }
    if (!(opt.eps > 0.0 && opt.eps < 1.0)) fail_validation("quadrature: eps must lie in (0, 1)");
    const double c_eff = std::max(sf.amplitude, opt.eps);
    const double X = std::max(0.0, std::log(c_eff / opt.eps)) / sf.alpha;
    const double Om = std::max(0.0, std::log(c_eff / opt.eps)) / sf.beta;

    const long r = std::max(1L, static_cast<long>(std::floor(1.0 / (opt.step_factor * sf.alpha * dt) + 1e-9)));
    const double hx = static_cast<double>(r) * dt;
    const long J = static_cast<long>(std::ceil(X / hx));
    long P = static_cast<long>(std::ceil(2.0 * opt.step_factor * sf.beta / dt - 1e-9));
    double hw = 2.0 / (static_cast<double>(P) * dt);
    long M = static_cast<long>(std::ceil(Om / hw));
    if (2 * M + 1 > P) fail_validation("quadrature: Doppler spread exceeds the grid bandwidth (decrease dt)");
    const double nodes = static_cast<double>(2 * M + 1) * static_cast<double>(2 * J + 1);
    if (nodes > opt.max_nodes) {
        fail_validation("quadrature budget exceeded (" + std::to_string(nodes) + " nodes); use a coarser tolerance");
    }

    TFGridFunction mu(Axis::symmetric(hx, static_cast<std::size_t>(J)), Axis::symmetric(hw, static_cast<std::size_t>(M)));
    std::vector<double> mw(static_cast<std::size_t>(2 * M + 1)), mx(static_cast<std::size_t>(2 * J + 1));
    for (long m = -M; m <= M; ++m) mw[static_cast<std::size_t>(m + M)] = detail::exp_cell_mass(sf.beta, hw, m);
    for (long j = -J; j <= J; ++j) mx[static_cast<std::size_t>(j + J)] = detail::exp_cell_mass(sf.alpha, hx, j);
    const bool phased = sf.kind == ChannelKind::separable_exponential && !sf.phase.trivial();
    for (long m = -M; m <= M; ++m) {
        for (long j = -J; j <= J; ++j) {
            const auto mi = static_cast<std::size_t>(m + M), ji = static_cast<std::size_t>(j + J);
            cd v = sf.amplitude * mw[mi] * mx[ji];
            if (phased) v *= sf.phase(static_cast<double>(m) * hw, static_cast<double>(j) * hx);
            mu(mi, ji) = v;
        }
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Weyl operator of a lattice measure

enum class Twist { standard, flipped };

class WeylOperator {
public:
    WeylOperator(const TimeGrid& grid, TFGridFunction weights) : grid_(grid), mu_(std::move(weights)) {
        grid_.validate();
        g0_ = detail::grid_origin_index(grid_);
        const Axis& xa = mu_.x_axis;
        const Axis& wa = mu_.w_axis;
        if (xa.count % 2 == 0 || wa.count % 2 == 0) fail_validation("Weyl operator: lattice axes must be symmetric (odd counts)");
        J_ = static_cast<long>(xa.count / 2);
        M_ = static_cast<long>(wa.count / 2);
        if (J_ > 0) {
            const double rr = xa.step / grid_.dt;
            if (!detail::near_integer(rr, 1e-8) || std::lround(rr) < 1) fail_validation("Weyl operator: delay step must be a multiple of dt");
            r_ = std::lround(rr);
        }
        if (M_ > 0) {
            const double pp = 2.0 / (wa.step * grid_.dt);
            if (!detail::near_integer(pp, 1e-8)) fail_validation("Weyl operator: Doppler step must equal 2/(P dt) for an integer P");
            P_ = std::lround(pp);
            if (P_ < 2 * M_ + 1) fail_validation("Weyl operator: Doppler extent exceeds the grid bandwidth");
        }
        build_tables();
    }

    const TimeGrid& grid() const { return grid_; }
    const TFGridFunction& weights() const { return mu_; }
    long delay_half_count() const { return J_; }
    long doppler_half_count() const { return M_; }
    long delay_step_samples() const { return r_; }
    double half_step() const { return 0.5 * grid_.dt; }

    /// B_j(q dt/2) = sum_m mu[m, j] exp(2 pi i w_m q dt/2).
    cd column(long j, long q) const {
        long idx = q % P_;
        if (idx < 0) idx += P_;
        return tables_[static_cast<std::size_t>(j + J_)][static_cast<std::size_t>(idx)];
    }

    SampledSignal apply(const SampledSignal& f) const {
        if (!(f.grid == grid_)) fail_validation("apply_weyl: signal grid differs from the operator grid");
        const long n = static_cast<long>(grid_.n);
        SampledSignal out(grid_);
        for (long j = -J_; j <= J_; ++j) {
            const long shift = j * r_;
            const long i_lo = std::max(0L, -shift), i_hi = std::min(n, n - shift);
            const auto& tab = tables_[static_cast<std::size_t>(j + J_)];
            if (is_zero_[static_cast<std::size_t>(j + J_)]) continue;
            long q = (2 * (g0_ + i_lo) + shift) % P_;
            if (q < 0) q += P_;
            for (long i = i_lo; i < i_hi; ++i) {
                out.values[i] += tab[static_cast<std::size_t>(q)] * f.values[i + shift];
                q += 2;
                while (q >= P_) q -= P_;
            }
        }
        return out;
    }

    /// sigma(t, nu) on a product grid. Time nodes must be multiples of dt/2.
    TFGridFunction weyl_symbol(const Axis& t_axis, const Axis& nu_axis) const {
        TFGridFunction out(t_axis, nu_axis);
        for (std::size_t ti = 0; ti < t_axis.count; ++ti) {
            const long q = half_step_index(t_axis.at(ti));
            std::vector<cd> c(static_cast<std::size_t>(2 * J_ + 1));
            for (long j = -J_; j <= J_; ++j) c[static_cast<std::size_t>(j + J_)] = column(j, q);
            fill_row(out, ti, c, J_, nu_axis);
        }
        return out;
    }

    /// Symbol of L* L on a product grid (time nodes multiples of dt/2):
    ///   S(t, nu) = sum_{j1, j2} B_{j1}(t - x_{j2}/2) conj(B_{j2}(t - x_{j1}/2)) exp(2 pi i (x_{j1} - x_{j2}) nu).
    /// Twist::flipped reverses the sign of one commutation term (test hook);
    /// the result is then no longer real.
    TFGridFunction symbol_S_complex(const Axis& t_axis, const Axis& nu_axis, Twist twist = Twist::standard) const {
        const long sgn = twist == Twist::standard ? 1 : -1;
        TFGridFunction out(t_axis, nu_axis);
        std::vector<cd> F(static_cast<std::size_t>(4 * J_ + 1));
        for (std::size_t ti = 0; ti < t_axis.count; ++ti) {
            const long q = half_step_index(t_axis.at(ti));
            std::fill(F.begin(), F.end(), cd{0.0, 0.0});
            for (long j2 = -J_; j2 <= J_; ++j2) {
                if (is_zero_[static_cast<std::size_t>(j2 + J_)]) continue;
                for (long j1 = -J_; j1 <= J_; ++j1) {
                    if (is_zero_[static_cast<std::size_t>(j1 + J_)]) continue;
                    const cd v = column(j1, q - sgn * j2 * r_) * std::conj(column(j2, q - j1 * r_));
                    F[static_cast<std::size_t>(j1 - j2 + 2 * J_)] += v;
                }
            }
            fill_row(out, ti, F, 2 * J_, nu_axis);
        }
        return out;
    }

    double delay(long j) const { return static_cast<double>(j * r_) * grid_.dt; }

private:
    // out(v, ti) = sum_d c[d + half] exp(2 pi i x_d nu_v), by phase recurrence along nu.
    void fill_row(TFGridFunction& out, std::size_t ti, const std::vector<cd>& c, long half, const Axis& nu_axis) const {
        std::vector<cd> ph, step;
        for (long d = -half; d <= half; ++d) {
            const cd v = c[static_cast<std::size_t>(d + half)];
            if (v == cd{0.0, 0.0}) continue;
            ph.push_back(v * std::polar(1.0, kTwoPi * delay(d) * nu_axis.start));
            step.push_back(std::polar(1.0, kTwoPi * delay(d) * nu_axis.step));
        }
        for (std::size_t vi = 0; vi < nu_axis.count; ++vi) {
            cd acc{0.0, 0.0};
            for (std::size_t u = 0; u < ph.size(); ++u) {
                acc += ph[u];
                ph[u] *= step[u];
            }
            out(vi, ti) = acc;
        }
    }

    long half_step_index(double t) const {
        const double q = t / half_step();
        if (!detail::near_integer(q, 1e-7)) fail_validation("symbol grid: time nodes must be multiples of dt/2");
        return std::lround(q);
    }

    void build_tables() {
        tables_.assign(static_cast<std::size_t>(2 * J_ + 1), std::vector<cd>(static_cast<std::size_t>(P_), cd{0.0, 0.0}));
        is_zero_.assign(static_cast<std::size_t>(2 * J_ + 1), true);
        std::vector<cd> buf(static_cast<std::size_t>(P_));
        for (long j = -J_; j <= J_; ++j) {
            std::fill(buf.begin(), buf.end(), cd{0.0, 0.0});
            bool any = false;
            for (long m = -M_; m <= M_; ++m) {
                const cd w = mu_(static_cast<std::size_t>(m + M_), static_cast<std::size_t>(j + J_));
                long idx = m % P_;
                if (idx < 0) idx += P_;
                buf[static_cast<std::size_t>(idx)] += w;
                any = any || w != cd{0.0, 0.0};
            }
            if (!any) continue;
            is_zero_[static_cast<std::size_t>(j + J_)] = false;
            auto& tab = tables_[static_cast<std::size_t>(j + J_)];
            if (P_ == 1) {
                tab[0] = buf[0];
                continue;
            }
            tab = detail::ifft(buf);
            for (auto& v : tab) v *= static_cast<double>(P_);
        }
    }

    TimeGrid grid_;
    TFGridFunction mu_;
    long g0_ = 0;
    long J_ = 0, M_ = 0;
    long r_ = 1, P_ = 1;
    std::vector<std::vector<cd>> tables_;
    std::vector<bool> is_zero_;
};

inline WeylOperator make_weyl_operator(const SpreadingFunction& sf, const TimeGrid& grid, const QuadratureOptions& opt = {}) {
    return WeylOperator(grid, discretize(sf, grid, opt));
}

/// L_sigma s with the spreading function discretized on the signal's grid.
inline SampledSignal apply_weyl(const SpreadingFunction& sf, const SampledSignal& s, const QuadratureOptions& opt = {}) {
    return make_weyl_operator(sf, s.grid, opt).apply(s);
}

/// Real symbol of L* L. Fails if the imaginary residue exceeds 1e-8 relative.
inline TFGridFunction symbol_S(const WeylOperator& op, const Axis& t_axis, const Axis& nu_axis, Twist twist = Twist::standard) {
    TFGridFunction S = op.symbol_S_complex(t_axis, nu_axis, twist);
    const double scale = std::max(1.0, S.values.cwiseAbs().maxCoeff());
    const double imag = S.values.imag().cwiseAbs().maxCoeff();
    if (imag > 1e-8 * scale) fail_numerical("symbol_S: imaginary residue " + std::to_string(imag) + " exceeds tolerance");
    S.values = S.values.real().cast<cd>();
    return S;
}

/// Axes with half-lattice spacing covering the transmit lattice
/// k in [0, K], l in [-L, L] with one spare cell on each side.
inline std::pair<Axis, Axis> symbol_axes(double a, double b, double rho, int K, int L) {
    const double ht = rho * a / 2.0, hn = rho * b / 2.0;
    Axis t{-2.0 * ht, ht, static_cast<std::size_t>(2 * K + 5)};
    Axis nu = Axis::symmetric(hn, static_cast<std::size_t>(2 * L + 2));
    return {t, nu};
}

// ---------------------------------------------------------------------------
// Twisted convolution of densities

struct TwistedConvolutionOptions {
    Twist twist = Twist::standard;
    bool nyquist_audit = true; // reject grids too coarse for the twist phase
};

/// (s1 # s2)(w, x) = int int s1(w', x') s2(w - w', x - x') exp(-pi i (x w' - w x')) dw' dx'
/// as a Riemann sum over two grids with equal steps. Exact for lattice measures.
inline TFGridFunction twisted_convolution(const TFGridFunction& s1, const TFGridFunction& s2, const TwistedConvolutionOptions& opt = {}) {
    const double hw = s1.w_axis.step, hx = s1.x_axis.step;
    const auto same = [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(std::abs(u), std::abs(v)); };
    if (!same(hw, s2.w_axis.step) || !same(hx, s2.x_axis.step)) fail_validation("twisted_convolution: operands must share grid steps");
    Axis xa{s1.x_axis.start + s2.x_axis.start, hx, s1.x_axis.count + s2.x_axis.count - 1};
    Axis wa{s1.w_axis.start + s2.w_axis.start, hw, s1.w_axis.count + s2.w_axis.count - 1};
    if (opt.nyquist_audit) {
        const double xmax = std::max(std::abs(xa.start), std::abs(xa.end()));
        const double wmax = std::max(std::abs(wa.start), std::abs(wa.end()));
        const double phase_step = kPi * std::max(hw * xmax, hx * wmax);
        if (phase_step > kPi / 2.0) {
            fail_validation("twisted_convolution: grid too coarse for the twist phase (step " + std::to_string(phase_step) + " rad)");
        }
    }
    const double sign = opt.twist == Twist::standard ? 1.0 : -1.0;
    TFGridFunction out(xa, wa);
    for (std::size_t a1 = 0; a1 < s1.w_axis.count; ++a1) {
        const double w1 = s1.w_axis.at(a1);
        for (std::size_t b1 = 0; b1 < s1.x_axis.count; ++b1) {
            const cd v1 = s1(a1, b1);
            if (v1 == cd{0.0, 0.0}) continue;
            const double x1 = s1.x_axis.at(b1);
            for (std::size_t a2 = 0; a2 < s2.w_axis.count; ++a2) {
                const double w2 = s2.w_axis.at(a2);
                for (std::size_t b2 = 0; b2 < s2.x_axis.count; ++b2) {
                    const cd v2 = s2(a2, b2);
                    if (v2 == cd{0.0, 0.0}) continue;
                    const double x2 = s2.x_axis.at(b2);
                    // x w1 - w x1 with (w, x) = (w1 + w2, x1 + x2) reduces to x2 w1 - w2 x1.
                    const double ph = -kPi * (x2 * w1 - sign * w2 * x1);
                    out(a1 + a2, b1 + b2) += v1 * v2 * std::polar(1.0, ph);
                }
            }
        }
    }
    out.values *= hw * hx;
    return out;
}

/// Density of the adjoint channel: conj(sh(-w, -x)).
inline TFGridFunction adjoint_spreading(const TFGridFunction& s) {
    TFGridFunction out(Axis{-s.x_axis.end(), s.x_axis.step, s.x_axis.count}, Axis{-s.w_axis.end(), s.w_axis.step, s.w_axis.count});
    const auto nw = static_cast<Eigen::Index>(s.w_axis.count), nx = static_cast<Eigen::Index>(s.x_axis.count);
    for (Eigen::Index i = 0; i < nw; ++i)
        for (Eigen::Index j = 0; j < nx; ++j) out.values(nw - 1 - i, nx - 1 - j) = std::conj(s.values(i, j));
    return out;
}

// ---------------------------------------------------------------------------
// Sampling the symbol of L* L on the transmit lattice

namespace detail {

inline double bilinear(const TFGridFunction& S, double t, double nu, int k, int l) {
    const double ft = (t - S.x_axis.start) / S.x_axis.step;
    const double fn = (nu - S.w_axis.start) / S.w_axis.step;
    const double tol = 1e-9;
    if (ft < -tol || fn < -tol || ft > static_cast<double>(S.x_axis.count - 1) + tol || fn > static_cast<double>(S.w_axis.count - 1) + tol) {
        fail_validation("sample_S_plus: lattice point (k=" + std::to_string(k) + ", l=" + std::to_string(l) + ") at (t=" + std::to_string(t) +
                        ", nu=" + std::to_string(nu) + ") lies outside the symbol grid");
    }
    const auto clampi = [](double f, std::size_t cnt) {
        long i = static_cast<long>(std::floor(f));
        return std::clamp(i, 0L, static_cast<long>(cnt) - 2 < 0 ? 0L : static_cast<long>(cnt) - 2);
    };
    const long it = clampi(ft, S.x_axis.count), in = clampi(fn, S.w_axis.count);
    const double ut = S.x_axis.count > 1 ? std::clamp(ft - static_cast<double>(it), 0.0, 1.0) : 0.0;
    const double un = S.w_axis.count > 1 ? std::clamp(fn - static_cast<double>(in), 0.0, 1.0) : 0.0;
    const auto at = [&](long wi, long xi) {
        wi = std::min(wi, static_cast<long>(S.w_axis.count) - 1);
        xi = std::min(xi, static_cast<long>(S.x_axis.count) - 1);
        return S(static_cast<std::size_t>(wi), static_cast<std::size_t>(xi)).real();
    };
    return (1 - ut) * (1 - un) * at(in, it) + ut * (1 - un) * at(in, it + 1) + (1 - ut) * un * at(in + 1, it) + ut * un * at(in + 1, it + 1);
}

} // namespace detail

/// Positive part of S at (rho (beta/alpha) k, rho (alpha/beta) l), k in [0, K],
/// l in [-L, L]; rows index k, columns l + L.
inline Eigen::MatrixXd sample_S_plus(const TFGridFunction& S, double alpha, double beta, double rho, int K, int L) {
    Eigen::MatrixXd out(K + 1, 2 * L + 1);
    for (int k = 0; k <= K; ++k) {
        for (int l = -L; l <= L; ++l) {
            const double v = detail::bilinear(S, rho * (beta / alpha) * k, rho * (alpha / beta) * l, k, l);
            out(k, l + L) = std::max(0.0, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Channel matrix

struct ChannelMatrix {
    CMatrix entries;                          // rows: receive atoms, columns: transmit atoms
    std::vector<std::pair<int, int>> tx_index; // (k, l) per column
    std::vector<std::pair<int, int>> rx_index; // (k, l) per row
    double eta2 = 1.0;

    CMatrix gram() const { return entries.adjoint() * entries; }
};

/// Analysis against a fixed system, with the translated windows cached and
/// trimmed to their numerical support.
class AnalysisPlan {
public:
    explicit AnalysisPlan(const GaborSystem& sys, double threshold = 1e-17) : sys_(sys) {
        const Lattice& lat = sys.lattice;
        const TimeGrid& grid = sys.window.grid;
        const double wmax = sys.window.values.cwiseAbs().maxCoeff();
        for (int k = lat.k_min; k <= lat.k_max; ++k) {
            const SampledSignal h = translate(sys.window, lat.a * k);
            long lo = -1, hi = -1;
            for (long i = 0; i < static_cast<long>(grid.n); ++i) {
                if (std::abs(h.values[i]) > threshold * wmax) {
                    if (lo < 0) lo = i;
                    hi = i;
                }
            }
            Segment seg;
            if (lo >= 0) {
                seg.start = lo;
                seg.conj_window = h.values.segment(lo, hi - lo + 1).conjugate() * (sys.scale() * grid.dt);
                seg.base.resize(hi - lo + 1);
                seg.step.resize(hi - lo + 1);
                for (long i = lo; i <= hi; ++i) {
                    const double t = grid.at(static_cast<std::size_t>(i));
                    seg.base[i - lo] = std::polar(1.0, -kTwoPi * lat.b * lat.l_min * t);
                    seg.step[i - lo] = std::polar(1.0, -kTwoPi * lat.b * t);
                }
            }
            segments_.push_back(std::move(seg));
        }
    }

    /// Coefficients flattened as (k - k_min) * l_count + (l - l_min).
    CVector apply(const SampledSignal& f) const {
        const Lattice& lat = sys_.lattice;
        const auto nl = static_cast<Eigen::Index>(lat.l_count());
        CVector out = CVector::Zero(static_cast<Eigen::Index>(lat.size()));
        CVector w;
        for (std::size_t kk = 0; kk < segments_.size(); ++kk) {
            const Segment& seg = segments_[kk];
            if (seg.conj_window.size() == 0) continue;
            w = f.values.segment(seg.start, seg.conj_window.size()).cwiseProduct(seg.conj_window).cwiseProduct(seg.base);
            for (Eigen::Index l = 0; l < nl; ++l) {
                out[static_cast<Eigen::Index>(kk) * nl + l] = w.sum();
                if (l + 1 < nl) w = w.cwiseProduct(seg.step);
            }
        }
        return out;
    }

private:
    struct Segment {
        long start = 0;
        CVector conj_window;
        CVector base;
        CVector step;
    };
    GaborSystem sys_;
    std::vector<Segment> segments_;
};

inline std::vector<std::pair<int, int>> lattice_index(const Lattice& lat) {
    std::vector<std::pair<int, int>> idx;
    idx.reserve(lat.size());
    for (int k = lat.k_min; k <= lat.k_max; ++k)
        for (int l = lat.l_min; l <= lat.l_max; ++l) idx.emplace_back(k, l);
    return idx;
}

/// A[(k,l),(k',l')] = <L psi^tx_{k',l'}, psi^rx_{k,l}>. Columns are independent.
inline ChannelMatrix channel_matrix(const WeylOperator& op, const GaborSystem& tx, const GaborSystem& rx) {
    if (tx.kind != SystemKind::transmit_orthonormal || rx.kind != SystemKind::receive_tight) {
        fail_validation("channel_matrix: expected a transmit system and a receive system");
    }
    if (!(tx.window.grid == rx.window.grid) || !(tx.window.grid == op.grid())) fail_validation("channel_matrix: grids differ");
    if (tx.rho != rx.rho || tx.s != rx.s) fail_validation("channel_matrix: systems built from different (rho, s)");
    const AnalysisPlan plan(rx);
    ChannelMatrix A;
    A.tx_index = lattice_index(tx.lattice);
    A.rx_index = lattice_index(rx.lattice);
    A.entries.resize(static_cast<Eigen::Index>(A.rx_index.size()), static_cast<Eigen::Index>(A.tx_index.size()));
    for (std::size_t c = 0; c < A.tx_index.size(); ++c) {
        const auto [k, l] = A.tx_index[c];
        A.entries.col(static_cast<Eigen::Index>(c)) = plan.apply(op.apply(atom(tx, k, l)));
    }
    return A;
}

inline ChannelMatrix channel_matrix(const SpreadingFunction& sf, const GaborSystem& tx, const GaborSystem& rx, const QuadratureOptions& opt = {}) {
    return channel_matrix(make_weyl_operator(sf, tx.window.grid, opt), tx, rx);
}

} // namespace ltvcap
