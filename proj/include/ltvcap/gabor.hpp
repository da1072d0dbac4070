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

// Weyl-Heisenberg systems built from the Gaussian g_s.
//
// With ab = 1 and rho > 1 the Gaussian frame (g_s, a/rho, b/rho) has a frame
// operator S. The window psi = rho * S^{-1/2} g_s has unit norm, generates a
// tight frame with bound rho^2 on the dense lattice (a/rho, b/rho) and an
// orthonormal system on the sparse lattice (rho a, rho b).
//
// S is never formed as an n x n matrix. Its Walnut representation
//     (S f)(t) = (1/b') sum_q G_q(t) f(t - q/b'),   b' = b/rho
// only couples samples whose distance is a multiple of 1/b' = rho a. When that
// distance is an integer number Q of grid steps, S splits into Q independent
// dense blocks (one per residue class mod Q), each diagonalized exactly.

#pragma once

#include "ltvcap/tfcore.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace ltvcap {

struct Lattice {
    double a = 1.0;  // time step (seconds)
    double b = 1.0;  // frequency step (hertz)
    int k_min = 0;
    int k_max = 0;
    int l_min = 0;
    int l_max = 0;

    std::size_t k_count() const { return static_cast<std::size_t>(k_max - k_min + 1); }
    std::size_t l_count() const { return static_cast<std::size_t>(l_max - l_min + 1); }
    std::size_t size() const { return k_count() * l_count(); }
};

enum class SystemKind { transmit_orthonormal, receive_tight };

/// Atoms are scale * M_{b l} T_{a k} window. The receive system carries
/// scale 1/rho so that its frame operator is the identity.
struct GaborSystem {
    SampledSignal window;
    Lattice lattice;
    double rho = 1.5;
    double s = 1.0;
    SystemKind kind = SystemKind::transmit_orthonormal;

    double scale() const { return kind == SystemKind::receive_tight ? 1.0 / rho : 1.0; }
};

namespace detail {

inline void check_lattice_params(double a, double b, double rho) {
    if (!(a > 0.0) || !(b > 0.0)) fail_validation("lattice steps a and b must be positive");
    if (!(rho > 1.0)) fail_validation("Balian–Low regime: no localized orthonormal system (rho must exceed 1)");
    if (std::abs(a * b - 1.0) > 1e-9) fail_validation("lattice steps must satisfy a*b = 1");
}

// Number of grid steps per transmit time step rho*a; throws if not integral.
inline long transmit_step_samples(const TimeGrid& grid, double a, double rho) {
    const double q = rho * a / grid.dt;
    if (!near_integer(q, 1e-8) || std::llround(q) < 1) {
        fail_validation("grid step must divide the transmit time step rho*a (got ratio " + std::to_string(q) + ")");
    }
    return static_cast<long>(std::llround(q));
}

} // namespace detail

/// Grid on which (rho a)/dt is an integer, dt <= sqrt(s)/20 and t = 0 is the
/// node n/2. Span n*dt grows with sqrt(s), so windows for different s sampled
/// on their default grids are exact dilations of each other.
inline TimeGrid window_grid(double s, double a, double rho, std::size_t n = 1024) {
    if (!(s > 0.0)) fail_validation("window_grid: s must be positive");
    const double q = std::ceil(20.0 * rho * a / std::sqrt(s) - 1e-9);
    return TimeGrid::centered(n, rho * a / q);
}

/// Frame operator of (g, a', b') with 1/b' = Q dt, held as Q dense blocks.
class WalnutFrameOperator {
public:
    WalnutFrameOperator(const TimeGrid& grid, const std::function<double(double)>& g, double g_radius, double a_rx, long q)
        : grid_(grid), q_(q), blocks_(static_cast<std::size_t>(q)) {
        const double inv_b = static_cast<double>(q) * grid.dt;
        const long k_lo = static_cast<long>(std::floor((grid.t0 - g_radius) / a_rx));
        const long k_hi = static_cast<long>(std::ceil((grid.end() + g_radius) / a_rx));
        for (long p = 0; p < q; ++p) {
            const auto len = chain_length(p);
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(len, len);
            Eigen::VectorXd v(len);
            for (long k = k_lo; k <= k_hi; ++k) {
                const double c = static_cast<double>(k) * a_rx;
                bool any = false;
                for (Eigen::Index i = 0; i < len; ++i) {
                    const double t = grid.at(static_cast<std::size_t>(p + i * q)) - c;
                    v[i] = std::abs(t) <= g_radius ? g(t) : 0.0;
                    any = any || v[i] != 0.0;
                }
                if (any) m.noalias() += v * v.transpose();
            }
            m *= inv_b;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
            if (es.info() != Eigen::Success) fail_numerical("frame operator eigendecomposition failed");
            blocks_[static_cast<std::size_t>(p)] = Block{es.eigenvalues(), es.eigenvectors()};
            lower_ = std::min(lower_, es.eigenvalues().minCoeff());
            upper_ = std::max(upper_, es.eigenvalues().maxCoeff());
        }
    }

    double lower_bound() const { return lower_; }
    double upper_bound() const { return upper_; }
    double condition_number() const { return lower_ > 0.0 ? upper_ / lower_ : std::numeric_limits<double>::infinity(); }

    /// S^p f for real exponent p (p = 1, -1/2, ...).
    SampledSignal apply_power(const SampledSignal& f, double p) const {
        if (!(f.grid == grid_)) fail_validation("WalnutFrameOperator: signal grid mismatch");
        SampledSignal out(grid_);
        for (long r = 0; r < q_; ++r) {
            const Block& blk = blocks_[static_cast<std::size_t>(r)];
            const auto len = blk.values.size();
            CVector x(len);
            for (Eigen::Index i = 0; i < len; ++i) x[i] = f.values[r + i * q_];
            const Eigen::VectorXd d = blk.values.array().pow(p).matrix();
            const CVector y = blk.vectors.cast<cd>() * (d.cast<cd>().asDiagonal() * (blk.vectors.transpose().cast<cd>() * x));
            for (Eigen::Index i = 0; i < len; ++i) out.values[r + i * q_] = y[i];
        }
        return out;
    }

private:
    struct Block {
        Eigen::VectorXd values;
        Eigen::MatrixXd vectors;
    };

    Eigen::Index chain_length(long p) const {
        const long n = static_cast<long>(grid_.n);
        return static_cast<Eigen::Index>((n - p + q_ - 1) / q_);
    }

    TimeGrid grid_;
    long q_;
    std::vector<Block> blocks_;
    double lower_ = std::numeric_limits<double>::infinity();
    double upper_ = 0.0;
};

struct TightWindow {
    SampledSignal window;     // psi_s, unit norm, centered at t = 0
    double condition_number;  // of the Gaussian frame operator
    double frame_lower;
    double frame_upper;
};

/// psi_s = rho S^{-1/2} g_s for the frame (g_s, a/rho, b/rho), sampled on
/// `grid`. The grid must contain t = 0 as a node and rho*a must be a whole
/// number of grid steps.
inline TightWindow tight_window(double s, double a, double b, double rho, const TimeGrid& grid) {
    if (!(s > 0.0)) fail_validation("tight_window: s must be positive");
    detail::check_lattice_params(a, b, rho);
    grid.validate();
    const long q = detail::transmit_step_samples(grid, a, rho);
    if (!detail::near_integer(-grid.t0 / grid.dt, 1e-8)) fail_validation("tight_window: t = 0 must be a grid node");

    const auto g = [s](double t) { return gaussian_value(s, t); };
    const double radius = 7.0 * std::sqrt(s); // exp(-pi*49) is far below double resolution
    const WalnutFrameOperator frame(grid, g, radius, a / rho, q);
    const double cond = frame.condition_number();
    if (!(cond <= 1e12)) fail_numerical("tight_window: frame operator is ill-conditioned (condition number " + std::to_string(cond) + ")");

    SampledSignal gs(grid);
    for (std::size_t i = 0; i < grid.n; ++i) gs.values[static_cast<Eigen::Index>(i)] = g(grid.at(i));
    SampledSignal psi = frame.apply_power(gs, -0.5);
    psi.values /= norm(psi);
    return TightWindow{std::move(psi), cond, frame.lower_bound(), frame.upper_bound()};
}

inline TightWindow tight_window(double s, double a, double b, double rho) {
    detail::check_lattice_params(a, b, rho);
    return tight_window(s, a, b, rho, window_grid(s, a, rho));
}

// ---------------------------------------------------------------------------
// Atoms, analysis and synthesis

/// scale * M_{b l} T_{a k} window.
inline SampledSignal atom(const GaborSystem& sys, int k, int l) {
    SampledSignal h = translate(sys.window, sys.lattice.a * k);
    h = modulate(h, sys.lattice.b * l);
    if (sys.scale() != 1.0) h.values *= sys.scale();
    return h;
}

/// Coefficients <f, psi_{k,l}>; rows index k - k_min, columns l - l_min.
inline CMatrix analysis_coefficients(const SampledSignal& f, const GaborSystem& sys) {
    if (!(f.grid == sys.window.grid)) fail_validation("analysis_coefficients: signal and window grids differ");
    const Lattice& lat = sys.lattice;
    const TimeGrid& grid = f.grid;
    CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(lat.k_count()), static_cast<Eigen::Index>(lat.l_count()));
    CVector prod(static_cast<Eigen::Index>(grid.n));
    for (int k = lat.k_min; k <= lat.k_max; ++k) {
        const SampledSignal h = translate(sys.window, lat.a * k);
        prod = f.values.array() * h.values.array().conjugate();
        for (int l = lat.l_min; l <= lat.l_max; ++l) {
            cd acc{0.0, 0.0};
            const double w = -kTwoPi * lat.b * l;
            for (std::size_t i = 0; i < grid.n; ++i) {
                const cd p = prod[static_cast<Eigen::Index>(i)];
                if (p != cd{0.0, 0.0}) acc += p * std::polar(1.0, w * grid.at(i));
            }
            c(k - lat.k_min, l - lat.l_min) = acc * grid.dt * sys.scale();
        }
    }
    return c;
}

/// sum_{k,l} c_{k,l} psi_{k,l}.
inline SampledSignal synthesis(const CMatrix& coeffs, const GaborSystem& sys) {
    const Lattice& lat = sys.lattice;
    if (coeffs.rows() != static_cast<Eigen::Index>(lat.k_count()) || coeffs.cols() != static_cast<Eigen::Index>(lat.l_count())) {
        fail_validation("synthesis: coefficient shape does not match the lattice ranges");
    }
    const TimeGrid& grid = sys.window.grid;
    SampledSignal out(grid);
    for (int k = lat.k_min; k <= lat.k_max; ++k) {
        const SampledSignal h = translate(sys.window, lat.a * k);
        for (std::size_t i = 0; i < grid.n; ++i) {
            const cd hv = h.values[static_cast<Eigen::Index>(i)];
            if (hv == cd{0.0, 0.0}) continue;
            cd acc{0.0, 0.0};
            const double t = grid.at(i);
            for (int l = lat.l_min; l <= lat.l_max; ++l) acc += coeffs(k - lat.k_min, l - lat.l_min) * std::polar(1.0, kTwoPi * lat.b * l * t);
            out.values[static_cast<Eigen::Index>(i)] += acc * hv * sys.scale();
        }
    }
    return out;
}

inline GaborSystem make_transmit_system(const SampledSignal& psi, double a, double b, double rho, double s, int K, int L) {
    detail::check_lattice_params(a, b, rho);
    return GaborSystem{psi, Lattice{rho * a, rho * b, 0, K, -L, L}, rho, s, SystemKind::transmit_orthonormal};
}

inline GaborSystem make_receive_system(const SampledSignal& psi, double a, double b, double rho, double s, int k_min, int k_max,
                                       int l_min, int l_max) {
    detail::check_lattice_params(a, b, rho);
    return GaborSystem{psi, Lattice{a / rho, b / rho, k_min, k_max, l_min, l_max}, rho, s, SystemKind::receive_tight};
}

/// Receive system covering every atom whose time centre lies within `radius`
/// of the grid interior and whose frequency centre lies below Nyquist minus
/// `bandwidth`.
inline GaborSystem make_covering_receive_system(const SampledSignal& psi, double a, double b, double rho, double s, double radius,
                                                double bandwidth) {
    const TimeGrid& g = psi.grid;
    const double ar = a / rho, br = b / rho;
    const int k_min = static_cast<int>(std::ceil((g.t0 + radius) / ar));
    const int k_max = static_cast<int>(std::floor((g.end() - radius) / ar));
    const int l_max = static_cast<int>(std::floor((0.5 / g.dt - bandwidth) / br));
    if (k_max < k_min || l_max < 0) fail_validation("receive system: grid too small for the window support");
    return make_receive_system(psi, a, b, rho, s, k_min, k_max, -l_max, l_max);
}

// ---------------------------------------------------------------------------
// Direct frame operator (independent of the Walnut route)

struct FrameApplyResult {
    SampledSignal signal;
    double boundary_norm = 0.0; // norm of the contribution of the outermost lattice ring
    bool truncation_ok = true;  // boundary_norm <= 1e-10 * norm(f)
};

/// S f = sum_{|k|<=k_max, |l|<=l_max} <f, M_{bl}T_{ak}g> M_{bl}T_{ak}g.
inline FrameApplyResult frame_operator_apply(const SampledSignal& window, double a, double b, const SampledSignal& f, int k_max, int l_max) {
    if (!(a > 0.0) || !(b > 0.0)) fail_validation("frame_operator_apply: lattice steps must be positive");
    GaborSystem sys{window, Lattice{a, b, -k_max, k_max, -l_max, l_max}, 2.0, 1.0, SystemKind::transmit_orthonormal};
    CMatrix c = analysis_coefficients(f, sys);
    FrameApplyResult res{synthesis(c, sys), 0.0, true};
    CMatrix ring = c;
    if (c.rows() > 2 && c.cols() > 2) ring.block(1, 1, c.rows() - 2, c.cols() - 2).setZero();
    res.boundary_norm = norm(synthesis(ring, sys));
    res.truncation_ok = res.boundary_norm <= 1e-10 * norm(f);
    return res;
}

/// Symmetric lattice ranges covering the grid in time and the band up to
/// Nyquist. Atoms beyond either edge would wrap around the periodic grid.
inline std::pair<int, int> covering_ranges(const TimeGrid& grid, double a, double b) {
    const double tmax = std::min(std::abs(grid.t0), std::abs(grid.end()));
    return {static_cast<int>(std::floor(tmax / a)), static_cast<int>(std::floor(0.5 / grid.dt / b))};
}

/// Gram matrix of the system's atoms, ordered (k, l) row-major.
inline CMatrix gram_matrix(const GaborSystem& sys) {
    const Lattice& lat = sys.lattice;
    std::vector<SampledSignal> atoms;
    atoms.reserve(lat.size());
    for (int k = lat.k_min; k <= lat.k_max; ++k)
        for (int l = lat.l_min; l <= lat.l_max; ++l) atoms.push_back(atom(sys, k, l));
    CMatrix m(static_cast<Eigen::Index>(atoms.size()), static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = 0; j < atoms.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner(atoms[j], atoms[i]);
    return m;
}

/// max |G - I| over the Gram matrix of a system.
inline double gram_max_deviation(const GaborSystem& sys) {
    CMatrix g = gram_matrix(sys);
    g -= CMatrix::Identity(g.rows(), g.cols());
    return g.cwiseAbs().maxCoeff();
}

} // namespace ltvcap
