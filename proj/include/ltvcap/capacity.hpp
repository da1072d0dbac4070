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

// Information capacity of a channel restricted to a time-frequency region.
//
// The exact figures use the eigenvalues of A*A, where A is the channel matrix
// between the orthonormal transmit atoms and the tight receive frame. The
// symbol figures replace the eigenvalues by samples of the symbol S of L*L on
// the transmit lattice. All logarithms are base 2 (bits).

#pragma once

#include "ltvcap/channel.hpp"
#include "ltvcap/gabor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ltvcap {

// ---------------------------------------------------------------------------
// Eigenvalues and capacity sums

/// Eigenvalues of a Hermitian matrix, descending, clamped at zero. Values
/// below -1e-10 (relative to the largest magnitude) are reported as an error.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& H) {
    if (H.rows() != H.cols()) fail_validation("hermitian_eigenvalues: matrix must be square");
    if (H.size() == 0) return {};
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) fail_numerical("hermitian_eigenvalues: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail_numerical("hermitian_eigenvalues: eigensolver failed");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    for (double& v : ev) {
        if (v < -1e-10 * scale) fail_numerical("hermitian_eigenvalues: matrix is not positive semidefinite");
        v = std::max(v, 0.0);
    }
    return ev;
}

inline std::vector<double> hermitian_eigenvalues(const ChannelMatrix& M) { return hermitian_eigenvalues(M.gram()); }

/// sum log2(1 + lambda / eta2).
inline double csir_capacity(std::span<const double> eigs, double eta2) {
    if (!(eta2 > 0.0)) fail_validation("csir_capacity: eta2 must be positive");
    double c = 0.0;
    for (double v : eigs) c += std::log2(1.0 + std::max(v, 0.0) / eta2);
    return c;
}

/// Same sum over symbol samples; negative samples contribute nothing.
inline double csir_symbol_capacity(std::span<const double> samples, double eta2) { return csir_capacity(samples, eta2); }

// ---------------------------------------------------------------------------
// Water-filling

struct Waterfill {
    std::vector<double> power;
    double level = 0.0;
};

/// Water level x0 with sum (x0 - N_l)^+ = P_total, by bisection on
/// [min N, min N + P_total] to 1e-12 P_total.
inline Waterfill waterfill(std::span<const double> noise_over_gain, double P_total) {
    if (noise_over_gain.empty()) fail_validation("waterfill: empty channel list");
    if (!(P_total > 0.0) || !std::isfinite(P_total)) fail_validation("waterfill: total power must be positive");
    for (double v : noise_over_gain)
        if (!(v > 0.0) || !std::isfinite(v)) fail_validation("waterfill: noise-to-gain ratios must be positive and finite");
    const auto filled = [&](double x) {
        double s = 0.0;
        for (double v : noise_over_gain) s += std::max(0.0, x - v);
        return s;
    };
    double lo = *std::min_element(noise_over_gain.begin(), noise_over_gain.end());
    double hi = lo + P_total;
    const double tol = 1e-12 * P_total;
    for (int it = 0; it < 200 && hi - lo > tol * 1e-3; ++it) {
        const double mid = 0.5 * (lo + hi);
        (filled(mid) < P_total ? lo : hi) = mid;
        if (std::abs(filled(mid) - P_total) <= tol * 1e-3) {
            lo = hi = mid;
            break;
        }
    }
    Waterfill w;
    w.level = 0.5 * (lo + hi);
    w.power.reserve(noise_over_gain.size());
    for (double v : noise_over_gain) w.power.push_back(std::max(0.0, w.level - v));
    // Spread the bisection residue over the active channels so the budget is met exactly.
    const double total = std::accumulate(w.power.begin(), w.power.end(), 0.0);
    const auto active = std::count_if(w.power.begin(), w.power.end(), [](double p) { return p > 0.0; });
    if (active > 0) {
        const double corr = (P_total - total) / static_cast<double>(active);
        for (double& p : w.power)
            if (p > 0.0) p += corr;
        w.level += corr;
    }
    return w;
}

struct CsitResult {
    double bits = 0.0;
    std::vector<double> power; // aligned with the input values; zero gains get zero power
    double level = 0.0;
};

/// Water-filling capacity over gains lambda_l (eigenvalues or symbol samples).
inline CsitResult csit_capacity(std::span<const double> gains, double eta2, double P_total) {
    if (!(P_total > 0.0)) fail_validation("csit_capacity: total power must be positive");
    if (!(eta2 > 0.0)) fail_validation("csit_capacity: eta2 must be positive");
    CsitResult r;
    r.power.assign(gains.size(), 0.0);
    std::vector<double> N;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        if (gains[i] > 0.0) {
            N.push_back(eta2 / gains[i]);
            idx.push_back(i);
        }
    }
    if (N.empty()) return r;
    const Waterfill w = waterfill(N, P_total);
    r.level = w.level;
    for (std::size_t u = 0; u < idx.size(); ++u) {
        r.power[idx[u]] = w.power[u];
        r.bits += std::log2(1.0 + w.power[u] * gains[idx[u]] / eta2);
    }
    return r;
}

/// Capacity of gains under a given allocation.
inline double allocated_capacity(std::span<const double> gains, std::span<const double> power, double eta2) {
    double c = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) c += std::log2(1.0 + power[i] * std::max(gains[i], 0.0) / eta2);
    return c;
}

// ---------------------------------------------------------------------------
// Majorization, stability, error bounds and geometric sums

struct LogGap {
    double diag_sum = 0.0;  // sum log2(1 + H_ii)
    double eig_sum = 0.0;   // sum log2(1 + lambda_i)
    double gap = 0.0;       // |diag_sum - eig_sum|
    double epsilon = 0.0;   // max off-diagonal absolute row sum
    double bound = 0.0;     // n log2(1 + epsilon)
};

/// Compares the log-det style sums of the diagonal and of the spectrum of a
/// Hermitian PSD matrix. Throws if the Gershgorin bound or the majorization
/// direction fails.
inline LogGap gershgorin_log_gap(const CMatrix& H) {
    const auto ev = hermitian_eigenvalues(H);
    LogGap g;
    const Eigen::Index n = H.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        g.diag_sum += std::log2(1.0 + std::max(0.0, H(i, i).real()));
        double row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) row += std::abs(H(i, j));
        g.epsilon = std::max(g.epsilon, row);
    }
    for (double v : ev) g.eig_sum += std::log2(1.0 + v);
    g.gap = std::abs(g.diag_sum - g.eig_sum);
    g.bound = static_cast<double>(n) * std::log2(1.0 + g.epsilon);
    const double slack = 1e-9 * std::max(1.0, std::abs(g.diag_sum));
    if (g.gap > g.bound + slack) fail_numerical("gershgorin_log_gap: gap exceeds the Gershgorin bound");
    if (g.diag_sum + slack < g.eig_sum) fail_numerical("gershgorin_log_gap: majorization direction violated");
    return g;
}

inline LogGap gershgorin_log_gap(const ChannelMatrix& M) { return gershgorin_log_gap(M.gram()); }

struct WaterfillStability {
    double max_alloc_dev = 0.0;
    double epsilon = 0.0; // max |N_l - M_l|
    double bound = 0.0;   // (L + 1) epsilon
};

inline WaterfillStability waterfill_stability(std::span<const double> N, std::span<const double> M, double P_total) {
    if (N.size() != M.size()) fail_validation("waterfill_stability: sequences differ in length");
    const Waterfill a = waterfill(N, P_total);
    const Waterfill b = waterfill(M, P_total);
    WaterfillStability s;
    for (std::size_t i = 0; i < N.size(); ++i) {
        s.epsilon = std::max(s.epsilon, std::abs(N[i] - M[i]));
        s.max_alloc_dev = std::max(s.max_alloc_dev, std::abs(a.power[i] - b.power[i]));
    }
    s.bound = static_cast<double>(N.size() + 1) * s.epsilon;
    if (s.max_alloc_dev > s.bound + 1e-10 * P_total) fail_numerical("waterfill_stability: allocation deviation exceeds (L+1) epsilon");
    return s;
}

/// exp(-rho (alpha + beta)/4) + 1/(alpha beta D)^2, the shape of the
/// diagonal-approximation error.
inline double bound_shape(double rho, double alpha, double beta, double D) {
    return std::exp(-rho * (alpha + beta) / 4.0) + 1.0 / std::pow(alpha * beta * D, 2);
}

inline double error_bound_csir(int K, int L, double rho, double alpha, double beta, double D_est, double kappa) {
    if (!(D_est > 0.0 && D_est < 1.0)) fail_validation("error_bound_csir: D_est must lie in (0, 1)");
    if (!(kappa >= 0.0)) fail_validation("error_bound_csir: kappa must be non-negative");
    const double n = 2.0 * K * L;
    return n * std::log2(1.0 + kappa * bound_shape(rho, alpha, beta, D_est));
}

inline double error_bound_csit(int K, int L, double rho, double alpha, double beta, double D_est, double kappa) {
    if (!(D_est > 0.0 && D_est < 1.0)) fail_validation("error_bound_csit: D_est must lie in (0, 1)");
    if (!(kappa >= 0.0)) fail_validation("error_bound_csit: kappa must be non-negative");
    const double n = 2.0 * K * L;
    return n * std::log2(1.0 + n * kappa * bound_shape(rho, alpha, beta, D_est));
}

/// Smallest kappa for which the csir (or csit) bound covers an observed gap.
inline double fit_kappa(double gap, int K, int L, double rho, double alpha, double beta, double D, bool csit) {
    const double n = 2.0 * K * L;
    if (n == 0.0 || gap <= 0.0) return 0.0;
    const double v = (std::exp2(gap / n) - 1.0) / bound_shape(rho, alpha, beta, D);
    return csit ? v / n : v;
}

struct GeometricSum {
    double lhs = 0.0;      // sum_j exp(-alpha |k - p j| - beta |p j - k'|)
    double envelope = 0.0; // exp(-beta |k - k'|/2) + exp(-alpha |k - k'|/2)
};

inline GeometricSum geometric_sum_check(double alpha, double beta, double p, double k, double k_prime) {
    if (!(alpha > 0.0 && beta > 0.0 && p > 0.0)) fail_validation("geometric_sum_check: alpha, beta, p must be positive");
    const auto term = [&](long j) {
        const double pj = p * static_cast<double>(j);
        return std::exp(-alpha * std::abs(k - pj) - beta * std::abs(pj - k_prime));
    };
    const long lo = static_cast<long>(std::floor(std::min(k, k_prime) / p));
    const long hi = static_cast<long>(std::ceil(std::max(k, k_prime) / p));
    GeometricSum g;
    for (long j = lo; j <= hi; ++j) g.lhs += term(j);
    for (long j = hi + 1;; ++j) {
        const double t = term(j);
        g.lhs += t;
        if (t < 1e-16 * g.lhs) break;
    }
    for (long j = lo - 1;; --j) {
        const double t = term(j);
        g.lhs += t;
        if (t < 1e-16 * g.lhs) break;
    }
    const double d = std::abs(k - k_prime);
    g.envelope = std::exp(-beta * d / 2.0) + std::exp(-alpha * d / 2.0);
    return g;
}

// ---------------------------------------------------------------------------
// Capacity report

struct CapacityParams {
    double alpha = 2.0; // lattice design rates; the lattice uses a = beta/alpha
    double beta = 2.0;
    double rho = 1.5;
    std::optional<double> s; // default (beta/alpha)^2
    double T = 4.5;
    double W = 3.0;
    double eta2 = 0.1;
    double P_total = 1.0;
    std::optional<double> kappa;      // csir O-constant; calibrated at (2,2) when absent
    std::optional<double> kappa_csit; // csit O-constant; calibrated at (2,2) when absent
    std::optional<double> D_est;      // window decay constant; fitted when absent
    QuadratureOptions quad;
    std::optional<double> grid_dt;    // upper bound on the grid step
    std::optional<std::size_t> grid_n; // minimum number of samples
    std::size_t max_atoms = 256;
};

/// Layout of the signal grid and lattice for a capacity computation.
struct CapacityPlan {
    double a = 1.0, b = 1.0, s = 1.0;
    int K = 0, L = 0;
    TimeGrid grid;
    double window_radius_t = 0.0; // |psi| > 1e-10 max within this radius
    double window_radius_w = 0.0;
};

struct CapacityReport {
    std::vector<double> eigenvalues;    // of A*A, descending
    Eigen::MatrixXd symbol_samples;     // S^+ on (k, l + L)
    std::vector<double> diag_gram;      // (A*A)_{kl,kl} aligned with the transmit index
    std::vector<std::pair<int, int>> tx_index;
    double eta2 = 0.0, P_total = 0.0;
    double csir_exact = 0.0, csir_symbol = 0.0;
    double csit_exact = 0.0, csit_symbol = 0.0;
    double error_bound_csir = 0.0, error_bound_csit = 0.0;
    double kappa = 0.0, kappa_csit = 0.0;
    bool kappa_calibrated = false;
    std::vector<double> power_exact;    // aligned with eigenvalues
    std::vector<double> power_symbol;   // aligned with tx_index
    double T = 0.0, W = 0.0;
    double alpha = 0.0, beta = 0.0, rho = 0.0, s = 0.0;
    int K = 0, L = 0;
    double D_est = 0.0;
    double diag_max_dev = 0.0;          // max |(A*A)_{kl,kl} - S(sample)|
    LogGap log_gap;
    TimeGrid grid;
};

namespace detail {

inline std::size_t fft_friendly(std::size_t n) {
    for (std::size_t m = n;; ++m) {
        if (m % 2 != 0) continue;
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

} // namespace detail

/// D from the fitted time and frequency decay rates of psi_s:
/// |psi(t)| ~ exp(-D pi |t| / s), |psihat(w)| ~ exp(-D pi s |w|).
inline double estimate_D(const SampledSignal& psi, double s) {
    const DecayFit ft = decay_envelope_fit(psi);
    const DecayFit fw = decay_envelope_fit(fourier(psi));
    const double D = std::min(ft.rate * s / kPi, fw.rate / (kPi * s));
    return std::clamp(D, 1e-6, 0.999);
}

inline CapacityPlan plan_capacity(const SpreadingFunction& sf, const CapacityParams& p) {
    if (!(p.alpha >= 1.0) || !(p.beta >= 1.0)) fail_validation("capacity: alpha and beta must be >= 1");
    if (!(p.rho > 1.0)) fail_validation("Balian–Low regime: no localized orthonormal system (rho must exceed 1)");
    if (!(p.T > 0.0) || !(p.W > 0.0)) fail_validation("capacity: region T and W must be positive");
    if (!(p.eta2 > 0.0)) fail_validation("capacity: eta2 must be positive");
    CapacityPlan plan;
    plan.a = p.beta / p.alpha;
    plan.b = p.alpha / p.beta;
    plan.s = p.s.value_or(plan.a * plan.a);
    if (!(plan.s > 0.0)) fail_validation("capacity: s must be positive");
    plan.K = static_cast<int>(std::floor(p.T * p.alpha / (p.rho * p.beta) + 1e-12));
    plan.L = static_cast<int>(std::floor(p.W * p.beta / (p.rho * p.alpha) + 1e-12));
    const std::size_t atoms = static_cast<std::size_t>(plan.K + 1) * static_cast<std::size_t>(2 * plan.L + 1);
    if (atoms > p.max_atoms) {
        fail_validation("capacity: " + std::to_string(atoms) + " transmit atoms exceed max_atoms = " + std::to_string(p.max_atoms));
    }

    // Window support on a provisional grid.
    const TightWindow pw = tight_window(plan.s, plan.a, plan.b, p.rho, window_grid(plan.s, plan.a, p.rho, 2048));
    plan.window_radius_t = support_radius(pw.window, 0.0, 1e-10);
    plan.window_radius_w = support_radius(fourier(pw.window), 0.0, 1e-10);

    // Channel extent.
    double X = 0.0, Om = 0.0;
    if (sf.kind == ChannelKind::separable_exponential || sf.kind == ChannelKind::lti_limit_family) {
        const double lg = std::max(0.0, std::log(std::max(sf.amplitude, p.quad.eps) / p.quad.eps));
        X = lg / sf.alpha;
        Om = lg / sf.beta;
    } else if (sf.kind == ChannelKind::point_mass) {
        X = std::abs(sf.x0);
        Om = std::abs(sf.omega0);
    } else {
        X = std::max(std::abs(sf.density.x_axis.start), std::abs(sf.density.x_axis.end()));
        Om = std::max(std::abs(sf.density.w_axis.start), std::abs(sf.density.w_axis.end()));
    }

    const double ta = p.rho * plan.a;
    double dt_max = 1.0 / (2.0 * (plan.L * p.rho * plan.b + Om + 2.0 * plan.window_radius_w));
    if (sf.kind == ChannelKind::separable_exponential || sf.kind == ChannelKind::lti_limit_family) {
        dt_max = std::min(dt_max, 1.0 / (p.quad.step_factor * sf.alpha));
    }
    if (p.grid_dt) dt_max = std::min(dt_max, *p.grid_dt);
    const double Q = std::ceil(ta / dt_max - 1e-9);
    const double dt = ta / Q;
    const double pad = X + 2.0 * plan.window_radius_t;
    const auto n_lo = static_cast<std::size_t>(std::ceil(pad / dt));
    auto n_hi = static_cast<std::size_t>(std::ceil((plan.K * ta + pad) / dt));
    std::size_t n = detail::fft_friendly(std::max(n_lo + n_hi + 1, p.grid_n.value_or(0)));
    plan.grid = TimeGrid{-static_cast<double>(n_lo) * dt, dt, n};
    plan.grid.validate();
    return plan;
}

namespace detail {

struct CapacityCore {
    CapacityPlan plan;
    ChannelMatrix A;
    std::vector<double> eigenvalues;
    Eigen::MatrixXd samples;
    double D = 0.5;
};

inline CapacityCore capacity_core(const SpreadingFunction& sf, const CapacityParams& p) {
    CapacityCore c;
    c.plan = plan_capacity(sf, p);
    const CapacityPlan& pl = c.plan;
    const TightWindow tw = tight_window(pl.s, pl.a, pl.b, p.rho, pl.grid);
    c.D = p.D_est.value_or(estimate_D(tw.window, pl.s));
    const GaborSystem tx = make_transmit_system(tw.window, pl.a, pl.b, p.rho, pl.s, pl.K, pl.L);
    const GaborSystem rx = make_covering_receive_system(tw.window, pl.a, pl.b, p.rho, pl.s, pl.window_radius_t, pl.window_radius_w);
    const WeylOperator op = make_weyl_operator(sf, pl.grid, p.quad);
    c.A = channel_matrix(op, tx, rx);
    c.A.eta2 = p.eta2;
    c.eigenvalues = hermitian_eigenvalues(c.A);
    const auto [t_axis, nu_axis] = symbol_axes(pl.a, pl.b, p.rho, pl.K, pl.L);
    const TFGridFunction S = symbol_S(op, t_axis, nu_axis);
    c.samples = sample_S_plus(S, p.alpha, p.beta, p.rho, pl.K, pl.L);
    return c;
}

inline std::vector<double> flatten(const Eigen::MatrixXd& m) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index k = 0; k < m.rows(); ++k)
        for (Eigen::Index l = 0; l < m.cols(); ++l) v.push_back(m(k, l));
    return v;
}

} // namespace detail

inline CapacityReport capacity_report(const SpreadingFunction& sf, const CapacityParams& p) {
    if (!(p.P_total > 0.0)) fail_validation("capacity: P_total must be positive");
    const detail::CapacityCore core = detail::capacity_core(sf, p);
    CapacityReport r;
    const CapacityPlan& pl = core.plan;
    r.grid = pl.grid;
    r.T = p.T;
    r.W = p.W;
    r.alpha = p.alpha;
    r.beta = p.beta;
    r.rho = p.rho;
    r.s = pl.s;
    r.K = pl.K;
    r.L = pl.L;
    r.eta2 = p.eta2;
    r.P_total = p.P_total;
    r.D_est = core.D;
    r.eigenvalues = core.eigenvalues;
    r.symbol_samples = core.samples;
    r.tx_index = core.A.tx_index;

    const CMatrix G = core.A.gram();
    const std::vector<double> mu = detail::flatten(core.samples);
    for (Eigen::Index i = 0; i < G.rows(); ++i) {
        r.diag_gram.push_back(G(i, i).real());
        const auto [k, l] = r.tx_index[static_cast<std::size_t>(i)];
        r.diag_max_dev = std::max(r.diag_max_dev, std::abs(G(i, i).real() - core.samples(k, l + pl.L)));
    }
    r.log_gap = gershgorin_log_gap(G);

    r.csir_exact = csir_capacity(r.eigenvalues, p.eta2);
    r.csir_symbol = csir_symbol_capacity(mu, p.eta2);
    const CsitResult ce = csit_capacity(r.eigenvalues, p.eta2, p.P_total);
    const CsitResult cs = csit_capacity(mu, p.eta2, p.P_total);
    r.csit_exact = ce.bits;
    r.csit_symbol = cs.bits;
    r.power_exact = ce.power;
    r.power_symbol = cs.power;

    if (p.kappa && p.kappa_csit) {
        r.kappa = *p.kappa;
        r.kappa_csit = *p.kappa_csit;
    } else {
        // Calibrate the O-constants at (alpha, beta) = (2, 2) with the same channel family.
        SpreadingFunction cal_sf = sf;
        if (sf.kind == ChannelKind::separable_exponential || sf.kind == ChannelKind::lti_limit_family) {
            cal_sf = make_spreading(sf.kind, sf.kind == ChannelKind::lti_limit_family ? 1.0 : sf.amplitude, 2.0, 2.0, sf.phase_seed, sf.n_index);
        }
        CapacityParams cp = p;
        cp.alpha = cp.beta = 2.0;
        cp.s.reset();
        cp.T = p.T / pl.a; // keeps K = floor(T / (rho a))
        cp.W = p.W * pl.a; // keeps L = floor(W a / rho)
        cp.kappa = cp.kappa_csit = 0.0;
        cp.D_est = core.D;
        const bool same = p.alpha == 2.0 && p.beta == 2.0 && !p.s;
        const CapacityReport cal = same ? CapacityReport{} : capacity_report(cal_sf, cp);
        const double gap_r = same ? std::abs(r.csir_exact - r.csir_symbol) : std::abs(cal.csir_exact - cal.csir_symbol);
        const double gap_w = same ? std::abs(r.csit_exact - r.csit_symbol) : std::abs(cal.csit_exact - cal.csit_symbol);
        r.kappa = p.kappa.value_or(fit_kappa(gap_r, pl.K, pl.L, p.rho, 2.0, 2.0, core.D, false));
        r.kappa_csit = p.kappa_csit.value_or(fit_kappa(gap_w, pl.K, pl.L, p.rho, 2.0, 2.0, core.D, true));
        r.kappa_calibrated = true;
    }
    r.error_bound_csir = error_bound_csir(pl.K, pl.L, p.rho, p.alpha, p.beta, core.D, r.kappa);
    r.error_bound_csit = error_bound_csit(pl.K, pl.L, p.rho, p.alpha, p.beta, core.D, r.kappa_csit);
    return r;
}

// ---------------------------------------------------------------------------
// Time-invariant limit

enum class CapacityMode { csir, csit };

struct LtiRow {
    double beta = 0.0;
    int L = 0;
    double normalized_capacity = 0.0; // bits per unit area
    double lti_target = 0.0;          // bits per unit area
    double gap = 0.0;
    double power_sum = 0.0;           // spacing * sum P_l (csit); equals P_total
};

struct LtiSweep {
    std::vector<LtiRow> rows;
    bool truncated = false;
    std::string warning;
};

/// |h^(w)|^2 for h(x) = exp(-alpha |x|).
inline double lti_gain_sq(double alpha, double w) {
    const double h = 2.0 * alpha / (alpha * alpha + 4.0 * kPi * kPi * w * w);
    return h * h;
}

namespace detail {

// Midpoint quadrature nodes on [-W, W].
inline std::vector<double> midpoints(double W, std::size_t n) {
    std::vector<double> x(n);
    const double h = 2.0 * W / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -W + (static_cast<double>(i) + 0.5) * h;
    return x;
}

} // namespace detail

/// (1/(2 rho W)) int_{-W}^{W} log2(1 + g(w)/eta2) dw (csir), or the same with
/// the water-filled power density P(w), int P = P_total (csit).
inline double lti_target(const std::function<double(double)>& gain_sq, double W, double rho, double eta2, CapacityMode mode,
                         double P_total, std::size_t nodes = 200000) {
    const auto x = detail::midpoints(W, nodes);
    const double h = 2.0 * W / static_cast<double>(nodes);
    double integral = 0.0;
    if (mode == CapacityMode::csir) {
        for (double w : x) integral += std::log2(1.0 + gain_sq(w) / eta2);
    } else {
        std::vector<double> N, g;
        for (double w : x) {
            g.push_back(gain_sq(w));
            N.push_back(g.back() > 0.0 ? eta2 / g.back() : std::numeric_limits<double>::infinity());
        }
        // Water level for the density: sum (x0 - N)^+ h = P_total.
        double lo = *std::min_element(N.begin(), N.end()), hi = lo + P_total / h;
        const auto filled = [&](double lvl) {
            double s = 0.0;
            for (double v : N) s += std::max(0.0, lvl - v);
            return s * h;
        };
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (filled(mid) < P_total ? lo : hi) = mid;
        }
        const double lvl = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < N.size(); ++i) integral += std::log2(1.0 + std::max(0.0, lvl - N[i]) * g[i] / eta2);
    }
    return integral * h / (2.0 * rho * W);
}

struct LtiSweepParams {
    std::vector<double> beta_seq;
    double alpha = 2.0;
    double W = 1.0;
    double rho = 1.5;
    double eta2 = 0.1;
    CapacityMode mode = CapacityMode::csir;
    double P_total = 1.0;
    QuadratureOptions quad{1e-10, 16.0, 1e7};
    std::size_t max_atoms = 256;
};

/// Symbol-sample capacity of the lti_limit_family channel on
/// R_n = [0, beta_n/alpha] x [-W, W], normalized by |R_n|, against the
/// time-invariant target. In csit mode the atoms share the budget
/// P_total / spacing with spacing = rho alpha / beta_n, so the per-atom powers
/// sample a power density whose integral is P_total.
inline LtiSweep lti_limit_sweep(const LtiSweepParams& p, const std::function<double(double)>& gain_sq = {}) {
    if (p.beta_seq.empty()) fail_validation("lti sweep: beta_seq must not be empty");
    for (std::size_t i = 1; i < p.beta_seq.size(); ++i)
        if (!(p.beta_seq[i] > p.beta_seq[i - 1])) fail_validation("lti sweep: beta_seq must be strictly increasing");
    if (!(p.W > 0.0) || !(p.eta2 > 0.0) || !(p.P_total > 0.0)) fail_validation("lti sweep: W, eta2 and P_total must be positive");
    if (!(p.rho > 1.0)) fail_validation("Balian–Low regime: no localized orthonormal system (rho must exceed 1)");
    const auto gain = gain_sq ? gain_sq : std::function<double(double)>([a = p.alpha](double w) { return lti_gain_sq(a, w); });
    const double target = lti_target(gain, p.W, p.rho, p.eta2, p.mode, p.P_total);

    LtiSweep out;
    for (double beta : p.beta_seq) {
        const int L = static_cast<int>(std::floor(p.W * beta / (p.rho * p.alpha) + 1e-12));
        if (static_cast<std::size_t>(2 * L + 1) > p.max_atoms) {
            out.truncated = true;
            out.warning = "sweep truncated at beta = " + std::to_string(beta) + ": atom budget exceeded";
            break;
        }
        const SpreadingFunction sf = make_spreading(ChannelKind::lti_limit_family, 1.0, p.alpha, beta, 0);
        const double a = beta / p.alpha, b = p.alpha / beta;
        // Any grid works for the symbol; it only fixes the lattice lock.
        const double ta = p.rho * a;
        const double dt_max = 1.0 / (p.quad.step_factor * p.alpha);
        const double dt = ta / std::ceil(ta / dt_max - 1e-9);
        const TimeGrid grid = TimeGrid::centered(64, dt);
        const WeylOperator op = make_weyl_operator(sf, grid, p.quad);
        const auto [t_axis, nu_axis] = symbol_axes(a, b, p.rho, 0, L);
        const Eigen::MatrixXd S = sample_S_plus(symbol_S(op, t_axis, nu_axis), p.alpha, beta, p.rho, 0, L);
        const std::vector<double> mu(S.data(), S.data() + S.size());
        const double area = (beta / p.alpha) * 2.0 * p.W;
        const double spacing = p.rho * p.alpha / beta;
        LtiRow row;
        row.beta = beta;
        row.L = L;
        if (p.mode == CapacityMode::csir) {
            row.normalized_capacity = csir_symbol_capacity(mu, p.eta2) / area;
        } else {
            const CsitResult cs = csit_capacity(mu, p.eta2, p.P_total / spacing);
            row.normalized_capacity = cs.bits / area;
            row.power_sum = spacing * std::accumulate(cs.power.begin(), cs.power.end(), 0.0);
        }
        row.lti_target = target;
        row.gap = std::abs(row.normalized_capacity - target);
        out.rows.push_back(row);
    }
    return out;
}

} // namespace ltvcap
