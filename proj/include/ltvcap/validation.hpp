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

// Named property checks at desk scale. Each check is deterministic for a
// given seed and reports a single measured figure against a pinned tolerance.

#pragma once

#include "ltvcap/capacity.hpp"

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ltvcap::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    Twist twist = Twist::standard; // Twist::flipped injects a sign fault into the twisted products
};

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Check {
    std::string name;
    std::function<Outcome(const SuiteOptions&)> run;
};

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

/// value <= tol, reported as "label=value (tol=...)".
inline Outcome at_most(const std::string& label, double value, double tol) {
    return Outcome{value <= tol, label + "=" + fmt(value) + " (tol " + fmt(tol) + ")"};
}

inline CheckResult run_check(const Check& c, const SuiteOptions& o) {
    try {
        const Outcome r = c.run(o);
        return CheckResult{c.name, r.passed, r.detail};
    } catch (const Error& e) {
        return CheckResult{c.name, false, std::string("error: ") + e.what()};
    }
}

// ---------------------------------------------------------------------------
// Test signals

/// Sum of `atoms` modulated Gaussians with random centres in
/// midpoint +- spread, frequencies in +- max_freq, scales in [0.5, 2];
/// unit norm. Band-limited to well below Nyquist when max_freq + 3 < 1/(4 dt).
inline SampledSignal random_atoms(const TimeGrid& grid, std::mt19937_64& rng, int atoms = 4, double spread = 2.0, double max_freq = 2.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SampledSignal f(grid);
    for (int q = 0; q < atoms; ++q) {
        const double c = grid.midpoint() + spread * u(rng);
        const double w = max_freq * u(rng);
        const double s = 1.25 + 0.75 * u(rng);
        const cd coef{u(rng), u(rng)};
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double t = grid.at(i);
            f.values[static_cast<Eigen::Index>(i)] += coef * gaussian_value(s, t - c) * std::polar(1.0, kTwoPi * w * t);
        }
    }
    f.values /= norm(f);
    return f;
}

/// Complex white noise under a Gaussian envelope of width `width` at `center`;
/// unit norm. Not band-limited; for identities that hold sample by sample.
inline SampledSignal random_noise(const TimeGrid& grid, std::mt19937_64& rng, double center, double width) {
    std::normal_distribution<double> n01(0.0, 1.0);
    SampledSignal f(grid);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double z = (grid.at(i) - center) / width;
        f.values[static_cast<Eigen::Index>(i)] = cd{n01(rng), n01(rng)} * std::exp(-kPi * z * z);
    }
    f.values /= norm(f);
    return f;
}

/// Relative distance norm(a - b) / norm(b).
inline double rel_dist(const SampledSignal& a, const SampledSignal& b) { return norm(a - b) / norm(b); }

// ---------------------------------------------------------------------------
// Individual checks (also called directly by the tests)

/// Ambiguity envelope: with |psi(t)| <= C exp(-c1 |t|) and |psihat(w)| <= C exp(-c2 |w|)
/// fitted from psi, returns max over the grid of |A(psi,psi)| / (C^2 exp(-(c1|x| + c2|w|)/4) + floor).
inline double wa_envelope_ratio(const SampledSignal& psi, double floor = 1e-12) {
    const DecayFit ft = decay_envelope_fit(psi);
    const DecayFit fw = decay_envelope_fit(fourier(psi));
    const double C = std::max(ft.amplitude, fw.amplitude);
    const TFGridFunction A = cross_ambiguity(psi, psi);
    double worst = 0.0;
    for (std::size_t wi = 0; wi < A.w_axis.count; ++wi) {
        for (std::size_t xi = 0; xi < A.x_axis.count; ++xi) {
            const double env = C * C * std::exp(-(ft.rate * std::abs(A.x_axis.at(xi)) + fw.rate * std::abs(A.w_axis.at(wi))) / 4.0);
            worst = std::max(worst, std::abs(A(wi, xi)) / (env + floor));
        }
    }
    return worst;
}

/// Geometric sum check over |k - k'| = d in [1, d_max]: the constant is fitted
/// at d = 1 only; returns max_d lhs(d) / (C envelope(d)) over d >= 2.
inline double geometric_sum_ratio(double alpha, double beta, double p, int d_max = 20) {
    const GeometricSum cal = geometric_sum_check(alpha, beta, p, 1.0, 0.0);
    const double C = cal.lhs / cal.envelope;
    double worst = 0.0;
    for (int d = 2; d <= d_max; ++d) {
        const GeometricSum g = geometric_sum_check(alpha, beta, p, static_cast<double>(d), 0.0);
        worst = std::max(worst, g.lhs / (C * g.envelope));
    }
    return worst;
}

/// max over random signals of |<L f, g> - <sigma, W(g, f)>| / |<L f, g>|.
inline double weyl_wigner_pairing_error(const WeylOperator& op, std::mt19937_64& rng, int pairs) {
    const TimeGrid& grid = op.grid();
    double worst = 0.0;
    for (int q = 0; q < pairs; ++q) {
        const SampledSignal f = random_atoms(grid, rng, 3, 1.0, 1.5);
        const SampledSignal g = random_atoms(grid, rng, 3, 1.0, 1.5);
        const cd lhs = inner(op.apply(f), g);
        const TFGridFunction W = cross_wigner(g, f);
        const cd rhs = grid_inner(op.weyl_symbol(W.x_axis, W.w_axis), W);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return worst;
}

/// pi(omega, s dt) f sampled on f's grid; samples shifted off the grid are zero.
inline SampledSignal tf_shift(const SampledSignal& f, double omega, long s) {
    SampledSignal out(f.grid);
    const long n = static_cast<long>(f.grid.n);
    const double half = 0.5 * static_cast<double>(s) * f.grid.dt;
    for (long i = std::max(0L, -s); i < std::min(n, n - s); ++i)
        out.values[i] = std::polar(1.0, kTwoPi * omega * (f.grid.at(static_cast<std::size_t>(i)) + half)) * f.values[i + s];
    return out;
}

/// |<L pi(z_f) f, pi(z_g) g>| against |sum_z mu(z) e^{pi i (x (eta + gamma) - omega (u + v))} <pi(z + z_f - z_g) f, g>|
/// with z_f = (eta, u), z_g = (gamma, v). The phase depends only on the midpoint
/// z_f + z_g and vanishes for symmetric offsets z_g = -z_f, where the identity
/// is a plain correlation of the spreading weights with the ambiguity function.
/// Offsets are random multiples of 16 dt in time and 0.5 in frequency.
inline double weyl_ambiguity_magnitude_error(const WeylOperator& op, std::mt19937_64& rng, int pairs, bool symmetric_offsets) {
    const TimeGrid& grid = op.grid();
    const TFGridFunction& mu = op.weights();
    const long r = op.delay_step_samples(), n = static_cast<long>(grid.n);
    std::uniform_int_distribution<int> off(-3, 3);
    double worst = 0.0;
    for (int q = 0; q < pairs; ++q) {
        const SampledSignal f = random_atoms(grid, rng, 3, 1.0, 1.5), g = random_atoms(grid, rng, 3, 1.0, 1.5);
        const long us = 16L * off(rng);
        const double eta = 0.5 * off(rng);
        const long vs = symmetric_offsets ? -us : 16L * off(rng);
        const double gamma = symmetric_offsets ? -eta : 0.5 * off(rng);
        const double u = static_cast<double>(us) * grid.dt, v = static_cast<double>(vs) * grid.dt;
        const cd lhs = inner(op.apply(tf_shift(f, eta, us)), tf_shift(g, gamma, vs));

        cd rhs{0.0, 0.0};
        std::vector<cd> h(static_cast<std::size_t>(n)), cur(h.size()), step(h.size());
        for (std::size_t jx = 0; jx < mu.x_axis.count; ++jx) {
            if (mu.values.col(static_cast<Eigen::Index>(jx)).cwiseAbs().maxCoeff() == 0.0) continue;
            const double x = mu.x_axis.at(jx);
            const long s = (static_cast<long>(jx) - static_cast<long>(mu.x_axis.count / 2)) * r + us - vs;
            const double half = 0.5 * static_cast<double>(s) * grid.dt;
            const double w0 = mu.w_axis.start + eta - gamma;
            for (long i = 0; i < n; ++i) {
                const auto k = static_cast<std::size_t>(i);
                const double tc = grid.at(k) + half;
                h[k] = (i + s >= 0 && i + s < n) ? f.values[i + s] * std::conj(g.values[i]) : cd{0.0, 0.0};
                cur[k] = h[k] * std::polar(1.0, kTwoPi * w0 * tc);
                step[k] = std::polar(1.0, kTwoPi * mu.w_axis.step * tc);
            }
            for (std::size_t mw = 0; mw < mu.w_axis.count; ++mw) {
                cd amb{0.0, 0.0};
                for (std::size_t k = 0; k < h.size(); ++k) {
                    amb += cur[k];
                    cur[k] *= step[k];
                }
                const double w = mu.w_axis.at(mw);
                rhs += mu(mw, jx) * std::polar(1.0, kPi * (x * (eta + gamma) - w * (u + v))) * amb * grid.dt;
            }
        }
        worst = std::max(worst, std::abs(std::abs(lhs) - std::abs(rhs)) / std::abs(lhs));
    }
    return worst;
}

/// Operator of the twisted convolution of two lattice measures on `grid`
/// (densities are weights / cell area).
inline WeylOperator composed_operator(const TimeGrid& grid, const TFGridFunction& mu1, const TFGridFunction& mu2, Twist twist) {
    const double cell = mu1.w_axis.step * mu1.x_axis.step;
    TFGridFunction d1 = mu1, d2 = mu2;
    d1.values /= cell;
    d2.values /= cell;
    TFGridFunction c = twisted_convolution(d1, d2, TwistedConvolutionOptions{twist, true});
    c.values *= cell;
    return WeylOperator(grid, std::move(c));
}

// ---------------------------------------------------------------------------
// The suite

inline std::vector<Check> suite() {
    std::vector<Check> v;

    v.push_back({"tfcore.fourier_unitarity", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed);
                     const TimeGrid g = TimeGrid::centered(1024, 0.05);
                     double worst = 0.0;
                     for (int q = 0; q < 10; ++q) {
                         const SampledSignal f = random_noise(g, rng, 0.0, 8.0);
                         worst = std::max(worst, std::abs(norm2(fourier(f)) - norm2(f)) / norm2(f));
                     }
                     return at_most("max relative energy change", worst, 1e-12);
                 }});

    v.push_back({"tfcore.gaussian_self_dual", [](const SuiteOptions&) {
                     const TimeGrid g = TimeGrid::centered(1024, 1.0 / 32.0);
                     const SampledSignal gh = fourier(gaussian_window(g, 1.0));
                     const SampledSignal ref = gaussian_window(gh.grid, 1.0);
                     return at_most("max |F g1 - g1|", (gh.values - ref.values).cwiseAbs().maxCoeff(), 1e-8);
                 }});

    v.push_back({"tfcore.ambiguity_covariance", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 1);
                     const TimeGrid g = TimeGrid::centered(256, 1.0 / 16.0);
                     const SampledSignal f = random_atoms(g, rng, 3, 1.0, 1.5);
                     const SampledSignal h = modulate(translate(f, 5.0 * g.dt), 3.0 / g.span());
                     const CMatrix a = cross_ambiguity(f, f).values, b = cross_ambiguity(h, h).values;
                     const double dev = (a.cwiseAbs() - b.cwiseAbs()).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff();
                     return at_most("max magnitude change", dev, 1e-9);
                 }});

    v.push_back({"tfcore.moyal_identity", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 2);
                     const TimeGrid g = TimeGrid::centered(512, 1.0 / 16.0);
                     double worst = 0.0;
                     for (int q = 0; q < 3; ++q) {
                         const SampledSignal f = random_atoms(g, rng), h = random_atoms(g, rng);
                         const double lhs = grid_inner(cross_wigner(f, f), cross_wigner(h, h)).real();
                         worst = std::max(worst, std::abs(lhs - std::norm(inner(f, h))));
                     }
                     return at_most("max |<Wf,Wg> - |<f,g>|^2|", worst, 1e-8);
                 }});

    v.push_back({"tfcore.ambiguity_envelope", [](const SuiteOptions&) {
                     const TightWindow tw = tight_window(1.0, 1.0, 1.0, 1.5);
                     const double r = wa_envelope_ratio(tw.window);
                     return Outcome{r <= 1.0, "max |A| / envelope = " + fmt(r) + " (must be <= 1)"};
                 }});

    v.push_back({"gabor.transmit_orthonormality", [](const SuiteOptions&) {
                     const TightWindow tw = tight_window(1.0, 1.0, 1.0, 1.5);
                     const GaborSystem tx{tw.window, Lattice{1.5, 1.5, -3, 3, -3, 3}, 1.5, 1.0, SystemKind::transmit_orthonormal};
                     return at_most("max |G - I|", gram_max_deviation(tx), 1e-6);
                 }});

    v.push_back({"gabor.receive_tight_frame", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 3);
                     // Nyquist 20 leaves room for the exponential spectral tail of psi.
                     const TightWindow tw = tight_window(1.0, 1.0, 1.0, 1.5, TimeGrid::centered(2048, 1.5 / 60.0));
                     const double rt = support_radius(tw.window, 0.0, 1e-10), rw = support_radius(fourier(tw.window), 0.0, 1e-10);
                     const GaborSystem rx = make_covering_receive_system(tw.window, 1.0, 1.0, 1.5, 1.0, rt, rw);
                     double worst = 0.0;
                     for (int q = 0; q < 3; ++q) {
                         const SampledSignal f = random_atoms(tw.window.grid, rng, 4, 4.0, 2.0);
                         worst = std::max(worst, rel_dist(synthesis(analysis_coefficients(f, rx), rx), f));
                     }
                     return at_most("max relative reconstruction error", worst, 1e-6);
                 }});

    v.push_back({"channel.weyl_wigner_pairing", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 4);
                     const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
                     const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), g,
                                                                QuadratureOptions{1e-8, 8.0, 1e7});
                     return at_most("max relative pairing error", weyl_wigner_pairing_error(op, rng, 3), 1e-6);
                 }});

    v.push_back({"channel.weyl_ambiguity_magnitude", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 8);
                     const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
                     const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), g,
                                                                QuadratureOptions{1e-8, 8.0, 1e7});
                     const double e = std::max(weyl_ambiguity_magnitude_error(op, rng, 2, false), weyl_ambiguity_magnitude_error(op, rng, 2, true));
                     return at_most("max relative magnitude error", e, 1e-6);
                 }});

    v.push_back({"channel.symbol_S_real", [](const SuiteOptions& o) {
                     const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
                     const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), g);
                     const auto [ta, na] = symbol_axes(1.0, 1.0, 1.5, 3, 2);
                     const TFGridFunction S = op.symbol_S_complex(ta, na, o.twist);
                     const double imag = S.values.imag().cwiseAbs().maxCoeff() / std::max(1.0, S.values.cwiseAbs().maxCoeff());
                     return at_most("max relative imaginary part", imag, 1e-8);
                 }});

    v.push_back({"channel.symbol_S_unitary_channels", [](const SuiteOptions& o) {
                     const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
                     const auto [ta, na] = symbol_axes(1.0, 1.0, 1.5, 3, 2);
                     double worst = 0.0;
                     for (const SpreadingFunction& sf : {make_point_mass(0.0, 0.0), make_point_mass(2.0 / (64.0 * g.dt), 0.0),
                                                         make_point_mass(2.0 / (64.0 * g.dt), 8.0 * g.dt)}) {
                         const TFGridFunction S = symbol_S(make_weyl_operator(sf, g), ta, na, o.twist);
                         worst = std::max(worst, (S.values.array() - 1.0).abs().maxCoeff());
                     }
                     return at_most("max |S - 1|", worst, 1e-8);
                 }});

    v.push_back({"channel.twisted_composition", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 5);
                     const TimeGrid g = TimeGrid::centered(1024, 1.0 / 32.0);
                     const QuadratureOptions q{1e-4, 4.0, 1e7};
                     const TFGridFunction m1 = discretize(make_spreading(ChannelKind::separable_exponential, 1.0, 6.0, 6.0, 3), g, q);
                     const TFGridFunction m2 = discretize(make_spreading(ChannelKind::separable_exponential, 1.0, 6.0, 6.0, 11), g, q);
                     const WeylOperator L1(g, m1), L2(g, m2);
                     const WeylOperator L12 = composed_operator(g, m1, m2, o.twist);
                     double worst = 0.0;
                     for (int k = 0; k < 3; ++k) {
                         const SampledSignal f = random_noise(g, rng, 0.0, 2.0);
                         worst = std::max(worst, rel_dist(L12.apply(f), L1.apply(L2.apply(f))));
                     }
                     return at_most("max relative composition error", worst, 1e-6);
                 }});

    v.push_back({"channel.diagonal_energy_identity", [](const SuiteOptions&) {
                     CapacityParams p;
                     p.alpha = p.beta = 3.0;
                     p.T = 3.0;
                     p.W = 2.0;
                     const detail::CapacityCore core = detail::capacity_core(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), p);
                     const CapacityPlan& pl = core.plan;
                     const TightWindow tw = tight_window(pl.s, pl.a, pl.b, p.rho, pl.grid);
                     const GaborSystem tx = make_transmit_system(tw.window, pl.a, pl.b, p.rho, pl.s, pl.K, pl.L);
                     const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), pl.grid, p.quad);
                     const CMatrix G = core.A.gram();
                     double worst = 0.0;
                     for (std::size_t i = 0; i < core.A.tx_index.size(); ++i) {
                         const auto [k, l] = core.A.tx_index[i];
                         const double e = norm2(op.apply(atom(tx, k, l)));
                         const auto ii = static_cast<Eigen::Index>(i);
                         worst = std::max(worst, std::abs(G(ii, ii).real() - e) / e);
                     }
                     return at_most("max relative deviation", worst, 1e-6);
                 }});

    v.push_back({"capacity.gershgorin_majorization", [](const SuiteOptions&) {
                     CapacityParams p;
                     p.alpha = p.beta = 3.0;
                     p.T = 3.0;
                     p.W = 2.0;
                     const detail::CapacityCore core = detail::capacity_core(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 0), p);
                     const LogGap lg = gershgorin_log_gap(core.A);
                     const double signed_gap = lg.diag_sum - lg.eig_sum;
                     return Outcome{signed_gap >= -1e-12 && lg.gap <= lg.bound,
                                    "diag - eig = " + fmt(signed_gap) + ", bound " + fmt(lg.bound)};
                 }});

    v.push_back({"capacity.waterfill_kkt", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 6);
                     std::uniform_real_distribution<double> uN(0.1, 5.0), uP(0.1, 10.0);
                     std::uniform_int_distribution<int> uL(2, 8);
                     double worst = 0.0;
                     for (int t = 0; t < 100; ++t) {
                         std::vector<double> N(static_cast<std::size_t>(uL(rng)));
                         for (double& x : N) x = uN(rng);
                         const double P = uP(rng);
                         const Waterfill wf = waterfill(N, P);
                         double sum = 0.0;
                         for (std::size_t i = 0; i < N.size(); ++i) {
                             sum += wf.power[i];
                             worst = std::max(worst, wf.power[i] > 0.0 ? std::abs(wf.power[i] + N[i] - wf.level) : std::max(0.0, wf.level - N[i]));
                         }
                         worst = std::max(worst, std::abs(sum - P));
                     }
                     return at_most("max KKT residual", worst, 1e-10);
                 }});

    v.push_back({"capacity.waterfill_stability", [](const SuiteOptions& o) {
                     std::mt19937_64 rng(o.seed + 7);
                     std::uniform_real_distribution<double> uN(0.1, 5.0), uE(-0.3, 0.3), uP(0.1, 10.0);
                     std::uniform_int_distribution<int> uL(2, 8);
                     double worst = 0.0;
                     for (int t = 0; t < 100; ++t) {
                         const auto L = static_cast<std::size_t>(uL(rng));
                         std::vector<double> N(L), M(L);
                         for (std::size_t i = 0; i < L; ++i) {
                             N[i] = uN(rng);
                             M[i] = std::max(0.05, N[i] + uE(rng));
                         }
                         const WaterfillStability s = waterfill_stability(N, M, uP(rng));
                         worst = std::max(worst, s.bound > 0.0 ? s.max_alloc_dev / s.bound : 0.0);
                     }
                     return Outcome{worst <= 1.0, "max deviation / bound = " + fmt(worst) + " (must be <= 1)"};
                 }});

    v.push_back({"capacity.geometric_sum", [](const SuiteOptions&) {
                     const double r = std::max(geometric_sum_ratio(1.0, 1.0, 1.0), geometric_sum_ratio(1.0, 3.0, 0.7));
                     return Outcome{r <= 1.0, "max lhs / fitted bound = " + fmt(r) + " (must be <= 1)"};
                 }});

    v.push_back({"capacity.lti_target_redundancy", [](const SuiteOptions&) {
                     const auto gain = [](double w) { return lti_gain_sq(2.0, w); };
                     const double direct = lti_target(gain, 1.0, 1.5, 0.1, CapacityMode::csir, 1.0);
                     const double pulled = lti_target(gain, 1.0, 1.0, 0.1, CapacityMode::csir, 1.0) / 1.5;
                     return at_most("relative difference", std::abs(direct - pulled) / direct, 1e-12);
                 }});

    v.push_back({"capacity.identity_channel_equality", [](const SuiteOptions&) {
                     CapacityParams p;
                     p.T = 3.0 * p.rho;
                     p.W = p.rho;
                     p.eta2 = 0.25;
                     p.kappa = p.kappa_csit = 1.0;
                     const CapacityReport r = capacity_report(make_point_mass(0.0, 0.0), p);
                     const double d = std::max(std::abs(r.csir_exact - r.csir_symbol), std::abs(r.csit_exact - r.csit_symbol));
                     return at_most("max |exact - symbol| bits", d, 1e-6);
                 }});

    return v;
}

} // namespace ltvcap::validation
