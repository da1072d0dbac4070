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

#include "ltvcap/validation.hpp"

#include "catch_amalgamated.hpp"

using namespace ltvcap;

namespace {

constexpr double kRho = 1.5;
// Nyquist 20 Hz: room for the exponential spectral tail of the window; rho*a/dt = 60.
const TimeGrid kFine = TimeGrid::centered(2048, kRho / 60.0);

const TightWindow& fine_window() {
    static const TightWindow tw = tight_window(1.0, 1.0, 1.0, kRho, kFine);
    return tw;
}

GaborSystem fine_receive() {
    const SampledSignal& psi = fine_window().window;
    return make_covering_receive_system(psi, 1.0, 1.0, kRho, 1.0, support_radius(psi, 0.0, 1e-10), support_radius(fourier(psi), 0.0, 1e-10));
}

GaborSystem centered_transmit(const SampledSignal& psi, double s, double a, double rho, int R) {
    return GaborSystem{psi, Lattice{rho * a, rho / a, -R, R, -R, R}, rho, s, SystemKind::transmit_orthonormal};
}

} // namespace

TEST_CASE("transmit set is orthonormal over |k|,|l| <= 3", "[gabor][orthonormal]") {
    for (double s : {1.0, 4.0})
        for (double rho : {1.2, 1.5, 2.0}) {
            const double a = std::sqrt(s);
            const TightWindow tw = tight_window(s, a, 1.0 / a, rho);
            INFO("s = " << s << ", rho = " << rho);
            CHECK(gram_max_deviation(centered_transmit(tw.window, s, a, rho, 3)) <= 1e-6);
            CHECK(std::abs(norm2(tw.window) - 1.0) <= 1e-12);
        }
}

TEST_CASE("sparse lattice: window approaches the Gaussian", "[gabor][tight_window]") {
    const double rho = 4.0;
    const TightWindow tw = tight_window(1.0, 1.0, 1.0, rho);
    const SampledSignal g = gaussian_window(tw.window.grid, 1.0, 0.0);
    CHECK(norm(tw.window - g) <= 0.05);
    // Oracle: the frame operator of (g, a/rho, b/rho) acts on g almost as rho^2.
    const auto [K, L] = covering_ranges(g.grid, 1.0 / rho, 1.0 / rho);
    const FrameApplyResult Sg = frame_operator_apply(g, 1.0 / rho, 1.0 / rho, g, K - 4, L - 1);
    const double c = inner(Sg.signal, g).real();
    CHECK(std::abs(c / (rho * rho) - 1.0) <= 0.05);
    CHECK(norm((1.0 / c) * Sg.signal - g) <= 0.05);
}

TEST_CASE("window for scale s is the unitary dilation of the unit-scale window", "[gabor][tight_window]") {
    const TightWindow w1 = tight_window(1.0, 1.0, 1.0, kRho);
    for (double s : {0.25, 4.0}) {
        const double a = std::sqrt(s);
        const TightWindow ws = tight_window(s, a, 1.0 / a, kRho);
        // Default grids satisfy dt_s = sqrt(s) dt_1, so psi_s[i] = s^{-1/4} psi_1[i].
        REQUIRE(std::abs(ws.window.grid.dt - a * w1.window.grid.dt) <= 1e-15);
        CHECK((std::pow(s, 0.25) * ws.window.values - w1.window.values).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("tight window rejects the Balian-Low regime and non-critical steps", "[gabor][tight_window]") {
    CHECK_THROWS_WITH(tight_window(1.0, 1.0, 1.0, 0.9), Catch::Matchers::ContainsSubstring("Balian–Low regime"));
    CHECK_THROWS_WITH(tight_window(1.0, 1.0, 1.0, 1.0), Catch::Matchers::ContainsSubstring("Balian–Low regime"));
    CHECK_THROWS_AS(tight_window(1.0, 1.0, 2.0, 1.5), Error);
    try {
        (void)tight_window(1.0, 1.0, 1.0, 0.9);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
    }
}

TEST_CASE("receive frame is tight: frame operator is rho^2 times the identity", "[gabor][frame]") {
    std::mt19937_64 rng(11);
    const SampledSignal& psi = fine_window().window;
    const auto [K, L] = covering_ranges(kFine, 1.0 / kRho, 1.0 / kRho);
    for (int q = 0; q < 3; ++q) {
        const SampledSignal f = validation::random_atoms(kFine, rng, 4, 4.0, 2.0);
        const FrameApplyResult Sf = frame_operator_apply(psi, 1.0 / kRho, 1.0 / kRho, f, K - 12, L - 12);
        CHECK(validation::rel_dist((1.0 / (kRho * kRho)) * Sf.signal, f) <= 1e-6);
        CHECK(Sf.truncation_ok);
    }
}

TEST_CASE("frame operator is positive and linear", "[gabor][frame]") {
    std::mt19937_64 rng(12);
    const TimeGrid g = TimeGrid::centered(256, 1.0 / 16.0);
    const SampledSignal w = gaussian_window(g, 1.0, 0.0);
    const auto [K, L] = covering_ranges(g, 0.5, 0.5);
    const auto S = [&](const SampledSignal& f) { return frame_operator_apply(w, 0.5, 0.5, f, K, L).signal; };
    for (int q = 0; q < 5; ++q) {
        const SampledSignal f = validation::random_noise(g, rng, 0.0, 3.0), h = validation::random_noise(g, rng, 1.0, 2.0);
        CHECK(inner(S(f), f).real() >= 0.0);
        const cd al{0.3, -1.2}, be{2.0, 0.5};
        CHECK(norm(S(al * f + be * h) - (al * S(f) + be * S(h))) <= 1e-10 * norm(S(f)));
    }
}

TEST_CASE("analysis of a transmit atom is the indicator of its index", "[gabor][analysis]") {
    const TightWindow tw = tight_window(1.0, 1.0, 1.0, kRho);
    const GaborSystem tx = centered_transmit(tw.window, 1.0, 1.0, kRho, 3);
    for (const auto& [k0, l0] : {std::pair{0, 0}, std::pair{2, -1}, std::pair{-3, 3}}) {
        const CMatrix c = analysis_coefficients(atom(tx, k0, l0), tx);
        CMatrix e = CMatrix::Zero(c.rows(), c.cols());
        e(k0 + 3, l0 + 3) = 1.0;
        CHECK((c - e).cwiseAbs().maxCoeff() <= 1e-6);
    }
    CHECK(analysis_coefficients(SampledSignal(tw.window.grid), tx).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tight receive frame reconstructs signals", "[gabor][analysis][synthesis]") {
    std::mt19937_64 rng(13);
    const GaborSystem rx = fine_receive();
    for (int q = 0; q < 10; ++q) {
        const SampledSignal f = validation::random_atoms(kFine, rng, 4, 4.0, 2.0);
        CHECK(validation::rel_dist(synthesis(analysis_coefficients(f, rx), rx), f) <= 1e-6);
    }
}

TEST_CASE("tight receive frame has unit frame bounds on random signals", "[gabor][frame]") {
    std::mt19937_64 rng(14);
    const GaborSystem rx = fine_receive();
    double worst = 0.0;
    for (int q = 0; q < 100; ++q) {
        const SampledSignal f = validation::random_atoms(kFine, rng, 3, 4.0, 2.0);
        worst = std::max(worst, std::abs(analysis_coefficients(f, rx).squaredNorm() - norm2(f)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("synthesis: unit coefficient, Parseval and adjointness", "[gabor][synthesis]") {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> n01;
    const TightWindow tw = tight_window(1.0, 1.0, 1.0, kRho);
    const GaborSystem tx = centered_transmit(tw.window, 1.0, 1.0, kRho, 3);
    CMatrix e = CMatrix::Zero(7, 7);
    e(3, 3) = 1.0;
    CHECK(norm(synthesis(e, tx) - tw.window) <= 1e-14);
    for (int q = 0; q < 5; ++q) {
        CMatrix c(7, 7);
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = cd{n01(rng), n01(rng)};
        const SampledSignal f = validation::random_atoms(tw.window.grid, rng);
        const SampledSignal Sc = synthesis(c, tx);
        CHECK(std::abs(norm2(Sc) - c.squaredNorm()) <= 1e-6 * c.squaredNorm());
        const cd lhs = inner(Sc, f);
        const cd rhs = (c.array() * analysis_coefficients(f, tx).array().conjugate()).sum();
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("denser-than-critical limit trades decay for conditioning", "[gabor][balian_low]") {
    double prev_rate = std::numeric_limits<double>::infinity(), prev_cond = 0.0;
    for (double rho : {2.0, 1.5, 1.2, 1.05}) {
        const TightWindow tw = tight_window(1.0, 1.0, 1.0, rho);
        const double rate = decay_envelope_fit(tw.window).rate;
        INFO("rho = " << rho << ", rate = " << rate << ", cond = " << tw.condition_number);
        CHECK(rate <= prev_rate);
        CHECK(tw.condition_number >= prev_cond);
        prev_rate = rate;
        prev_cond = tw.condition_number;
    }
}

TEST_CASE("redundancies: receive rho^2, transmit 1/rho^2", "[gabor][lattice]") {
    const TightWindow tw = tight_window(1.0, 1.0, 1.0, kRho);
    const GaborSystem tx = make_transmit_system(tw.window, 1.0, 1.0, kRho, 1.0, 4, 3);
    const GaborSystem rx = make_receive_system(tw.window, 1.0, 1.0, kRho, 1.0, -5, 5, -5, 5);
    const double red_tx = 1.0 / (tx.lattice.a * tx.lattice.b), red_rx = 1.0 / (rx.lattice.a * rx.lattice.b);
    CHECK(std::abs(red_rx - kRho * kRho) <= 1e-12);
    CHECK(std::abs(red_tx - 1.0 / (kRho * kRho)) <= 1e-12);
    // Counting points in a box of side 60 confirms the densities.
    const auto count = [](double step) { return 2.0 * std::floor(30.0 / step) + 1.0; };
    const double box = 60.0 * 60.0;
    CHECK(std::abs(count(rx.lattice.a) * count(rx.lattice.b) / box - red_rx) <= 0.1 * red_rx);
    CHECK(std::abs(count(tx.lattice.a) * count(tx.lattice.b) / box - red_tx) <= 0.1 * red_tx);
    CHECK(tx.lattice.size() == 5u * 7u);
}

TEST_CASE("inverse square root of the frame operator is consistent", "[gabor][frame]") {
    std::mt19937_64 rng(16);
    const long q = 60;
    const auto g = [](double t) { return gaussian_value(1.0, t); };
    const WalnutFrameOperator S(kFine, g, 7.0, 1.0 / kRho, q);
    const SampledSignal gs = gaussian_window(kFine, 1.0, 0.0);
    const auto [K, L] = covering_ranges(kFine, 1.0 / kRho, 1.0 / kRho);
    for (int k = 0; k < 3; ++k) {
        const SampledSignal f = validation::random_atoms(kFine, rng, 4, 4.0, 2.0);
        const SampledSignal back = S.apply_power(S.apply_power(S.apply_power(f, 1.0), -0.5), -0.5);
        CHECK(validation::rel_dist(back, f) <= 1e-8);
        // Independent route: direct lattice sum over time-frequency shifts of g.
        const SampledSignal direct = frame_operator_apply(gs, 1.0 / kRho, 1.0 / kRho, f, K - 12, L - 12).signal;
        CHECK(validation::rel_dist(S.apply_power(f, 1.0), direct) <= 1e-8);
    }
    CHECK(S.condition_number() >= 1.0);
}
