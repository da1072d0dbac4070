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

const TimeGrid kGrid = TimeGrid::centered(1024, 1.0 / 32.0);

// Trapezoid rule for an analytic integrand on [-R, R]; exponentially accurate
// for the Gaussian integrands used here.
template <class F>
cd quad(F&& f, double R = 8.0, double h = 1e-3) {
    cd acc{0.0, 0.0};
    const long n = static_cast<long>(std::llround(R / h));
    for (long i = -n; i <= n; ++i) acc += f(static_cast<double>(i) * h) * ((i == -n || i == n) ? 0.5 : 1.0);
    return acc * h;
}

double unit_gaussian(double t) { return gaussian_value(1.0, t); }

std::size_t index_of(const Axis& ax, double v) { return static_cast<std::size_t>(std::llround((v - ax.start) / ax.step)); }

} // namespace

TEST_CASE("translate by zero is the identity", "[tfcore][translate]") {
    std::mt19937_64 rng(1);
    const SampledSignal f = validation::random_atoms(kGrid, rng);
    CHECK(translate(f, 0.0).values == f.values);
}

TEST_CASE("translate is a group action with exact inverse", "[tfcore][translate]") {
    std::mt19937_64 rng(2);
    const SampledSignal f = validation::random_atoms(kGrid, rng);
    for (double x : {0.37, -1.234, 5.0 * kGrid.dt}) {
        CHECK(norm(translate(translate(f, x), -x) - f) <= 1e-10);
        CHECK(std::abs(norm2(translate(f, x)) - norm2(f)) <= 1e-12);
    }
}

TEST_CASE("translated unit Gaussian overlap equals exp(-pi/2)", "[tfcore][translate]") {
    const SampledSignal g = gaussian_window(kGrid, 1.0, 0.0);
    const cd got = inner(translate(g, 1.0), g);
    const cd oracle = quad([](double t) { return cd{unit_gaussian(t - 1.0) * unit_gaussian(t), 0.0}; });
    CHECK(std::abs(oracle - std::exp(-kPi / 2.0)) <= 1e-12);
    CHECK(std::abs(got - oracle) <= 1e-10);
}

TEST_CASE("modulate by zero is the identity and preserves magnitude", "[tfcore][modulate]") {
    std::mt19937_64 rng(3);
    const SampledSignal f = validation::random_noise(kGrid, rng, 0.0, 3.0);
    CHECK(modulate(f, 0.0).values == f.values);
    const SampledSignal m = modulate(f, 2.7);
    CHECK((m.values.cwiseAbs() - f.values.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(std::abs(norm2(m) - norm2(f)) <= 1e-14);
}

TEST_CASE("translation and modulation commute up to exp(-2 pi i x w)", "[tfcore][modulate]") {
    std::mt19937_64 rng(4);
    const SampledSignal f = validation::random_atoms(kGrid, rng);
    for (const auto& [x, w] : {std::pair{0.37, 1.3}, std::pair{-2.0, 0.75}, std::pair{1.1, -2.2}}) {
        const SampledSignal lhs = translate(modulate(f, w), x);
        const SampledSignal rhs = std::polar(1.0, -kTwoPi * x * w) * modulate(translate(f, x), w);
        CHECK(norm(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("Fourier transform is unitary", "[tfcore][fourier]") {
    std::mt19937_64 rng(5);
    for (int q = 0; q < 20; ++q) {
        const SampledSignal f = validation::random_noise(kGrid, rng, 0.3 * q - 3.0, 4.0);
        CHECK(std::abs(norm2(fourier(f)) - norm2(f)) <= 1e-12 * norm2(f));
        CHECK(norm(inverse_fourier(fourier(f), kGrid) - f) <= 1e-12);
    }
}

TEST_CASE("unit Gaussian is self-dual and Gaussian scales invert", "[tfcore][fourier][gaussian]") {
    for (double s : {0.5, 1.0, 4.0}) {
        const SampledSignal gh = fourier(gaussian_window(kGrid, s));
        const SampledSignal ref = gaussian_window(gh.grid, 1.0 / s);
        CHECK((gh.values - ref.values).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("Fourier exchanges modulation and translation", "[tfcore][fourier]") {
    std::mt19937_64 rng(6);
    const SampledSignal f = validation::random_atoms(kGrid, rng);
    for (double w : {0.7, -1.9}) CHECK(norm(fourier(modulate(f, w)) - translate(fourier(f), w)) <= 1e-9);
}

TEST_CASE("Gaussian windows have unit norm and variance linear in s", "[tfcore][gaussian]") {
    const auto variance = [](const SampledSignal& g) {
        double v = 0.0;
        for (std::size_t i = 0; i < g.grid.n; ++i) v += g.grid.at(i) * g.grid.at(i) * std::norm(g[i]) * g.grid.dt;
        return v;
    };
    for (double s : {0.5, 1.0, 4.0}) CHECK(std::abs(norm2(gaussian_window(kGrid, s)) - 1.0) <= 1e-14);
    const double ratio = variance(gaussian_window(kGrid, 4.0)) / variance(gaussian_window(kGrid, 1.0));
    CHECK(std::abs(ratio - 4.0) <= 1e-6);
    // Closed form: Var_t(g_s) = s / (4 pi).
    CHECK(std::abs(variance(gaussian_window(kGrid, 1.0)) - 1.0 / (4.0 * kPi)) <= 1e-12);
}

TEST_CASE("Gaussian window rejects truncating or undersampling grids", "[tfcore][gaussian]") {
    CHECK_THROWS_AS(gaussian_window(TimeGrid::centered(64, 1.0 / 32.0), 1.0), Error);
    CHECK_THROWS_AS(gaussian_window(TimeGrid::centered(64, 1.0), 0.05), Error);
    CHECK_THROWS_AS(gaussian_window(kGrid, -1.0), Error);
}

TEST_CASE("ambiguity at the origin is the energy and is bounded by Cauchy-Schwarz", "[tfcore][ambiguity]") {
    std::mt19937_64 rng(7);
    const TimeGrid g = TimeGrid::centered(256, 1.0 / 16.0);
    const SampledSignal f = validation::random_atoms(g, rng, 3, 1.0, 1.5), h = validation::random_atoms(g, rng, 3, 1.0, 1.5);
    const TFGridFunction A = cross_ambiguity(f, f);
    const std::size_t x0 = index_of(A.x_axis, 0.0), w0 = index_of(A.w_axis, 0.0);
    CHECK(std::abs(A(w0, x0) - norm2(f)) <= 1e-12);
    const TFGridFunction B = cross_ambiguity(f, h);
    CHECK(B.values.cwiseAbs().maxCoeff() <= norm(f) * norm(h) * (1.0 + 1e-12));
}

TEST_CASE("unit Gaussian ambiguity matches the closed form and direct quadrature", "[tfcore][ambiguity]") {
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 16.0);
    const SampledSignal g1 = gaussian_window(g, 1.0, 0.0);
    const TFGridFunction A = cross_ambiguity(g1, g1);
    double worst = 0.0;
    for (std::size_t wi = 0; wi < A.w_axis.count; ++wi)
        for (std::size_t xi = 0; xi < A.x_axis.count; ++xi) {
            const double x = A.x_axis.at(xi), w = A.w_axis.at(wi);
            worst = std::max(worst, std::abs(std::abs(A(wi, xi)) - std::exp(-kPi * (x * x + w * w) / 2.0)));
        }
    CHECK(worst <= 1e-7);
    for (const auto& [x, w] : {std::pair{0.5, 0.25}, std::pair{-1.0, 0.75}, std::pair{1.5, -0.5}}) {
        const cd oracle = quad([x = x, w = w](double t) {
            return unit_gaussian(t + x / 2.0) * unit_gaussian(t - x / 2.0) * std::polar(1.0, -kTwoPi * t * w);
        });
        CHECK(std::abs(A(index_of(A.w_axis, w), index_of(A.x_axis, x)) - oracle) <= 1e-7);
    }
}

TEST_CASE("ambiguity magnitude is covariant under time-frequency shifts", "[tfcore][ambiguity]") {
    std::mt19937_64 rng(8);
    const TimeGrid g = TimeGrid::centered(256, 1.0 / 16.0);
    const SampledSignal f = validation::random_atoms(g, rng, 3, 1.0, 1.5);
    for (const auto& [k, m] : {std::pair{5, 3}, std::pair{-7, 10}}) {
        const SampledSignal h = modulate(translate(f, k * g.dt), m / g.span());
        const CMatrix a = cross_ambiguity(f, f).values, b = cross_ambiguity(h, h).values;
        CHECK((a.cwiseAbs() - b.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("Wigner distribution integrates to the energy and is real", "[tfcore][wigner]") {
    const TightWindow tw = tight_window(1.0, 1.0, 1.0, 1.5);
    const TFGridFunction W = cross_wigner(tw.window, tw.window);
    const cd total = W.values.sum() * W.x_axis.step * W.w_axis.step;
    CHECK(std::abs(total - norm2(tw.window)) <= 1e-10);
    CHECK(W.values.imag().cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("unit Gaussian Wigner matches direct quadrature and 2 exp(-2 pi (x^2 + w^2))", "[tfcore][wigner]") {
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 16.0);
    const SampledSignal g1 = gaussian_window(g, 1.0, 0.0);
    const TFGridFunction W = cross_wigner(g1, g1);
    for (const auto& [x, w] : {std::pair{0.0, 0.0}, std::pair{0.25, 0.5}, std::pair{-0.5, -0.25}, std::pair{1.0, 0.125}}) {
        const cd oracle = quad([x = x, w = w](double t) {
            return unit_gaussian(x + t / 2.0) * unit_gaussian(x - t / 2.0) * std::polar(1.0, -kTwoPi * t * w);
        });
        const cd got = W(index_of(W.w_axis, w), index_of(W.x_axis, x));
        CHECK(std::abs(got - oracle) <= 1e-7);
        CHECK(std::abs(oracle - 2.0 * std::exp(-2.0 * kPi * (x * x + w * w))) <= 1e-12);
    }
}

TEST_CASE("Moyal identity links Wigner distributions and inner products", "[tfcore][wigner]") {
    std::mt19937_64 rng(9);
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 16.0);
    for (int q = 0; q < 5; ++q) {
        const SampledSignal f = validation::random_atoms(g, rng), h = validation::random_atoms(g, rng);
        const double lhs = grid_inner(cross_wigner(f, f), cross_wigner(h, h)).real();
        CHECK(std::abs(lhs - std::norm(inner(f, h))) <= 1e-8);
    }
}

TEST_CASE("decay fit recovers an exact exponential rate", "[tfcore][decay]") {
    SampledSignal f(kGrid);
    for (std::size_t i = 0; i < kGrid.n; ++i) f.values[static_cast<Eigen::Index>(i)] = std::exp(-3.0 * std::abs(kGrid.at(i)));
    const DecayFit fit = decay_envelope_fit(f);
    CHECK(std::abs(fit.rate - 3.0) <= 0.02 * 3.0);
    for (std::size_t i = 0; i < kGrid.n; ++i) CHECK(std::abs(f[i]) <= fit.amplitude * std::exp(-fit.rate * std::abs(kGrid.at(i))) * (1 + 1e-12));
}

TEST_CASE("Gaussian decay beats every exponential: fitted rate grows with the fit window", "[tfcore][decay]") {
    const SampledSignal g = gaussian_window(kGrid, 1.0);
    double prev = 0.0;
    for (double floor : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
        const double rate = decay_envelope_fit(g, DecayFitOptions{floor, 1e-2}).rate;
        CHECK(rate > prev);
        prev = rate;
    }
}

TEST_CASE("orthonormalized window decays at least at half the Gaussian-scale rate", "[tfcore][decay]") {
    for (double s : {1.0, 4.0}) {
        const double a = std::sqrt(s);
        const TightWindow tw = tight_window(s, a, 1.0 / a, 1.5);
        CHECK(decay_envelope_fit(tw.window).rate >= 0.5 * kPi / s);
    }
}

TEST_CASE("decay fit rejects signals without a tail", "[tfcore][decay]") {
    SampledSignal f(kGrid);
    f.values.setConstant(1.0);
    CHECK_THROWS_WITH(decay_envelope_fit(f), Catch::Matchers::ContainsSubstring("insufficient tail"));
}

TEST_CASE("ambiguity of the orthonormalized window obeys the fitted exponential envelope", "[tfcore][ambiguity]") {
    for (double rho : {1.2, 1.5, 2.0}) {
        const TightWindow tw = tight_window(1.0, 1.0, 1.0, rho);
        CHECK(validation::wa_envelope_ratio(tw.window) <= 1.0);
    }
}
