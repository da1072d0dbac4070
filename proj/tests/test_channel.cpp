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
using Catch::Matchers::ContainsSubstring;

namespace {

const TimeGrid kGrid = TimeGrid::centered(256, 1.0 / 16.0);
// Doppler shift representable on kGrid: 2 / (P dt) with P = 64.
const double kOmega0 = 2.0 / (64.0 * kGrid.dt);
const double kX0 = 8.0 * kGrid.dt;

// Indices i whose shifted sample i + shift stays on the grid.
bool interior(long i, long shift, std::size_t n) { return i + shift >= 0 && i + shift < static_cast<long>(n); }

validation::CheckResult run_named(const std::string& name, Twist twist = Twist::standard) {
    for (const auto& c : validation::suite())
        if (c.name == name) return validation::run_check(c, validation::SuiteOptions{1, twist});
    FAIL("no check named " << name);
    return {};
}

} // namespace

TEST_CASE("separable spreading function evaluates the decaying density", "[channel][spreading]") {
    const SpreadingFunction sf = make_spreading(ChannelKind::separable_exponential, 2.0, 3.0, 5.0, 0);
    for (const auto& [w, x] : {std::pair{0.0, 0.0}, std::pair{0.4, -0.2}, std::pair{-1.0, 1.5}}) {
        const cd v = sf(w, x);
        CHECK(std::abs(v - cd{2.0 * std::exp(-5.0 * std::abs(w) - 3.0 * std::abs(x)), 0.0}) <= 1e-15);
    }
    const SpreadingFunction ph = make_spreading(ChannelKind::separable_exponential, 2.0, 3.0, 5.0, 42);
    CHECK_FALSE(ph.phase.trivial());
    for (double w : {-0.7, 0.1, 0.9})
        for (double x : {-0.3, 0.0, 0.6}) CHECK(std::abs(std::abs(ph(w, x)) - ph.envelope(w, x)) <= 1e-14);
    // Seeded phases are reproducible.
    const PhaseFactor p1 = PhaseFactor::from_seed(42), p2 = PhaseFactor::from_seed(42);
    CHECK(p1.tau0 == p2.tau0);
    CHECK(p1.chirp == p2.chirp);
    CHECK(std::abs(p1.tau0) < 1.0);
    CHECK(std::abs(p1.nu0) < 1.0);
}

TEST_CASE("time-invariant family integrates over Doppler to the delay profile", "[channel][spreading]") {
    for (double beta : {2.0, 8.0, 32.0}) {
        const SpreadingFunction sf = make_spreading(ChannelKind::lti_limit_family, 1.5, 2.0, beta, 0);
        for (double x : {0.0, 0.3, -1.0}) {
            const double h = 1e-3 / beta, span = 40.0 / beta;
            double s = 0.0;
            for (double w = -span; w <= span + 1e-12; w += h) s += sf(w, x).real();
            s *= h;
            INFO("beta = " << beta << ", x = " << x);
            CHECK(std::abs(s - 1.5 * std::exp(-2.0 * std::abs(x))) <= 1e-5);
        }
    }
}

TEST_CASE("spreading parameters are validated", "[channel][spreading]") {
    CHECK_THROWS_WITH(make_spreading(ChannelKind::separable_exponential, 1.0, 0.5, 2.0, 0), ContainsSubstring("alpha must be >= 1"));
    CHECK_THROWS_WITH(make_spreading(ChannelKind::separable_exponential, 1.0, 2.0, 0.9, 0), ContainsSubstring("beta must be >= 1"));
    CHECK_THROWS_WITH(make_spreading(ChannelKind::separable_exponential, -1.0, 2.0, 2.0, 0), ContainsSubstring("amplitude"));
    CHECK_THROWS_AS(make_spreading(ChannelKind::point_mass, 1.0, 2.0, 2.0, 0), Error);
    TFGridFunction lopsided(Axis{0.0, 0.1, 3}, Axis::symmetric(0.1, 1));
    CHECK_THROWS_WITH(make_custom_spreading(lopsided), ContainsSubstring("symmetric"));
}

TEST_CASE("lattice measure carries the mass of the density", "[channel][discretize]") {
    for (const auto& [al, be] : {std::pair{2.0, 2.0}, std::pair{4.0, 1.0}, std::pair{1.0, 6.0}}) {
        const SpreadingFunction sf = make_spreading(ChannelKind::separable_exponential, 1.0, al, be, 0);
        const TimeGrid g = TimeGrid::centered(1024, 1.0 / 64.0);
        const TFGridFunction mu = discretize(sf, g, QuadratureOptions{1e-10, 8.0, 1e7});
        const double mass = mu.values.real().sum();
        INFO("alpha = " << al << ", beta = " << be);
        CHECK(std::abs(mass - 4.0 / (al * be)) <= 1e-8 * 4.0 / (al * be));
        CHECK(mu.x_axis.count % 2 == 1);
        CHECK(mu.w_axis.count % 2 == 1);
        // Lattice is locked to the grid.
        CHECK(std::abs(std::remainder(mu.x_axis.step / g.dt, 1.0)) <= 1e-9);
        CHECK(std::abs(std::remainder(2.0 / (mu.w_axis.step * g.dt), 1.0)) <= 1e-9);
    }
}

TEST_CASE("discretization rejects budgets and bandwidths it cannot honour", "[channel][discretize]") {
    const SpreadingFunction sf = make_spreading(ChannelKind::separable_exponential, 1.0, 2.0, 2.0, 0);
    CHECK_THROWS_WITH(discretize(sf, kGrid, QuadratureOptions{1e-10, 8.0, 100.0}), ContainsSubstring("quadrature budget exceeded"));
    const SpreadingFunction wide = make_spreading(ChannelKind::separable_exponential, 1.0, 1.0, 1.0, 0);
    CHECK_THROWS_WITH(discretize(wide, TimeGrid::centered(64, 0.5)), ContainsSubstring("Doppler spread exceeds the grid bandwidth"));
    CHECK_THROWS_WITH(discretize(make_point_mass(0.0, 0.3 * kGrid.dt), kGrid), ContainsSubstring("multiple of the grid step"));
    CHECK_THROWS_WITH(make_weyl_operator(make_point_mass(0.37, 0.0), kGrid), ContainsSubstring("2/(P dt)"));
}

TEST_CASE("point masses act as identity, modulation and shift", "[channel][point_mass]") {
    std::mt19937_64 rng(21);
    const SampledSignal f = validation::random_noise(kGrid, rng, 0.0, 2.0);
    CHECK(norm(apply_weyl(make_point_mass(0.0, 0.0), f) - f) == 0.0);

    const SampledSignal m = apply_weyl(make_point_mass(kOmega0, 0.0), f);
    const SampledSignal s = apply_weyl(make_point_mass(0.0, kX0), f);
    const SampledSignal ms = apply_weyl(make_point_mass(kOmega0, kX0, cd{0.0, 2.0}), f);
    const long shift = 8;
    double em = 0.0, es = 0.0, ems = 0.0;
    for (long i = 0; i < static_cast<long>(kGrid.n); ++i) {
        const double t = kGrid.at(static_cast<std::size_t>(i));
        em = std::max(em, std::abs(m.values[i] - std::polar(1.0, kTwoPi * kOmega0 * t) * f.values[i]));
        if (!interior(i, shift, kGrid.n)) continue;
        es = std::max(es, std::abs(s.values[i] - f.values[i + shift]));
        const cd want = cd{0.0, 2.0} * std::polar(1.0, kTwoPi * kOmega0 * (t + kX0 / 2.0)) * f.values[i + shift];
        ems = std::max(ems, std::abs(ms.values[i] - want));
    }
    CHECK(em <= 1e-12);
    CHECK(es <= 1e-15);
    CHECK(ems <= 1e-12);
}

TEST_CASE("shift and modulation commute up to a phase", "[channel][point_mass]") {
    std::mt19937_64 rng(22);
    const SampledSignal f = validation::random_noise(kGrid, rng, 0.0, 2.0);
    const WeylOperator M = make_weyl_operator(make_point_mass(kOmega0, 0.0), kGrid);
    const WeylOperator T = make_weyl_operator(make_point_mass(0.0, kX0), kGrid);
    const SampledSignal mt = M.apply(T.apply(f)), tm = T.apply(M.apply(f));
    const cd phase = std::polar(1.0, kTwoPi * kOmega0 * kX0);
    double worst = 0.0;
    for (long i = 0; i < static_cast<long>(kGrid.n); ++i)
        if (interior(i, 8, kGrid.n)) worst = std::max(worst, std::abs(tm.values[i] - phase * mt.values[i]));
    CHECK(worst <= 1e-12);
    CHECK(std::abs(phase - 1.0) > 0.5); // the operators do not commute
}

TEST_CASE("symbol of a time-frequency shift is unimodular", "[channel][symbol]") {
    const Axis t = Axis::symmetric(kGrid.dt / 2.0, 20), nu = Axis::symmetric(0.25, 6);
    for (const SpreadingFunction& sf : {make_point_mass(0.0, 0.0), make_point_mass(kOmega0, 0.0), make_point_mass(kOmega0, kX0)}) {
        const TFGridFunction sig = make_weyl_operator(sf, kGrid).weyl_symbol(t, nu);
        CHECK((sig.values.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("symbol of the phase-free channel is a product of Lorentzians", "[channel][symbol]") {
    const double C = 1.0, al = 3.0, be = 2.0;
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
    const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, C, al, be, 0), g);
    const Axis t = Axis::symmetric(0.25, 4), nu = Axis::symmetric(0.25, 4);
    const TFGridFunction sig = op.weyl_symbol(t, nu);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.count; ++i)
        for (std::size_t j = 0; j < nu.count; ++j) {
            const double tt = t.at(i), vv = nu.at(j);
            const double want = C * (2.0 * be / (be * be + 4.0 * kPi * kPi * tt * tt)) * (2.0 * al / (al * al + 4.0 * kPi * kPi * vv * vv));
            worst = std::max(worst, std::abs(sig(j, i) - want) / (4.0 * C / (al * be)));
        }
    CHECK(worst <= 1e-3);
}

TEST_CASE("operator pairs with the cross-Wigner distribution through its symbol", "[channel][pairing]") {
    std::mt19937_64 rng(23);
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
    for (std::uint64_t seed : {0u, 5u}) {
        const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, seed), g, QuadratureOptions{1e-8, 8.0, 1e7});
        CHECK(validation::weyl_wigner_pairing_error(op, rng, 2) <= 1e-6);
    }
}

TEST_CASE("matrix-element magnitudes follow from spreading weights and the ambiguity function", "[channel][pairing]") {
    std::mt19937_64 rng(25);
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
    for (std::uint64_t seed : {0u, 7u}) {
        const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, seed), g, QuadratureOptions{1e-8, 8.0, 1e7});
        CHECK(validation::weyl_ambiguity_magnitude_error(op, rng, 2, false) <= 1e-6);
        CHECK(validation::weyl_ambiguity_magnitude_error(op, rng, 2, true) <= 1e-6);
    }
    // Identity channel: the magnitude reduces to |<pi(z_f - z_g) f, g>|.
    CHECK(validation::weyl_ambiguity_magnitude_error(make_weyl_operator(make_point_mass(0.0, 0.0), g), rng, 3, false) <= 1e-12);
}

TEST_CASE("reflected conjugate density gives the adjoint operator", "[channel][adjoint]") {
    std::mt19937_64 rng(24);
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
    const TFGridFunction mu = discretize(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 9), g);
    const WeylOperator L(g, mu), La(g, adjoint_spreading(mu));
    for (int q = 0; q < 3; ++q) {
        const SampledSignal f = validation::random_atoms(g, rng), h = validation::random_atoms(g, rng);
        const cd lhs = inner(L.apply(f), h), rhs = inner(f, La.apply(h));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("composition, reality and unitary checks pass and detect a twist fault", "[channel][twist]") {
    for (const char* name : {"channel.symbol_S_real", "channel.symbol_S_unitary_channels", "channel.twisted_composition"}) {
        const validation::CheckResult ok = run_named(name);
        INFO(name << ": " << ok.detail);
        CHECK(ok.passed);
    }
    for (const char* name : {"channel.symbol_S_real", "channel.twisted_composition"}) {
        const validation::CheckResult bad = run_named(name, Twist::flipped);
        INFO(name << " with fault: " << bad.detail);
        CHECK_FALSE(bad.passed);
    }
}

TEST_CASE("symbol of L*L for the identity is one and the real part is enforced", "[channel][symbol]") {
    const auto [t, nu] = symbol_axes(1.0, 1.0, 1.5, 3, 2);
    const TFGridFunction S = symbol_S(make_weyl_operator(make_point_mass(0.0, 0.0), kGrid), t, nu);
    CHECK((S.values.array() - 1.0).abs().maxCoeff() == 0.0);
    const TimeGrid g = TimeGrid::centered(512, 1.0 / 32.0);
    const WeylOperator op = make_weyl_operator(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), g);
    CHECK_THROWS_WITH(symbol_S(op, t, nu, Twist::flipped), ContainsSubstring("imaginary residue"));
    const TFGridFunction Sr = symbol_S(op, t, nu);
    CHECK(Sr.values.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lattice samples of the symbol are clamped and bounds-checked", "[channel][symbol]") {
    const auto [t, nu] = symbol_axes(1.0, 1.0, 1.5, 2, 1);
    TFGridFunction S(t, nu);
    S.values.setConstant(cd{-1.0, 0.0});
    CHECK(sample_S_plus(S, 1.0, 1.0, 1.5, 2, 1).maxCoeff() == 0.0);
    S.values.setConstant(cd{2.0, 0.0});
    const Eigen::MatrixXd p = sample_S_plus(S, 1.0, 1.0, 1.5, 2, 1);
    CHECK(p.rows() == 3);
    CHECK(p.cols() == 3);
    CHECK((p.array() - 2.0).abs().maxCoeff() <= 1e-15);
    CHECK_THROWS_WITH(sample_S_plus(S, 1.0, 1.0, 1.5, 4, 1), ContainsSubstring("(k=4, l=-1)"));
}

TEST_CASE("channel matrix Gram is positive semidefinite with the expected diagonal", "[channel][matrix]") {
    CHECK(run_named("channel.diagonal_energy_identity").passed);
    CapacityParams p;
    p.alpha = p.beta = 3.0;
    p.T = 3.0;
    p.W = 2.0;
    const detail::CapacityCore core = detail::capacity_core(make_spreading(ChannelKind::separable_exponential, 1.0, 3.0, 3.0, 7), p);
    const CMatrix G = core.A.gram();
    CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * G.cwiseAbs().maxCoeff());
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12 * es.eigenvalues().maxCoeff());
    CHECK(core.A.tx_index.size() == static_cast<std::size_t>((core.plan.K + 1) * (2 * core.plan.L + 1)));
}

TEST_CASE("faster spreading decay diagonalizes the channel", "[channel][matrix][slow]") {
    double prev_off = 1e300, prev_dev = 1e300, prev_res = 1e300;
    for (double ab : {2.0, 4.0, 8.0}) {
        CapacityParams p;
        p.alpha = p.beta = ab;
        p.T = 3.0;
        p.W = 2.0;
        const SpreadingFunction sf = make_spreading(ChannelKind::separable_exponential, 1.0, ab, ab, 0);
        const detail::CapacityCore core = detail::capacity_core(sf, p);
        const CapacityPlan& pl = core.plan;
        const CMatrix G = core.A.gram();
        double diag = 0.0, off = 0.0, dev = 0.0;
        for (Eigen::Index i = 0; i < G.rows(); ++i) {
            diag = std::max(diag, G(i, i).real());
            const auto [k, l] = core.A.tx_index[static_cast<std::size_t>(i)];
            dev = std::max(dev, std::abs(G(i, i).real() - core.samples(k, l + pl.L)));
            for (Eigen::Index j = 0; j < G.cols(); ++j)
                if (i != j) off = std::max(off, std::abs(G(i, j)));
        }
        off /= diag;
        dev /= core.samples.maxCoeff();
        // Eigen-residual of the atom at the symbol peak under L*L.
        const TightWindow tw = tight_window(pl.s, pl.a, pl.b, p.rho, pl.grid);
        const GaborSystem tx = make_transmit_system(tw.window, pl.a, pl.b, p.rho, pl.s, pl.K, pl.L);
        const TFGridFunction mu = discretize(sf, pl.grid, p.quad);
        const WeylOperator L(pl.grid, mu), La(pl.grid, adjoint_spreading(mu));
        const SampledSignal x = atom(tx, 0, 0), y = La.apply(L.apply(x));
        const double res = norm(y - core.samples(0, pl.L) * x) / norm(y);
        INFO("alpha = beta = " << ab << ": off " << off << ", diag deviation " << dev << ", residual " << res);
        CHECK(off < prev_off);
        CHECK(dev < prev_dev);
        CHECK(res < prev_res);
        if (ab == 8.0) CHECK(res <= 0.25);
        prev_off = off;
        prev_dev = dev;
        prev_res = res;
    }
}
