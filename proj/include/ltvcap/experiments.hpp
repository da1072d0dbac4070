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

// Config-driven experiment runners behind the command line tool. Every
// config is validated in full before any computation starts, and every
// validation message names the offending key.

#pragma once

#include "ltvcap/io.hpp"
#include "ltvcap/validation.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ltvcap::cli {

using io::Json;

/// Flags shared by every subcommand. Set flags override config values.
struct RunOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_dt;
    bool force = false;
};

inline Json load_config(const std::optional<std::string>& path) {
    if (!path) return Json::object();
    std::ifstream in(*path);
    if (!in) fail_validation("config: cannot read " + *path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail_validation("config: " + *path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) fail_validation("config: top level must be an object");
    return j;
}

/// Typed access to a flat config object with a fixed key set.
class ConfigReader {
public:
    ConfigReader(const Json& j, const std::set<std::string>& allowed) : j_(j) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key())) fail(it.key(), "unknown key");
    }

    [[noreturn]] static void fail(const std::string& key, const std::string& what) {
        fail_validation("config key '" + key + "': " + what);
    }

    bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    std::optional<double> opt_number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const Json& v = j_.at(key);
        if (!v.is_number()) fail(key, "must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "must be finite");
        return d;
    }

    double number(const std::string& key, double dflt) const { return opt_number(key).value_or(dflt); }

    std::optional<std::int64_t> opt_integer(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const Json& v = j_.at(key);
        if (!v.is_number_integer()) fail(key, "must be an integer");
        return v.get<std::int64_t>();
    }

    std::string string(const std::string& key, const std::string& dflt) const {
        if (!has(key)) return dflt;
        const Json& v = j_.at(key);
        if (!v.is_string()) fail(key, "must be a string");
        return v.get<std::string>();
    }

    bool boolean(const std::string& key, bool dflt) const {
        if (!has(key)) return dflt;
        const Json& v = j_.at(key);
        if (!v.is_boolean()) fail(key, "must be true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> dflt) const {
        if (!has(key)) return dflt;
        const Json& v = j_.at(key);
        if (!v.is_array()) fail(key, "must be an array of numbers");
        std::vector<double> out;
        for (const Json& e : v) {
            if (!e.is_number()) fail(key, "must be an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

private:
    const Json& j_;
};

inline void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) ConfigReader::fail(key, what);
}

inline const std::set<std::string> kCommonKeys{"seed", "output_dir", "grid_n", "grid_dt", "force"};

inline std::set<std::string> with_common(std::set<std::string> keys) {
    keys.insert(kCommonKeys.begin(), kCommonKeys.end());
    return keys;
}

/// Common settings after merging flags over config values.
struct Common {
    std::uint64_t seed = 0;
    std::filesystem::path out;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_dt;
    bool force = false;
};

inline Common read_common(const ConfigReader& r, const RunOptions& o, std::uint64_t default_seed, const std::string& seed_key) {
    Common c;
    if (o.seed) {
        c.seed = *o.seed;
    } else {
        const auto s = r.opt_integer(seed_key).has_value() ? r.opt_integer(seed_key) : r.opt_integer("seed");
        if (s && *s < 0) ConfigReader::fail(seed_key, "must be non-negative");
        c.seed = s ? static_cast<std::uint64_t>(*s) : default_seed;
    }
    c.out = o.out.value_or(r.string("output_dir", "out"));
    if (o.grid_n) {
        c.grid_n = o.grid_n;
    } else if (const auto n = r.opt_integer("grid_n")) {
        c.grid_n = static_cast<std::size_t>(std::max<std::int64_t>(0, *n));
        require(*n >= 2 && *n % 2 == 0, "grid_n", "must be an even integer >= 2");
    }
    c.grid_dt = o.grid_dt ? o.grid_dt : r.opt_number("grid_dt");
    if (o.grid_n) require(*o.grid_n >= 2 && *o.grid_n % 2 == 0, "grid_n", "must be an even integer >= 2");
    if (c.grid_dt) require(*c.grid_dt > 0.0, "grid_dt", "must be positive");
    c.force = o.force || r.boolean("force", false);
    return c;
}

inline Json quad_json(const QuadratureOptions& q) {
    Json j;
    j["eps"] = q.eps;
    j["step_factor"] = q.step_factor;
    j["max_nodes"] = q.max_nodes;
    return j;
}

inline QuadratureOptions read_quad(const ConfigReader& r, QuadratureOptions q) {
    q.eps = r.number("quad_eps", q.eps);
    q.step_factor = r.number("quad_step_factor", q.step_factor);
    q.max_nodes = r.number("quad_max_nodes", q.max_nodes);
    require(q.eps > 0.0 && q.eps < 1.0, "quad_eps", "must lie in (0, 1)");
    require(q.step_factor >= 1.0, "quad_step_factor", "must be >= 1");
    require(q.max_nodes >= 1.0, "quad_max_nodes", "must be >= 1");
    return q;
}

// ---------------------------------------------------------------------------
// signaling

struct SignalingConfig {
    double s = 1.0, rho = 1.5, a = 1.0;
    int index_radius = 3;
    Common common;
};

inline SignalingConfig parse_signaling(const Json& j, const RunOptions& o) {
    const ConfigReader r(j, with_common({"s", "rho", "a", "index_radius"}));
    SignalingConfig c;
    c.s = r.number("s", 1.0);
    require(c.s > 0.0, "s", "must be positive");
    c.rho = r.number("rho", 1.5);
    require(c.rho > 1.0, "rho", "Balian–Low regime: no localized orthonormal system (rho must exceed 1)");
    c.a = r.number("a", std::sqrt(c.s));
    require(c.a > 0.0, "a", "must be positive");
    const auto R = r.opt_integer("index_radius").value_or(3);
    require(R >= 0 && R <= 16, "index_radius", "must lie in [0, 16]");
    c.index_radius = static_cast<int>(R);
    c.common = read_common(r, o, 0, "seed");
    return c;
}

struct CommandResult {
    Json summary;
    std::string line;       // one-line human summary for stdout
    std::vector<std::string> files;
};

inline CommandResult cmd_signaling(const Json& config, const RunOptions& o) {
    const SignalingConfig c = parse_signaling(config, o);
    const std::vector<std::string> files{"summary.json", "window.csv"};
    io::prepare_output_dir(c.common.out, files, c.common.force);

    const double b = 1.0 / c.a;
    TimeGrid grid = window_grid(c.s, c.a, c.rho, c.common.grid_n.value_or(1024));
    if (c.common.grid_dt) grid = TimeGrid::centered(grid.n, c.rho * c.a / std::ceil(c.rho * c.a / *c.common.grid_dt - 1e-9));
    const TightWindow tw = tight_window(c.s, c.a, b, c.rho, grid);
    const int R = c.index_radius;
    const GaborSystem tx{tw.window, Lattice{c.rho * c.a, c.rho * b, -R, R, -R, R}, c.rho, c.s, SystemKind::transmit_orthonormal};
    const double gram_dev = gram_max_deviation(tx);
    const DecayFit ft = decay_envelope_fit(tw.window);
    const DecayFit fw = decay_envelope_fit(fourier(tw.window));
    const double D = estimate_D(tw.window, c.s);

    Json j;
    j["schema_version"] = io::kSchemaVersion;
    j["kind"] = "signaling";
    j["seed"] = c.common.seed;
    j["s"] = io::quantity(c.s, "dimensionless");
    j["rho"] = io::quantity(c.rho, "dimensionless");
    j["a"] = io::quantity(c.a, "seconds");
    j["b"] = io::quantity(b, "hertz");
    j["index_radius"] = R;
    j["grid"] = io::grid_json(grid);
    j["gram_max_dev"] = io::quantity(gram_dev, "dimensionless");
    j["condition_number"] = io::quantity(tw.condition_number, "dimensionless");
    j["frame_lower"] = io::quantity(tw.frame_lower, "dimensionless");
    j["frame_upper"] = io::quantity(tw.frame_upper, "dimensionless");
    j["time_decay"] = {{"amplitude", io::quantity(ft.amplitude, "per root second")}, {"rate", io::quantity(ft.rate, "per second")}};
    j["frequency_decay"] = {{"amplitude", io::quantity(fw.amplitude, "per root hertz")}, {"rate", io::quantity(fw.rate, "per hertz")}};
    j["D_est"] = io::quantity(D, "dimensionless");

    io::write_file(c.common.out / "summary.json", io::dump(j));
    io::write_file(c.common.out / "window.csv", io::window_csv(tw.window));
    CommandResult res;
    res.summary = j;
    res.files = files;
    res.line = "gram_max_dev=" + io::num(gram_dev) + " condition_number=" + io::num(tw.condition_number) +
               " time_rate=" + io::num(ft.rate) + " D_est=" + io::num(D);
    return res;
}

// ---------------------------------------------------------------------------
// capacity

struct CapacityConfig {
    CapacityParams params;
    std::string channel_kind = "separable_exponential";
    double amplitude = 1.0;
    Common common;
};

inline CapacityConfig parse_capacity(const Json& j, const RunOptions& o) {
    const ConfigReader r(j, with_common({"alpha", "beta", "rho", "s", "T", "W", "eta2", "P_total", "phase_seed", "channel_kind",
                                         "amplitude", "kappa", "kappa_csit", "D_est", "max_atoms", "quad_eps", "quad_step_factor",
                                         "quad_max_nodes"}));
    CapacityConfig c;
    CapacityParams& p = c.params;
    p.alpha = r.number("alpha", p.alpha);
    require(p.alpha >= 1.0, "alpha", "must be >= 1");
    p.beta = r.number("beta", p.beta);
    require(p.beta >= 1.0, "beta", "must be >= 1");
    p.rho = r.number("rho", p.rho);
    require(p.rho > 1.0, "rho", "Balian–Low regime: no localized orthonormal system (rho must exceed 1)");
    p.s = r.opt_number("s");
    if (p.s) require(*p.s > 0.0, "s", "must be positive");
    p.T = r.number("T", p.T);
    require(p.T > 0.0, "T", "must be positive");
    p.W = r.number("W", p.W);
    require(p.W > 0.0, "W", "must be positive");
    p.eta2 = r.number("eta2", p.eta2);
    require(p.eta2 > 0.0, "eta2", "must be positive");
    p.P_total = r.number("P_total", p.P_total);
    require(p.P_total > 0.0, "P_total", "must be positive");
    p.kappa = r.opt_number("kappa");
    if (p.kappa) require(*p.kappa >= 0.0, "kappa", "must be non-negative");
    p.kappa_csit = r.opt_number("kappa_csit");
    if (p.kappa_csit) require(*p.kappa_csit >= 0.0, "kappa_csit", "must be non-negative");
    p.D_est = r.opt_number("D_est");
    if (p.D_est) require(*p.D_est > 0.0 && *p.D_est < 1.0, "D_est", "must lie in (0, 1)");
    const auto ma = r.opt_integer("max_atoms").value_or(256);
    require(ma >= 1, "max_atoms", "must be >= 1");
    p.max_atoms = static_cast<std::size_t>(ma);
    p.quad = read_quad(r, p.quad);
    c.channel_kind = r.string("channel_kind", c.channel_kind);
    static const std::set<std::string> kinds{"separable_exponential", "lti_limit_family", "identity", "zero"};
    require(kinds.count(c.channel_kind) == 1, "channel_kind", "must be one of separable_exponential, lti_limit_family, identity, zero");
    c.amplitude = r.number("amplitude", 1.0);
    require(c.amplitude >= 0.0, "amplitude", "must be non-negative");
    c.common = read_common(r, o, 0, "phase_seed");
    p.grid_n = c.common.grid_n;
    p.grid_dt = c.common.grid_dt;
    const int K = static_cast<int>(std::floor(p.T * p.alpha / (p.rho * p.beta) + 1e-12));
    const int L = static_cast<int>(std::floor(p.W * p.beta / (p.rho * p.alpha) + 1e-12));
    require(static_cast<std::size_t>(K + 1) * static_cast<std::size_t>(2 * L + 1) <= p.max_atoms, "max_atoms",
            "region needs " + std::to_string((K + 1) * (2 * L + 1)) + " transmit atoms");
    return c;
}

inline SpreadingFunction make_channel(const CapacityConfig& c) {
    const CapacityParams& p = c.params;
    if (c.channel_kind == "identity") return make_point_mass(0.0, 0.0);
    if (c.channel_kind == "zero") return make_spreading(ChannelKind::separable_exponential, 0.0, p.alpha, p.beta, c.common.seed);
    const ChannelKind kind = c.channel_kind == "lti_limit_family" ? ChannelKind::lti_limit_family : ChannelKind::separable_exponential;
    return make_spreading(kind, c.amplitude, p.alpha, p.beta, c.common.seed);
}

inline CommandResult cmd_capacity(const Json& config, const RunOptions& o) {
    const CapacityConfig c = parse_capacity(config, o);
    const std::vector<std::string> files{"summary.json", "atoms.csv"};
    io::prepare_output_dir(c.common.out, files, c.common.force);
    const CapacityReport rep = capacity_report(make_channel(c), c.params);

    Json j = io::report_json(rep);
    j["channel"] = {{"kind", c.channel_kind}, {"amplitude", c.amplitude}, {"phase_seed", c.common.seed}};
    j["quadrature"] = quad_json(c.params.quad);
    io::write_file(c.common.out / "summary.json", io::dump(j));
    io::write_file(c.common.out / "atoms.csv", io::atoms_csv(rep));
    CommandResult res;
    res.summary = j;
    res.files = files;
    res.line = "csir_exact=" + io::num(rep.csir_exact) + " csir_symbol=" + io::num(rep.csir_symbol) + " csit_exact=" +
               io::num(rep.csit_exact) + " csit_symbol=" + io::num(rep.csit_symbol) + " error_bound_csir=" +
               io::num(rep.error_bound_csir) + " error_bound_csit=" + io::num(rep.error_bound_csit);
    return res;
}

// ---------------------------------------------------------------------------
// lti-sweep

struct SweepConfig {
    LtiSweepParams params;
    bool allow_truncation = false;
    Common common;
};

inline SweepConfig parse_sweep(const Json& j, const RunOptions& o) {
    const ConfigReader r(j, with_common({"alpha", "beta_seq", "W", "rho", "eta2", "mode", "P_total", "allow_truncation", "max_atoms",
                                         "quad_eps", "quad_step_factor", "quad_max_nodes"}));
    SweepConfig c;
    LtiSweepParams& p = c.params;
    p.alpha = r.number("alpha", p.alpha);
    require(p.alpha >= 1.0, "alpha", "must be >= 1");
    p.beta_seq = r.numbers("beta_seq", {4.0, 8.0, 16.0});
    require(!p.beta_seq.empty(), "beta_seq", "must not be empty");
    for (std::size_t i = 0; i < p.beta_seq.size(); ++i) {
        require(p.beta_seq[i] >= 1.0, "beta_seq", "entries must be >= 1");
        if (i > 0) require(p.beta_seq[i] > p.beta_seq[i - 1], "beta_seq", "must be strictly increasing");
    }
    p.W = r.number("W", p.W);
    require(p.W > 0.0, "W", "must be positive");
    p.rho = r.number("rho", p.rho);
    require(p.rho > 1.0, "rho", "Balian–Low regime: no localized orthonormal system (rho must exceed 1)");
    p.eta2 = r.number("eta2", p.eta2);
    require(p.eta2 > 0.0, "eta2", "must be positive");
    const std::string mode = r.string("mode", "csir");
    require(mode == "csir" || mode == "csit", "mode", "must be csir or csit");
    p.mode = mode == "csir" ? CapacityMode::csir : CapacityMode::csit;
    p.P_total = r.number("P_total", p.P_total);
    require(p.P_total > 0.0, "P_total", "must be positive");
    const auto ma = r.opt_integer("max_atoms").value_or(256);
    require(ma >= 1, "max_atoms", "must be >= 1");
    p.max_atoms = static_cast<std::size_t>(ma);
    p.quad = read_quad(r, p.quad);
    c.allow_truncation = r.boolean("allow_truncation", false);
    c.common = read_common(r, o, 0, "seed");
    return c;
}

inline CommandResult cmd_lti_sweep(const Json& config, const RunOptions& o) {
    const SweepConfig c = parse_sweep(config, o);
    const std::vector<std::string> files{"summary.json", "sweep.csv"};
    io::prepare_output_dir(c.common.out, files, c.common.force);
    const LtiSweep sw = lti_limit_sweep(c.params);
    if (sw.truncated && !c.allow_truncation) fail_numerical(sw.warning + " (set allow_truncation to accept)");
    Json j = io::sweep_json(c.params, sw);
    j["quadrature"] = quad_json(c.params.quad);
    io::write_file(c.common.out / "summary.json", io::dump(j));
    io::write_file(c.common.out / "sweep.csv", io::sweep_csv(sw));
    CommandResult res;
    res.summary = j;
    res.files = files;
    res.line = std::string("mode=") + io::mode_name(c.params.mode) + " rows=" + std::to_string(sw.rows.size());
    for (const LtiRow& row : sw.rows) res.line += " gap(" + io::num(row.beta) + ")=" + io::num(row.gap);
    if (sw.truncated) res.line += " warning: " + sw.warning;
    return res;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateOutcome {
    std::vector<validation::CheckResult> results;
    bool none_selected = false;
    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

/// Runs the named checks whose names contain one of the comma-separated
/// tokens of `filter`; all checks when `filter` is absent.
inline ValidateOutcome cmd_validate(const std::optional<std::string>& filter, bool inject_fault, std::uint64_t seed,
                                    const std::function<void(const validation::CheckResult&)>& on_result = {}) {
    std::vector<std::string> tokens;
    if (filter) {
        std::string cur;
        for (char ch : *filter + ",") {
            if (ch == ',') {
                if (!cur.empty()) tokens.push_back(cur);
                cur.clear();
            } else if (ch != ' ') {
                cur += ch;
            }
        }
    }
    validation::SuiteOptions so;
    so.seed = seed;
    so.twist = inject_fault ? Twist::flipped : Twist::standard;
    ValidateOutcome out;
    for (const validation::Check& c : validation::suite()) {
        bool selected = !filter;
        for (const auto& t : tokens) selected = selected || c.name.find(t) != std::string::npos;
        if (!selected) continue;
        out.results.push_back(validation::run_check(c, so));
        if (on_result) on_result(out.results.back());
    }
    out.none_selected = out.results.empty();
    return out;
}

} // namespace ltvcap::cli
