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

// Command line front end. Exit codes: 0 ok, 1 validation-suite failure,
// 2 config or parameter error, 3 numerical error.

#include "ltvcap/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

enum Exit : int { kOk = 0, kSuiteFailed = 1, kConfigError = 2, kNumericalError = 3 };

void add_common(CLI::App* app, ltvcap::cli::RunOptions& o) {
    app->add_option("--config", o.config_path, "JSON config file");
    app->add_option("--out", o.out, "output directory (overrides output_dir)");
    app->add_option("--seed", o.seed, "seed (overrides the config seed)");
    app->add_option("--grid-n", o.grid_n, "minimum number of grid samples");
    app->add_option("--grid-dt", o.grid_dt, "maximum grid step in seconds");
    app->add_flag("--force", o.force, "overwrite existing outputs");
}

int run_validate(const ltvcap::cli::RunOptions& o, std::optional<std::string> filter, bool inject_fault) {
    using namespace ltvcap::cli;
    const Json cfg = load_config(o.config_path);
    const ConfigReader r(cfg, {"seed", "filter", "inject_fault"});
    if (!filter && r.has("filter")) filter = r.string("filter", "");
    inject_fault = inject_fault || r.boolean("inject_fault", false);
    std::uint64_t seed = 1;
    if (o.seed) {
        seed = *o.seed;
    } else if (const auto s = r.opt_integer("seed")) {
        require(*s >= 0, "seed", "must be non-negative");
        seed = static_cast<std::uint64_t>(*s);
    }
    std::size_t failed = 0;
    const ValidateOutcome out = cmd_validate(filter, inject_fault, seed, [&](const ltvcap::validation::CheckResult& c) {
        if (!c.passed) ++failed;
        std::printf("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        std::fflush(stdout);
    });
    if (out.none_selected) {
        std::fprintf(stderr, "warning: no checks selected\n");
        return kOk;
    }
    std::printf("%zu checks, %zu failed\n", out.results.size(), failed);
    return failed == 0 ? kOk : kSuiteFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regional information capacity of linear time-varying channels"};
    app.require_subcommand(1);

    ltvcap::cli::RunOptions opts;
    std::optional<std::string> filter;
    bool inject_fault = false;

    CLI::App* sig = app.add_subcommand("signaling", "build the tight window and the orthonormal transmit set");
    CLI::App* cap = app.add_subcommand("capacity", "capacity report for one channel and region");
    CLI::App* lti = app.add_subcommand("lti-sweep", "time-invariant limit sweep");
    CLI::App* val = app.add_subcommand("validate", "run the named property checks");
    for (CLI::App* sc : {sig, cap, lti, val}) add_common(sc, opts);
    val->add_option("--filter", filter, "comma-separated substrings selecting checks");
    val->add_flag("--inject-fault", inject_fault, "flip the twist sign in symbol products (test hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (val->parsed()) return run_validate(opts, filter, inject_fault);
        const ltvcap::cli::Json cfg = ltvcap::cli::load_config(opts.config_path);
        ltvcap::cli::CommandResult res;
        if (sig->parsed()) res = ltvcap::cli::cmd_signaling(cfg, opts);
        if (cap->parsed()) res = ltvcap::cli::cmd_capacity(cfg, opts);
        if (lti->parsed()) res = ltvcap::cli::cmd_lti_sweep(cfg, opts);
        std::printf("%s\n", res.line.c_str());
        return kOk;
    } catch (const ltvcap::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.kind() == ltvcap::ErrorKind::validation ? kConfigError : kNumericalError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumericalError;
    }
}
