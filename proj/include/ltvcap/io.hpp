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

// Serialization of reports, sweeps and windows. Output is a pure function of
// the input values: keys keep insertion order and floats are written with 17
// significant digits, so equal inputs give byte-identical files.

#pragma once

#include "ltvcap/capacity.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace ltvcap::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Round-trip decimal text for a double.
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// {"value": v, "unit": u}; every physical field in the summaries uses this shape.
inline Json quantity(double v, const char* unit) {
    Json j;
    j["value"] = v;
    j["unit"] = unit;
    return j;
}

inline Json grid_json(const TimeGrid& g) {
    Json j;
    j["t0"] = quantity(g.t0, "seconds");
    j["dt"] = quantity(g.dt, "seconds");
    j["n"] = g.n;
    return j;
}

inline Json report_json(const CapacityReport& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "capacity_report";
    Json params;
    params["alpha"] = quantity(r.alpha, "per second");
    params["beta"] = quantity(r.beta, "per hertz");
    params["rho"] = quantity(r.rho, "dimensionless");
    params["s"] = quantity(r.s, "dimensionless");
    params["K"] = r.K;
    params["L"] = r.L;
    params["D_est"] = quantity(r.D_est, "dimensionless");
    params["eta2"] = quantity(r.eta2, "dimensionless power");
    params["P_total"] = quantity(r.P_total, "dimensionless power");
    j["params"] = params;
    Json region;
    region["T"] = quantity(r.T, "seconds");
    region["W"] = quantity(r.W, "hertz");
    j["region"] = region;
    j["grid"] = grid_json(r.grid);
    j["csir_exact"] = quantity(r.csir_exact, "bits");
    j["csir_symbol"] = quantity(r.csir_symbol, "bits");
    j["csit_exact"] = quantity(r.csit_exact, "bits");
    j["csit_symbol"] = quantity(r.csit_symbol, "bits");
    j["error_bound_csir"] = quantity(r.error_bound_csir, "bits");
    j["error_bound_csit"] = quantity(r.error_bound_csit, "bits");
    j["kappa"] = quantity(r.kappa, "dimensionless");
    j["kappa_csit"] = quantity(r.kappa_csit, "dimensionless");
    j["kappa_calibrated"] = r.kappa_calibrated;
    j["diag_max_dev"] = quantity(r.diag_max_dev, "dimensionless power gain");
    Json lg;
    lg["gap"] = quantity(r.log_gap.gap, "bits");
    lg["bound"] = quantity(r.log_gap.bound, "bits");
    lg["epsilon"] = quantity(r.log_gap.epsilon, "dimensionless power gain");
    j["log_gap"] = lg;
    Json eig = Json::array();
    for (double v : r.eigenvalues) eig.push_back(v);
    j["eigenvalues"] = {{"unit", "dimensionless power gain"}, {"values", eig}};
    Json sym = Json::array();
    for (const auto& [k, l] : r.tx_index) sym.push_back(r.symbol_samples(k, l + r.L));
    j["symbol_samples"] = {{"unit", "dimensionless power gain"}, {"values", sym}};
    Json pe = Json::array(), ps = Json::array();
    for (double v : r.power_exact) pe.push_back(v);
    for (double v : r.power_symbol) ps.push_back(v);
    j["power_exact"] = {{"unit", "dimensionless power"}, {"values", pe}};
    j["power_symbol"] = {{"unit", "dimensionless power"}, {"values", ps}};
    return j;
}

/// One row per transmit atom. S_plus, diag_gram and P_symbol belong to the
/// atom; lambda and P_exact are the eigenvalue of the same rank when atoms are
/// ordered by S_plus (descending, ties by index), since eigenvalues carry no
/// lattice label.
inline std::string atoms_csv(const CapacityReport& r) {
    const std::size_t n = r.tx_index.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto s_of = [&](std::size_t i) { return r.symbol_samples(r.tx_index[i].first, r.tx_index[i].second + r.L); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return s_of(x) > s_of(y); });
    std::vector<std::size_t> rank(n);
    for (std::size_t q = 0; q < n; ++q) rank[order[q]] = q;
    std::ostringstream os;
    os << "k,l,lambda,S_plus,P_exact,P_symbol,diag_gram\n";
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t q = rank[i];
        os << r.tx_index[i].first << ',' << r.tx_index[i].second << ',' << num(q < r.eigenvalues.size() ? r.eigenvalues[q] : 0.0) << ','
           << num(s_of(i)) << ',' << num(q < r.power_exact.size() ? r.power_exact[q] : 0.0) << ','
           << num(i < r.power_symbol.size() ? r.power_symbol[i] : 0.0) << ',' << num(i < r.diag_gram.size() ? r.diag_gram[i] : 0.0)
           << '\n';
    }
    return os.str();
}

inline const char* mode_name(CapacityMode m) { return m == CapacityMode::csir ? "csir" : "csit"; }

inline std::string sweep_csv(const LtiSweep& s) {
    std::ostringstream os;
    os << "beta_n,L,normalized_capacity,lti_target,gap,power_sum\n";
    for (const LtiRow& r : s.rows) {
        os << num(r.beta) << ',' << r.L << ',' << num(r.normalized_capacity) << ',' << num(r.lti_target) << ',' << num(r.gap) << ','
           << num(r.power_sum) << '\n';
    }
    return os.str();
}

inline Json sweep_json(const LtiSweepParams& p, const LtiSweep& s) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "lti_sweep";
    j["mode"] = mode_name(p.mode);
    j["alpha"] = quantity(p.alpha, "per second");
    j["W"] = quantity(p.W, "hertz");
    j["rho"] = quantity(p.rho, "dimensionless");
    j["eta2"] = quantity(p.eta2, "dimensionless power");
    j["P_total"] = quantity(p.P_total, "dimensionless power");
    Json rows = Json::array();
    for (const LtiRow& r : s.rows) {
        Json row;
        row["beta_n"] = quantity(r.beta, "per hertz");
        row["L"] = r.L;
        row["normalized_capacity"] = quantity(r.normalized_capacity, "bits per unit area");
        row["lti_target"] = quantity(r.lti_target, "bits per unit area");
        row["gap"] = quantity(r.gap, "bits per unit area");
        row["power_sum"] = quantity(r.power_sum, "dimensionless power");
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["truncated"] = s.truncated;
    j["warning"] = s.warning;
    return j;
}

/// Window samples as (index, time, re, im).
inline std::string window_csv(const SampledSignal& f) {
    std::ostringstream os;
    os << "index,time,re,im\n";
    for (std::size_t i = 0; i < f.grid.n; ++i) {
        const cd v = f.values(static_cast<Eigen::Index>(i));
        os << i << ',' << num(f.grid.at(i)) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
    return os.str();
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Refuses to write into a directory that already holds any of `names` unless
/// `force` is set; creates the directory otherwise.
inline void prepare_output_dir(const std::filesystem::path& dir, const std::vector<std::string>& names, bool force) {
    namespace fs = std::filesystem;
    if (fs::exists(dir) && !fs::is_directory(dir)) fail_validation("output path exists and is not a directory: " + dir.string());
    if (!force) {
        for (const auto& n : names)
            if (fs::exists(dir / n)) fail_validation("refusing to overwrite " + (dir / n).string() + " (use --force)");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail_validation("cannot create output directory " + dir.string() + ": " + ec.message());
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_validation("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) fail_validation("write failed for " + path.string());
}

} // namespace ltvcap::io
