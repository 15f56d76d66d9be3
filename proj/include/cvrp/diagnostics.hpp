// SPDX-License-Identifier: Apache-2.0
//
// cvrp-toolkit: constrained-view radiated power metrics for antenna patterns
// Copyright (C) 2026 The cvrp-toolkit authors
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

#ifndef CVRP_DIAGNOSTICS_HPP
#define CVRP_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cvrp/metrics.hpp"

namespace cvrp
{
    // Not an uncertainty-calibrated value; callers with a measurement budget should pass their own.
    inline constexpr double default_flag_threshold_db = 0.5;

    struct SweepComparison
    {
        std::vector<double> fov_deg;
        std::vector<double> ref_cvrp_db;  // dBm, floored at -200
        std::vector<double> test_cvrp_db; // dBm, floored at -200
        std::vector<double> delta_db;     // test - ref
        double max_abs_delta_db = 0.0;
        std::optional<double> divergence_fov_deg; // widest FoV with |delta| > threshold
        bool flagged = false;
        double threshold_db = default_flag_threshold_db;
        std::string ref_label;
        std::string test_label;
    };

    // Per-FoV dB comparison of two sweeps taken over the same FoV list.
    SweepComparison compare_sweeps(const CvrpSweep &ref, const CvrpSweep &test,
                                   double threshold_db = default_flag_threshold_db);

    // Tabular curve data. Values are numeric; boolean columns hold 0 or 1.
    struct PlotTable
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;
        std::string label;
    };

    // fov_deg, cvrp_dbm
    PlotTable sweep_to_plot_rows(const CvrpSweep &s);

    // fov_deg, ref_dbm, test_dbm, delta_db, flagged
    PlotTable sweep_to_plot_rows(const SweepComparison &c);
}

#endif
