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

#include "cvrp/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

cvrp::SweepComparison cvrp::compare_sweeps(const CvrpSweep &ref, const CvrpSweep &test, double threshold_db)
{
    if (!(threshold_db > 0.0))
        throw std::invalid_argument("Flag threshold must be positive.");
    if (ref.entries.size() != test.entries.size())
        throw std::invalid_argument("Sweeps have different numbers of FoV entries.");
    for (std::size_t k = 0; k < ref.entries.size(); ++k)
        if (std::abs(ref.entries[k].fov_half_angle_deg - test.entries[k].fov_half_angle_deg) > 1.0e-9)
            throw std::invalid_argument("Sweeps were taken over different FoV lists.");

    SweepComparison c;
    c.threshold_db = threshold_db;
    c.ref_label = ref.pattern_label;
    c.test_label = test.pattern_label;
    for (std::size_t k = 0; k < ref.entries.size(); ++k)
    {
        double fov = ref.entries[k].fov_half_angle_deg;
        double r = mw_to_dbm_floored(ref.entries[k].cvrp_mw);
        double t = mw_to_dbm_floored(test.entries[k].cvrp_mw);
        double d = t - r;
        c.fov_deg.push_back(fov);
        c.ref_cvrp_db.push_back(r);
        c.test_cvrp_db.push_back(t);
        c.delta_db.push_back(d);
        c.max_abs_delta_db = std::max(c.max_abs_delta_db, std::abs(d));
        if (std::abs(d) > threshold_db && (!c.divergence_fov_deg || fov > *c.divergence_fov_deg))
            c.divergence_fov_deg = fov;
    }
    c.flagged = c.divergence_fov_deg.has_value();
    return c;
}

cvrp::PlotTable cvrp::sweep_to_plot_rows(const CvrpSweep &s)
{
    PlotTable t;
    t.columns = {"fov_deg", "cvrp_dbm"};
    t.label = s.pattern_label;
    for (const auto &e : s.entries)
        t.rows.push_back({e.fov_half_angle_deg, mw_to_dbm_floored(e.cvrp_mw)});
    return t;
}

cvrp::PlotTable cvrp::sweep_to_plot_rows(const SweepComparison &c)
{
    PlotTable t;
    t.columns = {"fov_deg", "ref_dbm", "test_dbm", "delta_db", "flagged"};
    t.label = c.ref_label + " vs " + c.test_label;
    for (std::size_t k = 0; k < c.fov_deg.size(); ++k)
        t.rows.push_back({c.fov_deg[k], c.ref_cvrp_db[k], c.test_cvrp_db[k], c.delta_db[k],
                          std::abs(c.delta_db[k]) > c.threshold_db ? 1.0 : 0.0});
    return t;
}
