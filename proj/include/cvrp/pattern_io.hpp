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

#ifndef CVRP_PATTERN_IO_HPP
#define CVRP_PATTERN_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cvrp/diagnostics.hpp"
#include "cvrp/metrics.hpp"
#include "cvrp/pattern.hpp"

namespace cvrp
{
    inline constexpr std::string_view pattern_format_version = "cvrp-pattern/1";
    inline constexpr std::string_view pattern_columns = "theta_deg,phi_deg,eirp_theta_dbm,eirp_phi_dbm";

    // Malformed input; the message carries "<source>:<line>: ".
    class FormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /*!MD
    # Pattern CSV
    ```
    # format_version: cvrp-pattern/1
    # convention: standard            (or: distributed)
    # frequency_hz: 28000000000
    # dtheta_deg: 1.5
    # dphi_deg: 1.5
    # label: CS scan 0 all-on
    # element: cosine                 (optional metadata, any "# key: value")
    theta_deg,phi_deg,eirp_theta_dbm,eirp_phi_dbm
    0,0,12.5,-inf
    ...
    ```
    - Rows are theta-major ascending, then phi ascending; values in dBm with 12 significant digits and
      `-inf` for 0 mW.
    - The grid is the full axis set implied by the convention and steps. Absent rows are unmeasured.
    MD!*/
    PolarizedPattern parse_pattern(std::istream &in, std::string_view source_name = "<stream>");
    PolarizedPattern read_pattern(const std::filesystem::path &path);

    void format_pattern(const PolarizedPattern &p, std::ostream &out);
    void write_pattern(const PolarizedPattern &p, const std::filesystem::path &path);

    // Plot rows as CSV: optional "# label:" line, the column header, one line per row.
    void format_plot_table(const PlotTable &t, std::ostream &out);
    void write_sweep_csv(const PlotTable &t, const std::filesystem::path &path);

    // Reads a fov_deg,cvrp_dbm file back into a sweep (-200 dBm and below read as 0 mW).
    CvrpSweep parse_sweep_csv(std::istream &in, std::string_view source_name = "<stream>");
    CvrpSweep read_sweep_csv(const std::filesystem::path &path);

    // Shortest text for the value at 12 significant digits ("-inf" for negative infinity).
    std::string format_number(double v);
}

#endif
