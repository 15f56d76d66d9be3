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

#ifndef CVRP_UNITS_HPP
#define CVRP_UNITS_HPP

#include <cmath>
#include <numbers>

namespace cvrp
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double four_pi = 4.0 * std::numbers::pi;

    // Queries closer than this to a grid node are treated as on the node.
    inline constexpr double node_tolerance_deg = 1.0e-9;

    // Zero linear power maps to this level wherever a finite dB value is required.
    inline constexpr double dbm_floor = -200.0;

    constexpr double deg2rad(double deg) { return deg * (pi / 180.0); }
    constexpr double rad2deg(double rad) { return rad * (180.0 / pi); }

    // Linear mW to dBm; 0 mW gives -inf.
    double mw_to_dbm(double mw);

    // dBm to linear mW; -inf gives exactly 0.
    double dbm_to_mw(double dbm);

    // Linear mW to dBm clamped at dbm_floor (total for mw >= 0).
    double mw_to_dbm_floored(double mw);

    // Wraps an angle to [0, 360).
    double wrap_360(double deg);

    // Neumaier's variant of Kahan summation. Deterministic for a fixed add() order.
    class CompensatedSum
    {
    public:
        void add(double x)
        {
            double t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
        }
        double value() const { return sum_ + comp_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
    };
}

#endif
