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

#include "cvrp/units.hpp"

#include <limits>

double cvrp::mw_to_dbm(double mw)
{
    if (mw <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(mw);
}

double cvrp::dbm_to_mw(double dbm)
{
    if (std::isinf(dbm) && dbm < 0.0)
        return 0.0;
    return std::pow(10.0, dbm / 10.0);
}

double cvrp::mw_to_dbm_floored(double mw)
{
    double dbm = mw_to_dbm(mw);
    return dbm < dbm_floor ? dbm_floor : dbm;
}

double cvrp::wrap_360(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    if (w >= 360.0) // fmod of a tiny negative value can round up to 360
        w -= 360.0;
    return w;
}
