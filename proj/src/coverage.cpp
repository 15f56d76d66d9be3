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

// Fractional cell coverage of spherical masks.

#include "cvrp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace
{
    using cvrp::deg2rad;
    using cvrp::rad2deg;

    // Length of the intersection of two arcs on the circle (degrees); arcs start at a0/b0 with lengths la/lb.
    double arc_overlap(double a0, double la, double b0, double lb)
    {
        if (lb >= 360.0)
            return la;
        if (la >= 360.0)
            return lb;
        double d = cvrp::wrap_360(b0 - a0);
        auto seg = [](double x0, double x1, double y0, double y1) { return std::max(0.0, std::min(x1, y1) - std::max(x0, y0)); };
        return seg(0.0, la, d, d + lb) + seg(0.0, la, d - 360.0, d - 360.0 + lb);
    }

    struct RuleNode
    {
        double x; // in [-1, 1]
        double w;
    };

    const std::vector<RuleNode> &gauss_rule()
    {
        static const std::vector<RuleNode> rule = [] {
            using gauss = boost::math::quadrature::gauss<double, 20>;
            std::vector<RuleNode> r;
            for (std::size_t k = 0; k < gauss::abscissa().size(); ++k)
            {
                r.push_back({-gauss::abscissa()[k], gauss::weights()[k]});
                r.push_back({gauss::abscissa()[k], gauss::weights()[k]});
            }
            return r;
        }();
        return rule;
    }

    struct CellRing
    {
        double lo_deg, hi_deg;
        double solid_theta; // cos(lo) - cos(hi)
    };

    CellRing ring_bounds(const cvrp::AngularGrid &g, std::size_t i)
    {
        double lo = std::max(0.0, g.theta_deg()[i] - 0.5 * g.dtheta_deg());
        double hi = std::min(180.0, g.theta_deg()[i] + 0.5 * g.dtheta_deg());
        return {lo, hi, std::cos(deg2rad(lo)) - std::cos(deg2rad(hi))};
    }

    // Half-width (degrees) of the cap's azimuth interval on the cone of polar angle theta.
    double cap_half_width_deg(double theta_deg, double center_theta_deg, double cos_beta)
    {
        double t = deg2rad(theta_deg), tc = deg2rad(center_theta_deg);
        double st = std::sin(t), sc = std::sin(tc);
        double cross = std::cos(t) * std::cos(tc);
        if (st * sc < 1.0e-14)
            return cross >= cos_beta ? 180.0 : 0.0;
        double c = (cos_beta - cross) / (st * sc);
        if (c <= -1.0)
            return 180.0;
        if (c >= 1.0)
            return 0.0;
        return rad2deg(std::acos(c));
    }

    void cap_weights(const cvrp::AngularGrid &g, const cvrp::Cap &cap, cvrp::Matrix &w)
    {
        const double beta = cap.half_angle_deg;
        const cvrp::Direction c = cap.center.normalized();
        const double cos_beta = std::cos(deg2rad(beta));
        const double cap_lo = std::max(0.0, c.theta_deg - beta), cap_hi = std::min(180.0, c.theta_deg + beta);
        const std::size_t np = g.n_phi();
        const double dphi = g.dphi_deg();
        const auto &rule = gauss_rule();

        std::vector<double> acc(np);
        for (std::size_t i = 0; i < g.n_theta(); ++i)
        {
            CellRing ring = ring_bounds(g, i);
            if (ring.hi_deg <= cap_lo || ring.lo_deg >= cap_hi || !(ring.solid_theta > 0.0))
                continue;

            // Split where the azimuth half-width changes regime (touches 0 or 180 degrees).
            std::vector<double> cuts = {ring.lo_deg, ring.hi_deg};
            for (double b : {c.theta_deg - beta, c.theta_deg + beta, beta - c.theta_deg, 360.0 - beta - c.theta_deg})
                if (b > ring.lo_deg && b < ring.hi_deg)
                    cuts.push_back(b);
            std::sort(cuts.begin(), cuts.end());

            std::fill(acc.begin(), acc.end(), 0.0);
            bool all_full = true, any = false;
            for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
            {
                double x0 = cuts[s], x1 = cuts[s + 1];
                if (x1 - x0 <= 0.0)
                    continue;
                double half = 0.5 * (x1 - x0), mid = 0.5 * (x0 + x1);
                for (const auto &node : rule)
                {
                    double theta = mid + half * node.x;
                    double h = cap_half_width_deg(theta, c.theta_deg, cos_beta);
                    if (h < 180.0)
                        all_full = false;
                    if (h <= 0.0)
                        continue;
                    any = true;
                    double wt = node.w * deg2rad(half) * std::sin(deg2rad(theta));
                    for (std::size_t j = 0; j < np; ++j)
                    {
                        double len = h >= 180.0 ? dphi : arc_overlap(g.phi_deg()[j] - 0.5 * dphi, dphi, c.phi_deg - h, 2.0 * h);
                        acc[j] += wt * len;
                    }
                }
            }
            if (!any)
                continue;
            for (std::size_t j = 0; j < np; ++j)
                w(i, j) = all_full ? 1.0 : std::clamp(acc[j] / (dphi * ring.solid_theta), 0.0, 1.0);
        }
    }

    void window_weights(const cvrp::AngularGrid &g, const cvrp::Window &win, cvrp::Matrix &w)
    {
        const std::size_t np = g.n_phi();
        const double dphi = g.dphi_deg();
        const double extent = win.phi_extent_deg();

        std::vector<double> phi_frac(np, 1.0);
        if (extent < 360.0)
            for (std::size_t j = 0; j < np; ++j)
            {
                double len = arc_overlap(g.phi_deg()[j] - 0.5 * dphi, dphi, win.phi_min_deg, extent);
                phi_frac[j] = len >= dphi ? 1.0 : len / dphi;
            }

        for (std::size_t i = 0; i < g.n_theta(); ++i)
        {
            CellRing ring = ring_bounds(g, i);
            double f;
            if (ring.lo_deg >= win.theta_min_deg && ring.hi_deg <= win.theta_max_deg)
                f = 1.0;
            else if (ring.hi_deg <= win.theta_min_deg || ring.lo_deg >= win.theta_max_deg || !(ring.solid_theta > 0.0))
                f = 0.0;
            else
            {
                double lo = std::max(ring.lo_deg, win.theta_min_deg), hi = std::min(ring.hi_deg, win.theta_max_deg);
                f = std::clamp((std::cos(deg2rad(lo)) - std::cos(deg2rad(hi))) / ring.solid_theta, 0.0, 1.0);
            }
            for (std::size_t j = 0; j < np; ++j)
                w(i, j) = f * phi_frac[j];
        }
    }
}

cvrp::Matrix cvrp::coverage_weights(const AngularGrid &grid, const SphericalMask &m)
{
    if (grid.convention() != Convention::Standard || !grid.phi_wraps())
        throw std::invalid_argument("Coverage weights need a standard grid with a full phi circle.");

    switch (m.kind())
    {
    case MaskKind::FullSphere:
        return Matrix(grid.n_theta(), grid.n_phi(), 1.0);
    case MaskKind::Point:
        throw std::invalid_argument("A point mask has no area; use cvrp_point.");
    case MaskKind::Cap:
    {
        if (m.as_cap().half_angle_deg >= 180.0)
            return Matrix(grid.n_theta(), grid.n_phi(), 1.0);
        Matrix w(grid.n_theta(), grid.n_phi());
        cap_weights(grid, m.as_cap(), w);
        return w;
    }
    case MaskKind::Window:
    {
        Matrix w(grid.n_theta(), grid.n_phi());
        window_weights(grid, m.as_window(), w);
        return w;
    }
    }
    throw std::logic_error("unreachable");
}
