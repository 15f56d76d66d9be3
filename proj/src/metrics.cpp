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

#include "cvrp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace
{
    using namespace cvrp;

    void require_metric_grid(const PolarizedPattern &p)
    {
        if (!p.grid().is_complete_standard())
            throw std::invalid_argument(
                "Metrics need a complete standard grid (theta 0..180 inclusive, phi covering 360 deg).");
    }

    double cell_solid_angle(const AngularGrid &g)
    {
        return deg2rad(g.dtheta_deg()) * deg2rad(g.dphi_deg());
    }

    // sin(theta) quadrature weight; the pole rings contribute nothing.
    double ring_weight(double theta_deg)
    {
        if (theta_deg <= node_tolerance_deg || theta_deg >= 180.0 - node_tolerance_deg)
            return 0.0;
        return std::sin(deg2rad(theta_deg));
    }

    // sum_ij w_ij [E_theta + E_phi] sin(theta_i); unit weights when w is null.
    double power_sum(const PolarizedPattern &p, const Matrix *w)
    {
        const AngularGrid &g = p.grid();
        CompensatedSum sum;
        for (std::size_t i = 0; i < g.n_theta(); ++i)
        {
            double s = ring_weight(g.theta_deg()[i]);
            if (s == 0.0)
                continue;
            for (std::size_t j = 0; j < g.n_phi(); ++j)
            {
                double x = p.combined_at(i, j) * s;
                if (w)
                    x = (*w)(i, j) * x;
                sum.add(x);
            }
        }
        return sum.value();
    }

    // Area the quadrature assigns to the weighted region, scaled so unit weights give exactly 4 pi.
    double quadrature_area(const AngularGrid &g, const Matrix &w)
    {
        CompensatedSum covered, total;
        for (std::size_t i = 0; i < g.n_theta(); ++i)
        {
            double s = ring_weight(g.theta_deg()[i]);
            if (s == 0.0)
                continue;
            for (std::size_t j = 0; j < g.n_phi(); ++j)
            {
                covered.add(w(i, j) * s);
                total.add(s);
            }
        }
        return four_pi * (covered.value() / total.value());
    }

    void check_window(const Window &w)
    {
        const double tol = node_tolerance_deg;
        if (!(w.theta_min_deg >= -tol && w.theta_max_deg <= 180.0 + tol && w.theta_min_deg < w.theta_max_deg))
            throw std::invalid_argument("Window needs 0 <= theta_min < theta_max <= 180 deg.");
        double ext = w.phi_extent_deg();
        if (!(ext > 0.0 && ext <= 360.0 + tol))
            throw std::invalid_argument("Window phi extent must lie in (0, 360] deg.");
        if (!(w.phi_min_deg >= 0.0 && w.phi_min_deg < 360.0))
            throw std::invalid_argument("Window phi_min must lie in [0, 360) deg.");
    }
}

// ---- SphericalMask ------------------------------------------------------

cvrp::SphericalMask cvrp::SphericalMask::full_sphere()
{
    return SphericalMask(FullSphere{}, four_pi);
}

cvrp::SphericalMask cvrp::SphericalMask::cap(const Direction &center, double half_angle_deg)
{
    if (!(half_angle_deg > 0.0 && half_angle_deg <= 180.0))
        throw std::invalid_argument("Cap half-angle must lie in (0, 180] deg.");
    double area = half_angle_deg == 180.0 ? four_pi : 2.0 * pi * (1.0 - std::cos(deg2rad(half_angle_deg)));
    return SphericalMask(Cap{center.normalized(), half_angle_deg}, area);
}

cvrp::SphericalMask cvrp::SphericalMask::window(const Window &w)
{
    check_window(w);
    Window c = w;
    c.theta_min_deg = std::clamp(c.theta_min_deg, 0.0, 180.0);
    c.theta_max_deg = std::clamp(c.theta_max_deg, 0.0, 180.0);
    double ext = std::min(c.phi_extent_deg(), 360.0);
    c.phi_max_deg = c.phi_min_deg + ext;
    double area = deg2rad(ext) * (std::cos(deg2rad(c.theta_min_deg)) - std::cos(deg2rad(c.theta_max_deg)));
    return SphericalMask(c, area);
}

cvrp::SphericalMask cvrp::SphericalMask::point(const Direction &center)
{
    return SphericalMask(Point{center.normalized()}, 0.0);
}

cvrp::MaskKind cvrp::SphericalMask::kind() const
{
    return MaskKind(region_.index());
}

bool cvrp::SphericalMask::contains(const Direction &d) const
{
    const double tol = node_tolerance_deg;
    const Direction q = d.normalized();
    switch (kind())
    {
    case MaskKind::FullSphere:
        return true;
    case MaskKind::Cap:
        return angular_distance_deg(as_cap().center, q) <= as_cap().half_angle_deg + tol;
    case MaskKind::Point:
        return angular_distance_deg(as_point().center, q) <= tol;
    case MaskKind::Window:
    {
        const Window &w = as_window();
        if (q.theta_deg < w.theta_min_deg - tol || q.theta_deg > w.theta_max_deg + tol)
            return false;
        double ext = w.phi_extent_deg();
        if (ext >= 360.0 - tol)
            return true;
        double off = wrap_360(q.phi_deg - w.phi_min_deg);
        return off <= ext + tol || 360.0 - off <= tol;
    }
    }
    return false;
}

cvrp::Window cvrp::window_bounds(const Direction &center, double theta_fov_deg, double phi_fov_deg)
{
    if (!(theta_fov_deg >= 0.0 && theta_fov_deg <= 360.0) || !(phi_fov_deg >= 0.0 && phi_fov_deg <= 360.0))
        throw std::invalid_argument("Field-of-view widths must lie in [0, 360] deg.");

    const Direction c = center.normalized();
    Window w;
    w.theta_min_deg = std::clamp(c.theta_deg - 0.5 * theta_fov_deg, 0.0, 180.0);
    w.theta_max_deg = std::clamp(c.theta_deg + 0.5 * theta_fov_deg, 0.0, 180.0);
    if (phi_fov_deg >= 360.0)
    {
        w.phi_min_deg = 0.0;
        w.phi_max_deg = 360.0;
    }
    else
    {
        w.phi_min_deg = wrap_360(c.phi_deg - 0.5 * phi_fov_deg);
        w.phi_max_deg = w.phi_min_deg + phi_fov_deg;
    }
    if (!(w.theta_max_deg > w.theta_min_deg) || !(phi_fov_deg > 0.0))
    {
        std::ostringstream msg;
        msg << "Window around (" << c.theta_deg << ", " << c.phi_deg << ") deg with theta_fov = " << theta_fov_deg
            << " deg and phi_fov = " << phi_fov_deg << " deg is empty.";
        throw std::invalid_argument(msg.str());
    }
    return w;
}

double cvrp::mask_solid_angle(const SphericalMask &m)
{
    return m.solid_angle_sr();
}

cvrp::PolarizedPattern cvrp::apply_mask(const PolarizedPattern &p, const SphericalMask &m)
{
    if (m.kind() == MaskKind::Point)
        throw std::invalid_argument("apply_mask does not accept a point mask; use cvrp_point.");
    if (p.grid().convention() != Convention::Standard)
        throw std::invalid_argument("apply_mask expects a standard-convention pattern.");
    if (m.kind() == MaskKind::FullSphere)
        return p;

    const AngularGrid &g = p.grid();
    Matrix eth = p.eirp_theta_mw(), eph = p.eirp_phi_mw();
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
            if (!m.contains({g.theta_deg()[i], g.phi_deg()[j]}))
            {
                eth(i, j) = 0.0;
                eph(i, j) = 0.0;
            }
    PolarizedPattern result(g, std::move(eth), std::move(eph), p.measured(), p.frequency_hz(), p.label());
    result.metadata = p.metadata;
    return result;
}

// ---- Radiated-power metrics ---------------------------------------------

double cvrp::trp(const PolarizedPattern &p)
{
    require_metric_grid(p);
    return cell_solid_angle(p.grid()) * power_sum(p, nullptr) / four_pi;
}

std::pair<double, double> cvrp::prp_band(PrpPreset preset)
{
    switch (preset)
    {
    case PrpPreset::Uhrp:
        return {0.0, 90.0};
    case PrpPreset::N75prp:
        return {60.0, 90.0};
    case PrpPreset::Nhprp:
        return {60.0, 120.0};
    }
    throw std::invalid_argument("Unknown PRP preset.");
}

double cvrp::prp(const PolarizedPattern &p, double theta1_deg, double theta2_deg, CellWeighting weighting)
{
    if (!(theta1_deg >= 0.0 && theta1_deg < theta2_deg && theta2_deg <= 180.0))
        throw std::invalid_argument("PRP band needs 0 <= theta1 < theta2 <= 180 deg.");
    require_metric_grid(p);

    SphericalMask band = SphericalMask::window({theta1_deg, theta2_deg, 0.0, 360.0});
    double sum;
    if (weighting == CellWeighting::Coverage)
    {
        Matrix w = coverage_weights(p.grid(), band);
        sum = power_sum(p, &w);
    }
    else
        sum = power_sum(apply_mask(p, band), nullptr);
    return cell_solid_angle(p.grid()) * sum / four_pi;
}

double cvrp::prp(const PolarizedPattern &p, PrpPreset preset, CellWeighting weighting)
{
    auto [t1, t2] = prp_band(preset);
    return prp(p, t1, t2, weighting);
}

cvrp::CvrpResult cvrp::cvrp_detail(const PolarizedPattern &p, const SphericalMask &m, CellWeighting weighting)
{
    if (m.kind() == MaskKind::Point)
        throw std::invalid_argument("Point masks have no area; use cvrp_point.");
    require_metric_grid(p);

    const AngularGrid &g = p.grid();
    CvrpResult r;
    if (m.kind() == MaskKind::FullSphere)
    {
        r.weighted_power_mw_sr = cell_solid_angle(g) * power_sum(p, nullptr);
        r.area_sr = four_pi;
    }
    else if (weighting == CellWeighting::Coverage)
    {
        Matrix w = coverage_weights(g, m);
        r.weighted_power_mw_sr = cell_solid_angle(g) * power_sum(p, &w);
        r.area_sr = quadrature_area(g, w);
    }
    else
    {
        r.weighted_power_mw_sr = cell_solid_angle(g) * power_sum(apply_mask(p, m), nullptr);
        r.area_sr = m.solid_angle_sr();
    }

    if (!(r.area_sr >= 1.0e-12))
        throw std::invalid_argument("Mask covers no grid area (below 1e-12 sr); use a point field of view.");
    r.cvrp_mw = r.weighted_power_mw_sr / r.area_sr;
    return r;
}

double cvrp::cvrp(const PolarizedPattern &p, const SphericalMask &m, CellWeighting weighting)
{
    return cvrp_detail(p, m, weighting).cvrp_mw;
}

double cvrp::cvrp_point(const PolarizedPattern &p, const Direction &center)
{
    return combined_eirp(p, center);
}

const std::vector<double> &cvrp::default_fov_half_angles()
{
    static const std::vector<double> fovs = {180, 165, 150, 135, 120, 105, 90, 60, 45, 30, 21, 15, 9, 6, 3, 0};
    return fovs;
}

cvrp::CvrpSweep cvrp::cvrp_sweep(const PolarizedPattern &p, const Direction &center,
                                 std::span<const double> half_angles_deg, CellWeighting weighting)
{
    for (std::size_t k = 0; k < half_angles_deg.size(); ++k)
    {
        double b = half_angles_deg[k];
        if (!(b >= 0.0 && b <= 180.0))
            throw std::invalid_argument("Sweep half-angles must lie in [0, 180] deg.");
        if (k > 0 && b == half_angles_deg[k - 1])
        {
            std::ostringstream msg;
            msg << "Duplicate sweep half-angle " << b << " deg.";
            throw std::invalid_argument(msg.str());
        }
        if (k > 0 && b > half_angles_deg[k - 1])
            throw std::invalid_argument("Sweep half-angles must be sorted in decreasing order.");
    }

    CvrpSweep sweep;
    sweep.pattern_label = p.label();
    for (double b : half_angles_deg)
    {
        double value;
        if (b == 0.0)
            value = cvrp_point(p, center);
        else if (b >= 180.0)
            value = cvrp(p, SphericalMask::full_sphere(), weighting);
        else
            value = cvrp(p, SphericalMask::cap(center, b), weighting);
        sweep.entries.push_back({b, value});
    }
    return sweep;
}
