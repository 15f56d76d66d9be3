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

#ifndef CVRP_METRICS_HPP
#define CVRP_METRICS_HPP

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cvrp/pattern.hpp"

namespace cvrp
{
    struct FullSphere
    {
    };

    struct Cap
    {
        Direction center;
        double half_angle_deg = 0.0;
    };

    // theta bounds within [0, 180]; phi runs from phi_min_deg over (phi_max_deg - phi_min_deg) degrees,
    // with phi_min_deg in [0, 360) and an extent in (0, 360]. phi_max_deg may exceed 360 when the
    // window crosses phi = 0.
    struct Window
    {
        double theta_min_deg = 0.0;
        double theta_max_deg = 180.0;
        double phi_min_deg = 0.0;
        double phi_max_deg = 360.0;

        double phi_extent_deg() const { return phi_max_deg - phi_min_deg; }
    };

    struct Point
    {
        Direction center;
    };

    enum class MaskKind
    {
        FullSphere,
        Cap,
        Window,
        Point
    };

    /*!MD
    # SphericalMask
    Field-of-view region used by CVRP: the full sphere, a spherical cap, a rectangular theta/phi window,
    or a single direction. The analytic solid angle is cached at construction (4 pi for the full sphere,
    0 for a point). Factories validate their arguments and throw `std::invalid_argument`.
    MD!*/
    class SphericalMask
    {
    public:
        static SphericalMask full_sphere();
        static SphericalMask cap(const Direction &center, double half_angle_deg);
        static SphericalMask window(const Window &w);
        static SphericalMask point(const Direction &center);

        MaskKind kind() const;
        double solid_angle_sr() const { return solid_angle_sr_; }

        const Cap &as_cap() const { return std::get<Cap>(region_); }
        const Window &as_window() const { return std::get<Window>(region_); }
        const Point &as_point() const { return std::get<Point>(region_); }

        // Node-center membership: great-circle distance for caps, interval test for windows.
        bool contains(const Direction &d) const;

    private:
        using Region = std::variant<FullSphere, Cap, Window, Point>;
        SphericalMask(Region region, double solid_angle_sr) : region_(region), solid_angle_sr_(solid_angle_sr) {}

        Region region_;
        double solid_angle_sr_;
    };

    // Rectangular window centered on `center`: theta in [theta_c -+ theta_fov/2] clamped to [0, 180],
    // phi in [phi_c -+ phi_fov/2] normalized modulo 360 (phi_fov >= 360 keeps every azimuth).
    Window window_bounds(const Direction &center, double theta_fov_deg, double phi_fov_deg);

    // Analytic solid angle (steradians) on the unit sphere.
    double mask_solid_angle(const SphericalMask &m);

    // Zeroes both polarizations at nodes outside the mask; nodes inside keep their values bit-exactly.
    PolarizedPattern apply_mask(const PolarizedPattern &p, const SphericalMask &m);

    // Fraction of each grid cell's solid angle that lies inside the mask, in [0, 1]. Cells are the
    // theta/phi rectangles centred on the nodes (clipped at the poles). Point masks are rejected.
    Matrix coverage_weights(const AngularGrid &grid, const SphericalMask &m);

    // How cells on the mask boundary enter the CVRP sum.
    enum class CellWeighting
    {
        // Cells weighted by the fraction inside the mask; normalized by the area the same quadrature
        // assigns to the mask (scaled so the full sphere is exactly 4 pi).
        Coverage,
        // Binary membership at node centers; normalized by the analytic solid angle.
        NodeCenter
    };

    // Total radiated power: (dphi dtheta / 4 pi) sum_ij [E_theta + E_phi] sin(theta_i) over the grid.
    // The theta = 0 and theta = 180 rings are skipped (sin = 0). Linear units in and out.
    double trp(const PolarizedPattern &p);

    enum class PrpPreset
    {
        Uhrp,   // theta in [0, 90]
        N75prp, // theta in [60, 90]
        Nhprp   // theta in [60, 120]
    };

    std::pair<double, double> prp_band(PrpPreset preset);

    // Partial radiated power over the theta band, normalized by the full 4 pi.
    double prp(const PolarizedPattern &p, double theta1_deg, double theta2_deg,
               CellWeighting weighting = CellWeighting::Coverage);
    double prp(const PolarizedPattern &p, PrpPreset preset, CellWeighting weighting = CellWeighting::Coverage);

    struct CvrpResult
    {
        double cvrp_mw = 0.0;
        double weighted_power_mw_sr = 0.0; // dphi dtheta sum_ij w_ij E_ij sin(theta_i)
        double area_sr = 0.0;              // normalization area
    };

    // Constrained-view radiated power over a non-point mask. The full sphere reproduces trp() exactly.
    double cvrp(const PolarizedPattern &p, const SphericalMask &m, CellWeighting weighting = CellWeighting::Coverage);
    CvrpResult cvrp_detail(const PolarizedPattern &p, const SphericalMask &m,
                           CellWeighting weighting = CellWeighting::Coverage);

    // Degenerate field of view: the combined EIRP at the observation direction.
    double cvrp_point(const PolarizedPattern &p, const Direction &center);

    struct SweepEntry
    {
        double fov_half_angle_deg = 0.0;
        double cvrp_mw = 0.0;
    };

    struct CvrpSweep
    {
        std::vector<SweepEntry> entries;
        std::string pattern_label;
    };

    // {180, 165, 150, 135, 120, 105, 90, 60, 45, 30, 21, 15, 9, 6, 3, 0}
    const std::vector<double> &default_fov_half_angles();

    // Cap half-angles from the list (strictly decreasing, within [0, 180]). 180 gives TRP, 0 gives the
    // point EIRP at `center`.
    CvrpSweep cvrp_sweep(const PolarizedPattern &p, const Direction &center,
                         std::span<const double> half_angles_deg = default_fov_half_angles(),
                         CellWeighting weighting = CellWeighting::Coverage);
}

#endif
