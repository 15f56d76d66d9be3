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

#ifndef CVRP_PATTERN_HPP
#define CVRP_PATTERN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvrp/units.hpp"

namespace cvrp
{
    enum class Convention
    {
        Standard,       // theta in [0, 180], phi in [0, 360)
        DistributedAxes // theta in [-180, 180), phi in [0, 180]
    };

    const char *to_string(Convention c);

    // Dense row-major matrix, rows = theta samples, columns = phi samples.
    class Matrix
    {
    public:
        Matrix() = default;
        Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
            : rows_(rows), cols_(cols), data_(rows * cols, value) {}

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        double &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
        const std::vector<double> &data() const { return data_; }
        std::vector<double> &data() { return data_; }

        bool operator==(const Matrix &) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<double> data_;
    };

    // Observation direction in degrees. Use normalized() before interpreting it on a standard grid.
    struct Direction
    {
        double theta_deg = 0.0;
        double phi_deg = 0.0;

        // Clamps theta to [0, 180] and wraps phi to [0, 360).
        Direction normalized() const;
    };

    using UnitVector = std::array<double, 3>;

    UnitVector to_unit_vector(const Direction &d);

    // Inverse of to_unit_vector; at the poles phi is returned as 0.
    Direction from_unit_vector(const UnitVector &u);

    // Great-circle angle between two directions (degrees).
    double angular_distance_deg(const Direction &a, const Direction &b);

    /*!MD
    # AngularGrid
    Equispaced theta/phi sample axes of a far-field pattern.

    - Samples must be strictly increasing with constant step (within 1e-9 deg).
    - `Standard`: theta in [0, 180], phi in [0, 360).
    - `DistributedAxes`: theta in [-180, 180), phi in [0, 180] (roll-over-azimuth positioner).
    - Throws `std::invalid_argument` when any of the above is violated.
    MD!*/
    class AngularGrid
    {
    public:
        AngularGrid(std::vector<double> theta_deg, std::vector<double> phi_deg,
                    double dtheta_deg, double dphi_deg, Convention convention);

        // theta = {0, d, ..., 180}, phi = {0, d, ..., 360 - d}; steps must divide the spans.
        static AngularGrid standard(double dtheta_deg = 1.5, double dphi_deg = 1.5);

        // theta = {-180, ..., 180 - d}, phi = {0, ..., 180}.
        static AngularGrid distributed(double dtheta_deg = 1.5, double dphi_deg = 1.5);

        const std::vector<double> &theta_deg() const { return theta_; }
        const std::vector<double> &phi_deg() const { return phi_; }
        double dtheta_deg() const { return dtheta_; }
        double dphi_deg() const { return dphi_; }
        Convention convention() const { return convention_; }
        std::size_t n_theta() const { return theta_.size(); }
        std::size_t n_phi() const { return phi_.size(); }

        // Standard grid spanning theta 0..180 inclusive and phi 0..360 exclusive.
        bool is_complete_standard() const;

        // True when the phi axis closes on itself (n_phi * dphi == 360).
        bool phi_wraps() const;

        std::optional<std::size_t> theta_index(double theta_deg, double tol_deg = node_tolerance_deg) const;
        std::optional<std::size_t> phi_index(double phi_deg, double tol_deg = node_tolerance_deg) const;

        bool operator==(const AngularGrid &) const = default;

    private:
        std::vector<double> theta_;
        std::vector<double> phi_;
        double dtheta_;
        double dphi_;
        Convention convention_;
    };

    /*!MD
    # PolarizedPattern
    EIRP in two orthogonal polarizations (linear mW) sampled on an `AngularGrid`.

    Cells without source data are flagged unmeasured and hold 0 mW until `fill_unmeasured` assigns
    them a value. `metadata` carries free-form provenance written to pattern file headers.
    MD!*/
    class PolarizedPattern
    {
    public:
        PolarizedPattern(AngularGrid grid, Matrix eirp_theta_mw, Matrix eirp_phi_mw,
                         double frequency_hz = 0.0, std::string label = {});

        // As above, with explicit measured flags (1 = measured); unmeasured cells must be zero.
        PolarizedPattern(AngularGrid grid, Matrix eirp_theta_mw, Matrix eirp_phi_mw,
                         std::vector<std::uint8_t> measured, double frequency_hz, std::string label);

        // Same power in every cell.
        static PolarizedPattern constant(const AngularGrid &grid, double eirp_theta_mw, double eirp_phi_mw,
                                         double frequency_hz = 0.0, std::string label = {});

        const AngularGrid &grid() const { return grid_; }
        const Matrix &eirp_theta_mw() const { return theta_mw_; }
        const Matrix &eirp_phi_mw() const { return phi_mw_; }
        double frequency_hz() const { return frequency_hz_; }
        const std::string &label() const { return label_; }

        bool is_measured(std::size_t i, std::size_t j) const { return measured_[i * grid_.n_phi() + j] != 0; }
        const std::vector<std::uint8_t> &measured() const { return measured_; }
        std::size_t unmeasured_count() const;

        // eirp_theta + eirp_phi at node (i, j).
        double combined_at(std::size_t i, std::size_t j) const { return theta_mw_(i, j) + phi_mw_(i, j); }

        std::map<std::string, std::string> metadata;

        void set_label(std::string label) { label_ = std::move(label); }

    private:
        AngularGrid grid_;
        Matrix theta_mw_;
        Matrix phi_mw_;
        std::vector<std::uint8_t> measured_;
        double frequency_hz_;
        std::string label_;
    };

    struct PolarizedSample
    {
        double eirp_theta_mw = 0.0;
        double eirp_phi_mw = 0.0;
        double total_mw() const { return eirp_theta_mw + eirp_phi_mw; }
    };

    // Distributed-axes measurement to the standard grid with the same steps. Samples at (theta < 0, phi)
    // land on (-theta, phi + 180); samples with theta >= 0 land unchanged. Never-measured directions are
    // zero and flagged unmeasured. Duplicate samples of one direction must agree within 1e-9 relative.
    PolarizedPattern remap_to_standard(const PolarizedPattern &p);

    // Inverse of remap_to_standard onto the given distributed-axes grid; only measured cells are carried.
    PolarizedPattern remap_to_distributed(const PolarizedPattern &p, const AngularGrid &target);

    // Assigns fill_mw to both polarizations of every unmeasured cell and marks it measured.
    PolarizedPattern fill_unmeasured(const PolarizedPattern &p, double fill_mw = 0.0);

    // Bilinear interpolation in (theta, phi) on linear power. Phi wraps, theta clamps to the outer rings.
    PolarizedSample sample_bilinear(const PolarizedPattern &p, const Direction &d);

    // Resamples the pattern rotated by alpha_deg about the y-axis onto the same grid. A feature at
    // direction v moves to R_y(alpha) v, so alpha = -scan aligns a beam steered in the x-z plane with +z.
    // Per-polarization power is carried as a scalar; the polarization basis is not re-projected.
    PolarizedPattern rotate_about_y(const PolarizedPattern &p, double alpha_deg);

    // EIRP_theta + EIRP_phi at d (bilinear off-grid).
    double combined_eirp(const PolarizedPattern &p, const Direction &d);
}

#endif
