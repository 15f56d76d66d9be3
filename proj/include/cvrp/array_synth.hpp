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

#ifndef CVRP_ARRAY_SYNTH_HPP
#define CVRP_ARRAY_SYNTH_HPP

#include <complex>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "cvrp/pattern.hpp"

namespace cvrp
{
    enum class ElementModel
    {
        Cosine, // field cos(theta) in the front hemisphere, no back radiation
        Huygens // field (1 + cos(theta)) / 2
    };

    const char *to_string(ElementModel m);

    // Maps 1-based element numbers onto the lattice.
    enum class ElementNumbering
    {
        RowMajor,   // elements 1..cols on row 1, cols+1..2*cols on row 2, ...
        ColumnMajor // elements 1..rows down column 1, ...
    };

    /*!MD
    # ArraySpec
    Uniformly excited planar array in the x-y plane radiating towards +z.

    Columns run along x and rows along y, both spaced `spacing_wl` wavelengths apart. Beams are steered
    along the column (x) axis, so a scan angle s points the beam at (sin s, 0, cos s). With the default
    `RowMajor` numbering on a 2 x 8 array, element 1 is row 1 column 1, element 8 is row 1 column 8 and
    element 9 is row 2 column 1. Failed elements are fed with zero amplitude.
    MD!*/
    struct ArraySpec
    {
        std::size_t rows = 2;
        std::size_t cols = 8;
        double spacing_wl = 0.5;
        ElementModel element = ElementModel::Cosine;
        double scan_angle_deg = 0.0;
        std::set<std::size_t> failed_elements;
        double frequency_hz = 28.0e9;
        ElementNumbering numbering = ElementNumbering::RowMajor;

        std::size_t element_count() const { return rows * cols; }

        // Throws std::invalid_argument on an out-of-range field.
        void validate() const;

        // 0-based (row, column) of a 1-based element number.
        std::pair<std::size_t, std::size_t> lattice_position(std::size_t element) const;
    };

    // Scan angle of beam k in the 21-beam codebook: -45 + 4.5 (k - 1) degrees, k in 1..21.
    double beam_scan_angle_deg(int beam);

    // Element field amplitude at polar angle theta from broadside (degrees).
    double element_field(ElementModel model, double theta_deg);

    // One complex weight per element (index = element number - 1). Column n gets phase
    // -2 pi spacing n sin(scan); failed elements get 0.
    std::vector<std::complex<double>> steering_weights(const ArraySpec &spec);

    // Radiation intensity |sum_e w_e f(theta) exp(j k r_e . u)|^2 on the grid (arbitrary scale).
    Matrix radiation_intensity(const ArraySpec &spec, const AngularGrid &grid);

    // Directivity in dBi (-inf where the intensity is zero), normalized so that the grid quadrature
    // dtheta dphi sum D sin(theta) equals 4 pi.
    Matrix synthesize_directivity(const ArraySpec &spec, const AngularGrid &grid = AngularGrid::standard());

    struct SynthesisResult
    {
        Matrix directivity_dbi;
        PolarizedPattern pattern;
        ArraySpec spec;
        double reference_trp_mw;
    };

    // EIRP[dBm] = TRP_ref[dBm] + D[dBi] in every cell, all power in the theta polarization.
    SynthesisResult synthesize_eirp(const ArraySpec &spec, double reference_trp_mw,
                                    const AngularGrid &grid = AngularGrid::standard());

    // Rotates a synthesized pattern about y by minus its scan angle so the steered beam sits at theta = 0.
    PolarizedPattern rotate_to_boresight(const SynthesisResult &r);

    // Short description such as "CS scan -45 FE 7&14".
    std::string describe(const ArraySpec &spec);
}

#endif
