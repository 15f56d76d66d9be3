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

#include "cvrp/array_synth.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

const char *cvrp::to_string(ElementModel m)
{
    return m == ElementModel::Cosine ? "cosine" : "huygens";
}

void cvrp::ArraySpec::validate() const
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("Array needs at least one row and one column.");
    if (!(spacing_wl > 0.0) || !std::isfinite(spacing_wl))
        throw std::invalid_argument("Element spacing must be positive.");
    if (!(scan_angle_deg >= -45.0 && scan_angle_deg <= 45.0))
        throw std::invalid_argument("Scan angle must lie in [-45, 45] deg.");
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw std::invalid_argument("Frequency must be positive.");
    for (std::size_t e : failed_elements)
        if (e < 1 || e > element_count())
        {
            std::ostringstream msg;
            msg << "Failed element " << e << " is outside 1.." << element_count() << ".";
            throw std::invalid_argument(msg.str());
        }
}

std::pair<std::size_t, std::size_t> cvrp::ArraySpec::lattice_position(std::size_t element) const
{
    if (element < 1 || element > element_count())
        throw std::invalid_argument("Element number out of range.");
    std::size_t k = element - 1;
    if (numbering == ElementNumbering::RowMajor)
        return {k / cols, k % cols};
    return {k % rows, k / rows};
}

double cvrp::beam_scan_angle_deg(int beam)
{
    if (beam < 1 || beam > 21)
        throw std::invalid_argument("Beam index must lie in 1..21.");
    return -45.0 + 4.5 * double(beam - 1);
}

double cvrp::element_field(ElementModel model, double theta_deg)
{
    double c = std::cos(deg2rad(theta_deg));
    if (model == ElementModel::Cosine)
        return theta_deg < 90.0 ? c : 0.0;
    return 0.5 * (1.0 + c);
}

std::vector<std::complex<double>> cvrp::steering_weights(const ArraySpec &spec)
{
    spec.validate();
    const double s = std::sin(deg2rad(spec.scan_angle_deg));
    std::vector<std::complex<double>> w(spec.element_count());
    for (std::size_t e = 1; e <= spec.element_count(); ++e)
    {
        if (spec.failed_elements.contains(e))
            continue;
        auto [row, col] = spec.lattice_position(e);
        (void)row;
        w[e - 1] = std::polar(1.0, -2.0 * pi * spec.spacing_wl * double(col) * s);
    }
    return w;
}

cvrp::Matrix cvrp::radiation_intensity(const ArraySpec &spec, const AngularGrid &grid)
{
    spec.validate();
    if (grid.convention() != Convention::Standard)
        throw std::invalid_argument("Synthesis needs a standard-convention grid.");
    if (spec.failed_elements.size() == spec.element_count())
        throw std::invalid_argument("All elements failed; the array does not radiate.");

    const auto weights = steering_weights(spec);
    std::vector<double> x(spec.element_count()), y(spec.element_count());
    for (std::size_t e = 1; e <= spec.element_count(); ++e)
    {
        auto [row, col] = spec.lattice_position(e);
        x[e - 1] = double(col) * spec.spacing_wl;
        y[e - 1] = double(row) * spec.spacing_wl;
    }

    Matrix u(grid.n_theta(), grid.n_phi());
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
    {
        const double theta = grid.theta_deg()[i];
        const double ef = element_field(spec.element, theta);
        if (ef == 0.0)
            continue;
        const double st = std::sin(deg2rad(theta));
        for (std::size_t j = 0; j < grid.n_phi(); ++j)
        {
            const double phi = deg2rad(grid.phi_deg()[j]);
            const double ux = st * std::cos(phi), uy = st * std::sin(phi);
            std::complex<double> af = 0.0;
            for (std::size_t e = 0; e < weights.size(); ++e)
                if (weights[e] != 0.0)
                    af += weights[e] * std::polar(1.0, 2.0 * pi * (x[e] * ux + y[e] * uy));
            u(i, j) = std::norm(af * ef);
        }
    }
    return u;
}

namespace
{
    // Linear directivity from intensity: 4 pi U / (dtheta dphi sum U sin(theta)).
    cvrp::Matrix normalize_directivity(const cvrp::Matrix &u, const cvrp::AngularGrid &grid)
    {
        using namespace cvrp;
        CompensatedSum sum;
        for (std::size_t i = 0; i < grid.n_theta(); ++i)
        {
            double theta = grid.theta_deg()[i];
            if (theta <= node_tolerance_deg || theta >= 180.0 - node_tolerance_deg)
                continue;
            double s = std::sin(deg2rad(theta));
            for (std::size_t j = 0; j < grid.n_phi(); ++j)
                sum.add(u(i, j) * s);
        }
        double total = deg2rad(grid.dtheta_deg()) * deg2rad(grid.dphi_deg()) * sum.value();
        if (!(total > 0.0))
            throw std::invalid_argument("Pattern radiates no power on the grid.");
        Matrix d(u.rows(), u.cols());
        for (std::size_t k = 0; k < u.data().size(); ++k)
            d.data()[k] = four_pi * u.data()[k] / total;
        return d;
    }
}

cvrp::Matrix cvrp::synthesize_directivity(const ArraySpec &spec, const AngularGrid &grid)
{
    Matrix d = normalize_directivity(radiation_intensity(spec, grid), grid);
    for (double &v : d.data())
        v = mw_to_dbm(v); // 10 log10, -inf at zero
    return d;
}

cvrp::SynthesisResult cvrp::synthesize_eirp(const ArraySpec &spec, double reference_trp_mw, const AngularGrid &grid)
{
    if (!(reference_trp_mw > 0.0) || !std::isfinite(reference_trp_mw))
        throw std::invalid_argument("Reference TRP must be positive.");
    if (!grid.is_complete_standard())
        throw std::invalid_argument("Synthesis needs a complete standard grid.");

    Matrix d_lin = normalize_directivity(radiation_intensity(spec, grid), grid);
    Matrix d_dbi(d_lin.rows(), d_lin.cols()), eirp(d_lin.rows(), d_lin.cols());
    for (std::size_t k = 0; k < d_lin.data().size(); ++k)
    {
        d_dbi.data()[k] = mw_to_dbm(d_lin.data()[k]);
        // dBm + dBi is a product in linear units
        eirp.data()[k] = reference_trp_mw * d_lin.data()[k];
    }

    PolarizedPattern pattern(grid, std::move(eirp), Matrix(grid.n_theta(), grid.n_phi()), spec.frequency_hz,
                             describe(spec));
    pattern.metadata["element"] = to_string(spec.element);
    {
        std::ostringstream v;
        v.precision(12);
        v << spec.scan_angle_deg;
        pattern.metadata["scan_deg"] = v.str();
        v.str("");
        v << mw_to_dbm(reference_trp_mw);
        pattern.metadata["reference_trp_dbm"] = v.str();
        v.str("");
        v << spec.rows << "x" << spec.cols << " @ " << spec.spacing_wl << " wl";
        pattern.metadata["array"] = v.str();
    }
    if (!spec.failed_elements.empty())
    {
        std::string fe;
        for (std::size_t e : spec.failed_elements)
            fe += (fe.empty() ? "" : ",") + std::to_string(e);
        pattern.metadata["failed_elements"] = fe;
    }
    return {std::move(d_dbi), std::move(pattern), spec, reference_trp_mw};
}

cvrp::PolarizedPattern cvrp::rotate_to_boresight(const SynthesisResult &r)
{
    if (r.spec.scan_angle_deg == 0.0)
        return r.pattern;
    return rotate_about_y(r.pattern, -r.spec.scan_angle_deg);
}

std::string cvrp::describe(const ArraySpec &spec)
{
    std::ostringstream s;
    s << (spec.element == ElementModel::Cosine ? "CS" : "HS") << " scan " << spec.scan_angle_deg;
    if (spec.failed_elements.empty())
        s << " all-on";
    else
    {
        s << " FE ";
        bool first = true;
        for (auto it = spec.failed_elements.rbegin(); it != spec.failed_elements.rend(); ++it)
        {
            s << (first ? "" : "&") << *it;
            first = false;
        }
    }
    return s.str();
}
