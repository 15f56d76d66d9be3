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

#include "cvrp/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace
{
    bool close_to(double a, double b, double tol) { return std::abs(a - b) <= tol; }

    void check_axis(const std::vector<double> &axis, double step, const char *name)
    {
        if (axis.empty())
            throw std::invalid_argument(std::string("Axis '") + name + "' is empty.");
        if (!(step > 0.0) || !std::isfinite(step))
            throw std::invalid_argument(std::string("Step of axis '") + name + "' must be positive.");
        for (std::size_t k = 0; k < axis.size(); ++k)
        {
            if (!std::isfinite(axis[k]))
                throw std::invalid_argument(std::string("Axis '") + name + "' contains a non-finite value.");
            if (k > 0 && !close_to(axis[k] - axis[k - 1], step, cvrp::node_tolerance_deg))
            {
                std::ostringstream msg;
                msg << "Axis '" << name << "' is not equispaced at index " << k << " (expected step " << step
                    << " deg, got " << axis[k] - axis[k - 1] << " deg).";
                throw std::invalid_argument(msg.str());
            }
        }
    }

    std::vector<double> make_axis(double start, std::size_t n, double step)
    {
        std::vector<double> axis(n);
        for (std::size_t k = 0; k < n; ++k)
            axis[k] = start + double(k) * step;
        return axis;
    }

    std::size_t divide_span(double span, double step, const char *name)
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw std::invalid_argument(std::string("Step '") + name + "' must be positive.");
        double n = std::round(span / step);
        if (n < 1.0 || !close_to(n * step, span, 1.0e-9 * std::max(1.0, span)))
        {
            std::ostringstream msg;
            msg << "Step '" << name << "' = " << step << " deg does not divide " << span << " deg evenly.";
            throw std::invalid_argument(msg.str());
        }
        return std::size_t(n);
    }

    bool same_power(double a, double b)
    {
        return std::abs(a - b) <= 1.0e-9 * std::max(std::abs(a), std::abs(b));
    }

    // Fractional index along an axis, snapped to the nearest node when within tolerance.
    double snapped_index(double offset_deg, double step)
    {
        double t = offset_deg / step;
        double r = std::round(t);
        if (std::abs(t - r) * step <= cvrp::node_tolerance_deg)
            return r;
        return t;
    }
}

const char *cvrp::to_string(Convention c)
{
    return c == Convention::Standard ? "standard" : "distributed";
}

cvrp::Direction cvrp::Direction::normalized() const
{
    return {std::clamp(theta_deg, 0.0, 180.0), wrap_360(phi_deg)};
}

cvrp::UnitVector cvrp::to_unit_vector(const Direction &d)
{
    double t = deg2rad(d.theta_deg), p = deg2rad(d.phi_deg);
    double st = std::sin(t);
    return {st * std::cos(p), st * std::sin(p), std::cos(t)};
}

cvrp::Direction cvrp::from_unit_vector(const UnitVector &u)
{
    double rho = std::hypot(u[0], u[1]);
    double theta = rad2deg(std::atan2(rho, u[2]));
    double phi = rho > 0.0 ? wrap_360(rad2deg(std::atan2(u[1], u[0]))) : 0.0;
    return {theta, phi};
}

double cvrp::angular_distance_deg(const Direction &a, const Direction &b)
{
    UnitVector u = to_unit_vector(a), v = to_unit_vector(b);
    double cx = u[1] * v[2] - u[2] * v[1];
    double cy = u[2] * v[0] - u[0] * v[2];
    double cz = u[0] * v[1] - u[1] * v[0];
    double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    return rad2deg(std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot));
}

// ---- AngularGrid --------------------------------------------------------

cvrp::AngularGrid::AngularGrid(std::vector<double> theta_deg, std::vector<double> phi_deg,
                               double dtheta_deg, double dphi_deg, Convention convention)
    : theta_(std::move(theta_deg)), phi_(std::move(phi_deg)), dtheta_(dtheta_deg), dphi_(dphi_deg),
      convention_(convention)
{
    check_axis(theta_, dtheta_, "theta");
    check_axis(phi_, dphi_, "phi");

    const double tol = node_tolerance_deg;
    if (convention_ == Convention::Standard)
    {
        if (theta_.front() < -tol || theta_.back() > 180.0 + tol)
            throw std::invalid_argument("Standard grid requires theta in [0, 180] deg.");
        if (phi_.front() < -tol || phi_.back() >= 360.0 - tol)
            throw std::invalid_argument("Standard grid requires phi in [0, 360) deg.");
    }
    else
    {
        if (theta_.front() < -180.0 - tol || theta_.back() >= 180.0 - tol)
            throw std::invalid_argument("Distributed-axes grid requires theta in [-180, 180) deg.");
        if (phi_.front() < -tol || phi_.back() > 180.0 + tol)
            throw std::invalid_argument("Distributed-axes grid requires phi in [0, 180] deg.");
    }
}

cvrp::AngularGrid cvrp::AngularGrid::standard(double dtheta_deg, double dphi_deg)
{
    std::size_t nt = divide_span(180.0, dtheta_deg, "dtheta_deg");
    std::size_t np = divide_span(360.0, dphi_deg, "dphi_deg");
    auto theta = make_axis(0.0, nt + 1, dtheta_deg);
    theta.back() = 180.0;
    return AngularGrid(std::move(theta), make_axis(0.0, np, dphi_deg), dtheta_deg, dphi_deg, Convention::Standard);
}

cvrp::AngularGrid cvrp::AngularGrid::distributed(double dtheta_deg, double dphi_deg)
{
    std::size_t nt = divide_span(360.0, dtheta_deg, "dtheta_deg");
    std::size_t np = divide_span(180.0, dphi_deg, "dphi_deg");
    auto phi = make_axis(0.0, np + 1, dphi_deg);
    phi.back() = 180.0;
    return AngularGrid(make_axis(-180.0, nt, dtheta_deg), std::move(phi), dtheta_deg, dphi_deg,
                       Convention::DistributedAxes);
}

bool cvrp::AngularGrid::phi_wraps() const
{
    return close_to(double(phi_.size()) * dphi_, 360.0, 1.0e-7);
}

bool cvrp::AngularGrid::is_complete_standard() const
{
    const double tol = node_tolerance_deg;
    return convention_ == Convention::Standard && close_to(theta_.front(), 0.0, tol) &&
           close_to(theta_.back(), 180.0, tol) && close_to(phi_.front(), 0.0, tol) && phi_wraps();
}

std::optional<std::size_t> cvrp::AngularGrid::theta_index(double theta_deg, double tol_deg) const
{
    double k = std::round((theta_deg - theta_.front()) / dtheta_);
    if (k < 0.0 || k >= double(theta_.size()))
        return std::nullopt;
    std::size_t i = std::size_t(k);
    if (!close_to(theta_[i], theta_deg, tol_deg))
        return std::nullopt;
    return i;
}

std::optional<std::size_t> cvrp::AngularGrid::phi_index(double phi_deg, double tol_deg) const
{
    double offset = phi_deg - phi_.front();
    if (phi_wraps())
        offset = wrap_360(offset);
    double k = std::round(offset / dphi_);
    if (phi_wraps() && k >= double(phi_.size()))
        k -= double(phi_.size());
    if (k < 0.0 || k >= double(phi_.size()))
        return std::nullopt;
    std::size_t j = std::size_t(k);
    double diff = offset - double(j) * dphi_;
    if (phi_wraps())
        diff = std::remainder(diff, 360.0);
    if (std::abs(diff) > tol_deg)
        return std::nullopt;
    return j;
}

// ---- PolarizedPattern ---------------------------------------------------

cvrp::PolarizedPattern::PolarizedPattern(AngularGrid grid, Matrix eirp_theta_mw, Matrix eirp_phi_mw,
                                         double frequency_hz, std::string label)
    : PolarizedPattern(grid, std::move(eirp_theta_mw), std::move(eirp_phi_mw),
                       std::vector<std::uint8_t>(grid.n_theta() * grid.n_phi(), 1), frequency_hz,
                       std::move(label))
{
}

cvrp::PolarizedPattern::PolarizedPattern(AngularGrid grid, Matrix eirp_theta_mw, Matrix eirp_phi_mw,
                                         std::vector<std::uint8_t> measured, double frequency_hz,
                                         std::string label)
    : grid_(std::move(grid)), theta_mw_(std::move(eirp_theta_mw)), phi_mw_(std::move(eirp_phi_mw)),
      measured_(std::move(measured)), frequency_hz_(frequency_hz), label_(std::move(label))
{
    const std::size_t nt = grid_.n_theta(), np = grid_.n_phi();
    if (theta_mw_.rows() != nt || theta_mw_.cols() != np || phi_mw_.rows() != nt || phi_mw_.cols() != np)
        throw std::invalid_argument("Pattern matrix dimensions do not match the grid axes.");
    if (measured_.size() != nt * np)
        throw std::invalid_argument("Measured-flag count does not match the grid size.");
    if (!std::isfinite(frequency_hz_) || frequency_hz_ < 0.0)
        throw std::invalid_argument("Frequency must be finite and non-negative.");

    for (std::size_t k = 0; k < nt * np; ++k)
    {
        double a = theta_mw_.data()[k], b = phi_mw_.data()[k];
        if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
        {
            std::ostringstream msg;
            msg << "EIRP must be finite and non-negative (theta = " << grid_.theta_deg()[k / np]
                << " deg, phi = " << grid_.phi_deg()[k % np] << " deg).";
            throw std::invalid_argument(msg.str());
        }
        if (measured_[k] == 0 && (a != 0.0 || b != 0.0))
            throw std::invalid_argument("Unmeasured cells must hold 0 mW.");
    }
}

cvrp::PolarizedPattern cvrp::PolarizedPattern::constant(const AngularGrid &grid, double eirp_theta_mw,
                                                        double eirp_phi_mw, double frequency_hz, std::string label)
{
    return PolarizedPattern(grid, Matrix(grid.n_theta(), grid.n_phi(), eirp_theta_mw),
                            Matrix(grid.n_theta(), grid.n_phi(), eirp_phi_mw), frequency_hz, std::move(label));
}

std::size_t cvrp::PolarizedPattern::unmeasured_count() const
{
    return std::size_t(std::count(measured_.begin(), measured_.end(), std::uint8_t(0)));
}

// ---- Remapping ----------------------------------------------------------

cvrp::PolarizedPattern cvrp::remap_to_standard(const PolarizedPattern &p)
{
    const AngularGrid &in = p.grid();
    if (in.convention() != Convention::DistributedAxes)
        throw std::invalid_argument("remap_to_standard expects a distributed-axes pattern.");

    AngularGrid out = AngularGrid::standard(in.dtheta_deg(), in.dphi_deg());
    const std::size_t nt = out.n_theta(), np = out.n_phi();
    Matrix eth(nt, np), eph(nt, np);
    std::vector<std::uint8_t> filled(nt * np, 0);
    const double tol = node_tolerance_deg;

    auto locate = [&](double theta_s, double phi_s) {
        auto ti = out.theta_index(theta_s);
        auto pj = out.phi_index(phi_s);
        if (!ti || !pj)
        {
            std::ostringstream msg;
            msg << "Distributed sample maps to (theta = " << theta_s << ", phi = " << phi_s
                << ") deg, which is not a node of the standard grid.";
            throw std::invalid_argument(msg.str());
        }
        return std::pair{*ti, *pj};
    };

    // Pole samples also cover the antipodal-azimuth cells of their pole ring; those only fill cells
    // that no direct sample reaches.
    std::vector<std::pair<std::size_t, std::size_t>> pole_src, pole_dst;

    for (std::size_t i = 0; i < in.n_theta(); ++i)
        for (std::size_t j = 0; j < in.n_phi(); ++j)
        {
            if (!p.is_measured(i, j))
                continue;
            double theta_d = in.theta_deg()[i], phi_d = in.phi_deg()[j];
            double theta_s = theta_d >= -tol ? std::abs(theta_d) : -theta_d;
            double phi_s = theta_d >= -tol ? phi_d : phi_d + 180.0;
            auto [ti, pj] = locate(theta_s, wrap_360(phi_s));
            bool at_pole = ti == 0 || ti + 1 == nt;

            std::size_t k = ti * np + pj;
            if (filled[k])
            {
                if (!at_pole && (!same_power(eth(ti, pj), p.eirp_theta_mw()(i, j)) ||
                                 !same_power(eph(ti, pj), p.eirp_phi_mw()(i, j))))
                {
                    std::ostringstream msg;
                    msg << "Conflicting duplicate samples for direction (theta = " << out.theta_deg()[ti]
                        << ", phi = " << out.phi_deg()[pj] << ") deg.";
                    throw std::invalid_argument(msg.str());
                }
                continue;
            }
            eth(ti, pj) = p.eirp_theta_mw()(i, j);
            eph(ti, pj) = p.eirp_phi_mw()(i, j);
            filled[k] = 1;

            if (at_pole)
            {
                pole_src.emplace_back(i, j);
                pole_dst.push_back(locate(out.theta_deg()[ti], wrap_360(phi_s + 180.0)));
            }
        }

    for (std::size_t n = 0; n < pole_src.size(); ++n)
    {
        auto [ti, pj] = pole_dst[n];
        auto [i, j] = pole_src[n];
        if (filled[ti * np + pj])
            continue;
        eth(ti, pj) = p.eirp_theta_mw()(i, j);
        eph(ti, pj) = p.eirp_phi_mw()(i, j);
        filled[ti * np + pj] = 1;
    }

    PolarizedPattern result(std::move(out), std::move(eth), std::move(eph), std::move(filled), p.frequency_hz(),
                            p.label());
    result.metadata = p.metadata;
    return result;
}

cvrp::PolarizedPattern cvrp::remap_to_distributed(const PolarizedPattern &p, const AngularGrid &target)
{
    if (p.grid().convention() != Convention::Standard)
        throw std::invalid_argument("remap_to_distributed expects a standard-convention pattern.");
    if (target.convention() != Convention::DistributedAxes)
        throw std::invalid_argument("remap_to_distributed needs a distributed-axes target grid.");

    const std::size_t nt = target.n_theta(), np = target.n_phi();
    Matrix eth(nt, np), eph(nt, np);
    std::vector<std::uint8_t> measured(nt * np, 0);
    const double tol = node_tolerance_deg;

    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j)
        {
            double theta_d = target.theta_deg()[i], phi_d = target.phi_deg()[j];
            double theta_s = theta_d >= -tol ? std::abs(theta_d) : -theta_d;
            double phi_s = theta_d >= -tol ? phi_d : phi_d + 180.0;
            auto ti = p.grid().theta_index(theta_s);
            auto pj = p.grid().phi_index(wrap_360(phi_s));
            if (!ti || !pj || !p.is_measured(*ti, *pj))
                continue;
            eth(i, j) = p.eirp_theta_mw()(*ti, *pj);
            eph(i, j) = p.eirp_phi_mw()(*ti, *pj);
            measured[i * np + j] = 1;
        }

    PolarizedPattern result(target, std::move(eth), std::move(eph), std::move(measured), p.frequency_hz(),
                            p.label());
    result.metadata = p.metadata;
    return result;
}

cvrp::PolarizedPattern cvrp::fill_unmeasured(const PolarizedPattern &p, double fill_mw)
{
    if (!(fill_mw >= 0.0) || !std::isfinite(fill_mw))
        throw std::invalid_argument("Fill power must be finite and non-negative.");

    Matrix eth = p.eirp_theta_mw(), eph = p.eirp_phi_mw();
    const std::size_t np = p.grid().n_phi();
    for (std::size_t k = 0; k < p.measured().size(); ++k)
        if (!p.measured()[k])
        {
            eth(k / np, k % np) = fill_mw;
            eph(k / np, k % np) = fill_mw;
        }

    PolarizedPattern result(p.grid(), std::move(eth), std::move(eph), p.frequency_hz(), p.label());
    result.metadata = p.metadata;
    return result;
}

// ---- Sampling and rotation ----------------------------------------------

cvrp::PolarizedSample cvrp::sample_bilinear(const PolarizedPattern &p, const Direction &d)
{
    const AngularGrid &g = p.grid();
    if (g.convention() != Convention::Standard)
        throw std::invalid_argument("sample_bilinear expects a standard-convention pattern.");
    if (!g.phi_wraps())
        throw std::invalid_argument("sample_bilinear needs a phi axis covering the full circle.");

    const Direction q = d.normalized();
    const std::size_t nt = g.n_theta(), np = g.n_phi();

    std::size_t i0 = 0;
    double a = 0.0;
    double t = snapped_index(q.theta_deg - g.theta_deg().front(), g.dtheta_deg());
    if (t >= double(nt - 1))
        i0 = nt - 1;
    else if (t > 0.0)
    {
        i0 = std::size_t(std::floor(t));
        a = t - double(i0);
    }

    double s = snapped_index(wrap_360(q.phi_deg - g.phi_deg().front()), g.dphi_deg());
    if (s >= double(np))
        s -= double(np);
    std::size_t j0 = std::min(std::size_t(std::floor(s)), np - 1);
    double b = s - double(j0);

    const Matrix &mt = p.eirp_theta_mw(), &mp = p.eirp_phi_mw();
    if (a == 0.0 && b == 0.0)
        return {mt(i0, j0), mp(i0, j0)};

    std::size_t i1 = std::min(i0 + 1, nt - 1), j1 = (j0 + 1) % np;
    auto interp = [&](const Matrix &m) {
        return (1.0 - a) * ((1.0 - b) * m(i0, j0) + b * m(i0, j1)) + a * ((1.0 - b) * m(i1, j0) + b * m(i1, j1));
    };
    return {interp(mt), interp(mp)};
}

double cvrp::combined_eirp(const PolarizedPattern &p, const Direction &d)
{
    return sample_bilinear(p, d).total_mw();
}

cvrp::PolarizedPattern cvrp::rotate_about_y(const PolarizedPattern &p, double alpha_deg)
{
    const AngularGrid &g = p.grid();
    if (g.convention() != Convention::Standard)
        throw std::invalid_argument("rotate_about_y expects a standard-convention pattern.");

    const double c = std::cos(deg2rad(alpha_deg)), s = std::sin(deg2rad(alpha_deg));
    const std::size_t nt = g.n_theta(), np = g.n_phi();
    Matrix eth(nt, np), eph(nt, np);

    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j)
        {
            UnitVector u = to_unit_vector({g.theta_deg()[i], g.phi_deg()[j]});
            // Source direction R_y(-alpha) u
            UnitVector v = {u[0] * c - u[2] * s, u[1], u[0] * s + u[2] * c};
            Direction src = from_unit_vector(v);
            if (std::hypot(v[0], v[1]) < 1.0e-12)
                src.phi_deg = g.phi_deg()[j];
            PolarizedSample smp = sample_bilinear(p, src);
            eth(i, j) = smp.eirp_theta_mw;
            eph(i, j) = smp.eirp_phi_mw;
        }

    PolarizedPattern result(g, std::move(eth), std::move(eph), p.frequency_hz(), p.label());
    result.metadata = p.metadata;
    return result;
}
