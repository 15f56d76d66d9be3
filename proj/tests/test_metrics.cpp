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

#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "cvrp/array_synth.hpp"
#include "cvrp/metrics.hpp"
#include "cvrp/units.hpp"
#include "support/oracles.hpp"

using namespace cvrp;
using Catch::Approx;

namespace
{
    PolarizedPattern isotropic(double step = 1.5)
    {
        return PolarizedPattern::constant(AngularGrid::standard(step, step), 0.5, 0.5);
    }

    PolarizedPattern random_pattern(std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        return oracle::sample_on_grid(oracle::random_lobe_pattern(rng), AngularGrid::standard());
    }
}

TEST_CASE("window_bounds")
{
    Window w = window_bounds({90.0, 180.0}, 60.0, 60.0);
    CHECK(w.theta_min_deg == 60.0);
    CHECK(w.theta_max_deg == 120.0);
    CHECK(w.phi_min_deg == 150.0);
    CHECK(w.phi_max_deg == 210.0);

    w = window_bounds({0.0, 0.0}, 90.0, 360.0);
    CHECK(w.theta_min_deg == 0.0);
    CHECK(w.theta_max_deg == 45.0);
    CHECK(w.phi_extent_deg() == 360.0);

    w = window_bounds({60.0, 0.0}, 60.0, 360.0);
    CHECK(w.theta_min_deg == 30.0);
    CHECK(w.theta_max_deg == 90.0);

    w = window_bounds({45.0, 10.0}, 10.0, 40.0); // crosses phi = 0
    CHECK(w.phi_min_deg == 350.0);
    CHECK(w.phi_max_deg == 390.0);

    CHECK_THROWS_AS(window_bounds({0.0, 0.0}, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(window_bounds({0.0, 0.0}, 400.0, 10.0), std::invalid_argument);
}

TEST_CASE("SphericalMask - solid angles and validation")
{
    CHECK(mask_solid_angle(SphericalMask::full_sphere()) == four_pi);
    CHECK(mask_solid_angle(SphericalMask::cap({0.0, 0.0}, 90.0)) == Approx(2.0 * pi));
    CHECK(mask_solid_angle(SphericalMask::cap({10.0, 20.0}, 180.0)) == Approx(four_pi));
    CHECK(mask_solid_angle(SphericalMask::window({60.0, 90.0, 0.0, 360.0})) == Approx(pi));
    CHECK(mask_solid_angle(SphericalMask::point({10.0, 20.0})) == 0.0);
    CHECK(SphericalMask::cap({1, 2}, 30).kind() == MaskKind::Cap);

    CHECK_THROWS_AS(SphericalMask::cap({0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SphericalMask::cap({0, 0}, 181.0), std::invalid_argument);
    CHECK_THROWS_AS(SphericalMask::window({90.0, 60.0, 0.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(SphericalMask::window({0.0, 60.0, 10.0, 10.0}), std::invalid_argument);
}

TEST_CASE("apply_mask")
{
    PolarizedPattern iso = isotropic(15.0);
    const AngularGrid &g = iso.grid();
    CHECK(apply_mask(iso, SphericalMask::full_sphere()).eirp_theta_mw() == iso.eirp_theta_mw());

    PolarizedPattern up = apply_mask(iso, SphericalMask::cap({0.0, 0.0}, 90.0));
    PolarizedPattern band = apply_mask(iso, SphericalMask::window({60.0, 90.0, 0.0, 360.0}));
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
        {
            double t = g.theta_deg()[i];
            CHECK(up.combined_at(i, j) == (t <= 90.0 ? 1.0 : 0.0));
            CHECK(band.combined_at(i, j) == (t >= 60.0 && t <= 90.0 ? 1.0 : 0.0));
        }
    CHECK_THROWS_AS(apply_mask(iso, SphericalMask::point({0, 0})), std::invalid_argument);
}

TEST_CASE("coverage_weights - areas against closed forms")
{
    AngularGrid g = AngularGrid::standard();
    const double cell = deg2rad(1.5) * deg2rad(1.5);
    auto area = [&](const SphericalMask &m) {
        Matrix w = coverage_weights(g, m);
        double a = 0.0;
        for (std::size_t i = 0; i < g.n_theta(); ++i)
        {
            // exact solid angle of each cell ring, so the sum is the exact covered area
            double lo = std::max(0.0, g.theta_deg()[i] - 0.75), hi = std::min(180.0, g.theta_deg()[i] + 0.75);
            double ring = deg2rad(1.5) * (std::cos(deg2rad(lo)) - std::cos(deg2rad(hi)));
            for (std::size_t j = 0; j < g.n_phi(); ++j)
                a += w(i, j) * ring;
        }
        return a;
    };
    (void)cell;
    for (double beta : {3.0, 10.0, 45.0, 90.0, 137.0})
        for (Direction c : {Direction{0.0, 0.0}, Direction{37.3, 101.1}, Direction{90.0, 0.0}, Direction{178.0, 250.0}})
            CHECK(area(SphericalMask::cap(c, beta)) == Approx(2.0 * pi * (1.0 - std::cos(deg2rad(beta)))).epsilon(1e-5));
    CHECK(area(SphericalMask::window({12.3, 77.7, 350.0, 395.0})) ==
          Approx(deg2rad(45.0) * (std::cos(deg2rad(12.3)) - std::cos(deg2rad(77.7)))).epsilon(1e-9));
}

TEST_CASE("trp")
{
    CHECK(trp(isotropic()) == Approx(1.0).epsilon(2e-4));
    CHECK(trp(PolarizedPattern::constant(AngularGrid::standard(), 0.0, 0.0)) == 0.0);
    CHECK_THROWS_AS(trp(PolarizedPattern::constant(AngularGrid::distributed(), 1.0, 0.0)), std::invalid_argument);

    // 2x8 cosine array, peak EIRP 1 mW: compare with a 0.1 deg closed-form quadrature
    AngularGrid g = AngularGrid::standard();
    Matrix e(g.n_theta(), g.n_phi());
    double peak = oracle::array_power(2, 8, 0.5, 0.0, false, {0, 0, 1});
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
            e(i, j) = oracle::array_power(2, 8, 0.5, 0.0, false, oracle::unit(g.theta_deg()[i], g.phi_deg()[j])) / peak;
    double fine = oracle::sphere_integral(
                      [&](const oracle::Vec3 &u) { return oracle::array_power(2, 8, 0.5, 0.0, false, u) / peak; }, 1800, 3600) /
                  (4.0 * pi);
    CHECK(trp(PolarizedPattern(g, e, Matrix(g.n_theta(), g.n_phi()))) == Approx(fine).epsilon(0.005));
}

TEST_CASE("prp")
{
    PolarizedPattern iso = isotropic();
    CHECK(prp(iso, PrpPreset::Uhrp) == Approx(0.5).epsilon(1e-3));
    CHECK(prp(iso, PrpPreset::N75prp) == Approx(0.25).epsilon(1e-3));
    CHECK(prp(iso, PrpPreset::Nhprp) == Approx(0.5).epsilon(1e-3));
    CHECK(prp(iso, PrpPreset::Uhrp) > prp(iso, PrpPreset::N75prp));

    PolarizedPattern p = random_pattern(5);
    CHECK(prp(p, 0.0, 180.0) == trp(p));
    for (auto [a, b] : {std::pair{0.0, 30.0}, std::pair{45.0, 100.0}, std::pair{170.0, 180.0}})
        CHECK(prp(p, a, b) <= trp(p));
    CHECK_THROWS_AS(prp(p, 90.0, 90.0), std::invalid_argument);
    CHECK_THROWS_AS(prp(p, 100.0, 90.0), std::invalid_argument);
}

TEST_CASE("cvrp - limiting cases and isotropic flatness")
{
    for (std::uint64_t s = 0; s < 5; ++s)
    {
        PolarizedPattern p = random_pattern(100 + s);
        CHECK(cvrp::cvrp(p, SphericalMask::full_sphere()) == trp(p));
        CHECK(cvrp::cvrp(p, SphericalMask::cap({30.0, 40.0}, 180.0)) == trp(p));
        CHECK(cvrp::cvrp(p, SphericalMask::full_sphere(), CellWeighting::NodeCenter) == trp(p));
        CHECK(cvrp_point(p, {33.0, 44.0}) == combined_eirp(p, {33.0, 44.0}));
    }

    PolarizedPattern iso = isotropic();
    for (Direction c : {Direction{0.0, 0.0}, Direction{90.0, 45.0}, Direction{180.0, 0.0}, Direction{61.7, 222.2}})
        for (double b : default_fov_half_angles())
        {
            if (b == 0.0)
                CHECK(cvrp_point(iso, c) == 1.0);
            else
                CHECK(cvrp::cvrp(iso, SphericalMask::cap(c, b)) == Approx(trp(iso)).epsilon(1e-12));
        }
    CHECK(cvrp::cvrp(iso, SphericalMask::window({10.0, 20.0, 5.0, 17.0})) == Approx(trp(iso)).epsilon(1e-12));
    CHECK_THROWS_AS(cvrp::cvrp(iso, SphericalMask::point({0, 0})), std::invalid_argument);
}

TEST_CASE("cvrp - node-center weighting is the literal masked sum over the analytic area")
{
    PolarizedPattern p = random_pattern(9);
    SphericalMask m = SphericalMask::cap({50.0, 80.0}, 20.0);
    const AngularGrid &g = p.grid();
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
            if (angular_distance_deg({g.theta_deg()[i], g.phi_deg()[j]}, {50.0, 80.0}) <= 20.0)
                sum += p.combined_at(i, j) * std::sin(deg2rad(g.theta_deg()[i]));
    double expect = deg2rad(1.5) * deg2rad(1.5) * sum / m.solid_angle_sr();
    CHECK(cvrp::cvrp(p, m, CellWeighting::NodeCenter) == Approx(expect).epsilon(1e-12));
}

TEST_CASE("cvrp - agrees with a fine-grid cap oracle")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 6; ++k)
    {
        oracle::LobePattern lp = oracle::random_lobe_pattern(rng);
        PolarizedPattern p = oracle::sample_on_grid(lp, AngularGrid::standard());
        Direction c{180.0 * u(rng), 360.0 * u(rng)};
        double beta = 5.0 + 100.0 * u(rng);
        double want = oracle::cap_mean([&](const oracle::Vec3 &v) { return lp.total_mw(v); }, c.theta_deg, c.phi_deg,
                                       beta, 600, 600);
        CHECK(cvrp::cvrp(p, SphericalMask::cap(c, beta)) == Approx(want).epsilon(2e-3));
    }
}

TEST_CASE("cvrp - Huygens boresight beam, 30 deg cap, Monte Carlo within 1%")
{
    ArraySpec spec;
    spec.element = ElementModel::Huygens;
    SynthesisResult r = synthesize_eirp(spec, 1.0);
    double norm = 0.0;
    {
        // scale of the closed form: EIRP = TRP_ref * 4 pi U / integral(U)
        norm = 4.0 * pi /
               oracle::sphere_integral([](const oracle::Vec3 &v) { return oracle::array_power(2, 8, 0.5, 0.0, true, v); },
                                       1200, 2400);
    }
    std::mt19937_64 rng(31);
    auto mc = oracle::cap_monte_carlo(
        [&](const oracle::Vec3 &v) { return norm * oracle::array_power(2, 8, 0.5, 0.0, true, v); }, 0.0, 0.0, 30.0,
        1000000, rng);
    CHECK(cvrp::cvrp(r.pattern, SphericalMask::cap({0.0, 0.0}, 30.0)) == Approx(mc.mean).epsilon(0.01));
}

TEST_CASE("cvrp - additivity over disjoint windows")
{
    PolarizedPattern p = random_pattern(77);
    for (CellWeighting wt : {CellWeighting::Coverage, CellWeighting::NodeCenter})
    {
        auto d1 = cvrp_detail(p, SphericalMask::window({30.0, 60.0, 0.0, 90.0}), wt);
        auto d2 = cvrp_detail(p, SphericalMask::window({30.0, 60.0, 90.0, 200.0}), wt);
        auto d = cvrp_detail(p, SphericalMask::window({30.0, 60.0, 0.0, 200.0}), wt);
        // node-center membership puts the shared phi = 90 boundary nodes in both halves
        if (wt == CellWeighting::NodeCenter)
            continue;
        CHECK(d.cvrp_mw * d.area_sr ==
              Approx(d1.cvrp_mw * d1.area_sr + d2.cvrp_mw * d2.area_sr).epsilon(1e-12));
    }
    auto t1 = cvrp_detail(p, SphericalMask::window({10.0, 50.5, 20.0, 80.0}));
    auto t2 = cvrp_detail(p, SphericalMask::window({50.5, 120.0, 20.0, 80.0}));
    auto t = cvrp_detail(p, SphericalMask::window({10.0, 120.0, 20.0, 80.0}));
    CHECK(t.weighted_power_mw_sr == Approx(t1.weighted_power_mw_sr + t2.weighted_power_mw_sr).epsilon(1e-12));
    CHECK(t.area_sr == Approx(t1.area_sr + t2.area_sr).epsilon(1e-12));
}

TEST_CASE("cvrp - scale equivariance")
{
    PolarizedPattern p = random_pattern(13);
    const AngularGrid &g = p.grid();
    for (double c : {0.0, 0.37, 5.0, 1.0e6})
    {
        Matrix a = p.eirp_theta_mw(), b = p.eirp_phi_mw();
        for (double &v : a.data())
            v *= c;
        for (double &v : b.data())
            v *= c;
        PolarizedPattern q(g, a, b);
        SphericalMask m = SphericalMask::cap({120.0, 300.0}, 40.0);
        CHECK(cvrp::cvrp(q, m) == Approx(c * cvrp::cvrp(p, m)).epsilon(1e-12).margin(1e-300));
    }
}

TEST_CASE("cvrp - delta-like pattern scales as one over the area")
{
    AngularGrid g = AngularGrid::standard();
    Matrix a(g.n_theta(), g.n_phi());
    a(20, 40) = 10.0; // theta 30, phi 60
    PolarizedPattern p(g, a, Matrix(g.n_theta(), g.n_phi()));
    const double mass = deg2rad(1.5) * deg2rad(1.5) * 10.0 * std::sin(deg2rad(30.0));
    for (double b : {3.0, 6.0, 9.0, 30.0, 90.0, 150.0})
    {
        auto d = cvrp_detail(p, SphericalMask::cap({30.0, 60.0}, b));
        CHECK(d.cvrp_mw * d.area_sr == Approx(mass).epsilon(1e-12));
        CHECK(d.area_sr == Approx(2.0 * pi * (1.0 - std::cos(deg2rad(b)))).epsilon(1e-3));
    }
}

TEST_CASE("cvrp_point and cvrp_sweep")
{
    ArraySpec spec;
    SynthesisResult r = synthesize_eirp(spec, 1.0);
    double peak = *std::max_element(r.pattern.eirp_theta_mw().data().begin(), r.pattern.eirp_theta_mw().data().end());
    CHECK(cvrp_point(r.pattern, {0.0, 0.0}) == peak);
    CHECK(cvrp_point(r.pattern, {150.0, 10.0}) == 0.0);

    for (ElementModel m : {ElementModel::Cosine, ElementModel::Huygens})
    {
        spec.element = m;
        CvrpSweep s = cvrp_sweep(synthesize_eirp(spec, 1.0).pattern, {0.0, 0.0});
        REQUIRE(s.entries.size() == 16);
        CHECK(s.entries.front().cvrp_mw == Approx(1.0).epsilon(0.005));
        CHECK(s.entries.back().fov_half_angle_deg == 0.0);
        for (std::size_t k = 1; k < s.entries.size(); ++k)
            CHECK(s.entries[k].cvrp_mw >= s.entries[k - 1].cvrp_mw - 1e-9);
        CHECK(s.pattern_label == describe(spec));
    }

    for (const auto &e : cvrp_sweep(isotropic(), {10.0, 20.0}).entries)
        CHECK(e.cvrp_mw == Approx(1.0).epsilon(0.01));

    PolarizedPattern iso = isotropic();
    std::vector<double> dup = {90.0, 90.0}, up = {30.0, 60.0}, out = {200.0};
    CHECK_THROWS_AS(cvrp_sweep(iso, {0, 0}, dup), std::invalid_argument);
    CHECK_THROWS_AS(cvrp_sweep(iso, {0, 0}, up), std::invalid_argument);
    CHECK_THROWS_AS(cvrp_sweep(iso, {0, 0}, out), std::invalid_argument);
}
