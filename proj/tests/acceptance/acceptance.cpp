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

// Acceptance suite: one line per criterion, non-zero exit if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvrp/array_synth.hpp"
#include "cvrp/cli.hpp"
#include "cvrp/diagnostics.hpp"
#include "cvrp/metrics.hpp"
#include "cvrp/pattern.hpp"
#include "cvrp/pattern_io.hpp"
#include "cvrp/units.hpp"
#include "../support/oracles.hpp"

namespace
{
    using namespace cvrp;

    constexpr std::uint64_t seed = 20261016;

    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    std::string fmt(const char *f, double a)
    {
        char buf[128];
        std::snprintf(buf, sizeof(buf), f, a);
        return buf;
    }

    double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

    std::vector<double> sweep_db(const CvrpSweep &s)
    {
        std::vector<double> v;
        for (const auto &e : s.entries)
            v.push_back(mw_to_dbm_floored(e.cvrp_mw));
        return v;
    }

    CvrpSweep boresight_sweep(ElementModel m, double scan, std::set<std::size_t> failed = {})
    {
        ArraySpec spec;
        spec.element = m;
        spec.scan_angle_deg = scan;
        spec.failed_elements = std::move(failed);
        return cvrp_sweep(rotate_to_boresight(synthesize_eirp(spec, 1.0)), {0.0, 0.0});
    }

    // 1. Limiting cases ---------------------------------------------------------
    Outcome limiting_cases()
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const AngularGrid grid = AngularGrid::standard();
        double worst = 0.0;
        std::size_t point_mismatch = 0;
        for (int k = 0; k < 10; ++k)
        {
            PolarizedPattern p = oracle::sample_on_grid(oracle::random_lobe_pattern(rng), grid);
            worst = std::max(worst, rel(cvrp::cvrp(p, SphericalMask::full_sphere()), trp(p)));
            for (int c = 0; c < 10; ++c)
            {
                Direction d{180.0 * u(rng), 360.0 * u(rng)};
                if (cvrp_point(p, d) != combined_eirp(p, d))
                    ++point_mismatch;
            }
        }
        return {worst <= 1.0e-12 && point_mismatch == 0,
                "max |cvrp(full) - trp| / trp = " + fmt("%.2e", worst) + ", point mismatches " +
                    std::to_string(point_mismatch) + " / 100"};
    }

    // 2. Isotropic flatness and PRP bias -----------------------------------------
    Outcome isotropic_flatness()
    {
        PolarizedPattern iso = PolarizedPattern::constant(AngularGrid::standard(), 0.5, 0.5);
        double worst = 0.0;
        for (const auto &e : cvrp_sweep(iso, {0.0, 0.0}).entries)
            worst = std::max(worst, rel(e.cvrp_mw, 1.0));
        // off-pole centers as well
        for (const auto &e : cvrp_sweep(iso, {73.0, 211.0}).entries)
            worst = std::max(worst, rel(e.cvrp_mw, 1.0));
        double uhrp = prp(iso, PrpPreset::Uhrp), n75 = prp(iso, PrpPreset::N75prp);
        bool ok = worst <= 0.01 && rel(uhrp, 0.5) <= 1.0e-3 && rel(n75, 0.25) <= 1.0e-3;
        return {ok, "max CVRP deviation " + fmt("%.2e", worst) + ", UHRP " + fmt("%.6f", uhrp) + " mW, N75PRP " +
                        fmt("%.6f", n75) + " mW"};
    }

    // 3. Monte Carlo oracle ---------------------------------------------------
    Outcome monte_carlo()
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const AngularGrid grid = AngularGrid::standard();
        int passed = 0;
        double worst_sigma = 0.0;
        for (int k = 0; k < 20; ++k)
        {
            oracle::LobePattern lp = oracle::random_lobe_pattern(rng);
            PolarizedPattern p = oracle::sample_on_grid(lp, grid);

            // Cap of 5..90 deg whose center lies within one half-angle of a lobe axis, so the cap
            // always contains pattern structure.
            double beta = 5.0 + 85.0 * u(rng);
            const oracle::Vec3 &axis = lp.lobes[std::size_t(u(rng) * double(lp.lobes.size()))].axis;
            Direction a = from_unit_vector({axis[0], axis[1], axis[2]});
            oracle::Vec3 local = oracle::unit(beta * u(rng), 360.0 * u(rng));
            oracle::Vec3 c = oracle::cap_to_global(local, a.theta_deg, a.phi_deg);
            Direction center = from_unit_vector({c[0], c[1], c[2]});

            double riemann = cvrp::cvrp(p, SphericalMask::cap(center, beta));
            oracle::McEstimate mc = oracle::cap_monte_carlo([&](const oracle::Vec3 &v) { return lp.total_mw(v); },
                                                            center.theta_deg, center.phi_deg, beta, 1000000, rng);
            double sigmas = std::abs(riemann - mc.mean) / mc.standard_error;
            worst_sigma = std::max(worst_sigma, sigmas);
            if (sigmas <= 3.0)
                ++passed;
        }
        return {passed == 20, std::to_string(passed) + " / 20 within 3 sigma, worst " + fmt("%.2f", worst_sigma) + " sigma"};
    }

    // 4. Element anchors -----------------------------------------------------
    Outcome element_anchors()
    {
        std::string detail;
        bool ok = true;
        for (auto [m, closed] : {std::pair{ElementModel::Cosine, 6.0}, std::pair{ElementModel::Huygens, 3.0}})
        {
            ArraySpec spec;
            spec.rows = spec.cols = 1;
            spec.element = m;
            Matrix d = synthesize_directivity(spec);
            double peak = *std::max_element(d.data().begin(), d.data().end());
            double err = std::abs(peak - 10.0 * std::log10(closed));
            ok = ok && err <= 0.05;
            detail += std::string(to_string(m)) + " " + fmt("%.4f", peak) + " dBi (err " + fmt("%.4f", err) + " dB) ";
        }
        return {ok, detail};
    }

    // 5. Boresight sweep trends -------------------------------------------------------
    Outcome fig5_trends()
    {
        bool monotone = true, ordering = true, converge = true;
        double worst_trp = 0.0;
        for (double scan : {0.0, -4.5, -45.0})
        {
            CvrpSweep cs = boresight_sweep(ElementModel::Cosine, scan);
            CvrpSweep hs = boresight_sweep(ElementModel::Huygens, scan);
            for (const CvrpSweep *s : {&cs, &hs})
            {
                // entries run from the widest FoV to the point: values must not drop
                for (std::size_t k = 1; k < s->entries.size(); ++k)
                    if (s->entries[k].cvrp_mw < s->entries[k - 1].cvrp_mw - 1.0e-9)
                        monotone = false;
                double t = s->entries.front().cvrp_mw;
                worst_trp = std::max(worst_trp, rel(t, 1.0));
                converge = converge && rel(t, 1.0) <= 0.005;
            }
            for (std::size_t k = 0; k < cs.entries.size(); ++k)
                if (cs.entries[k].fov_half_angle_deg <= 30.0 && cs.entries[k].cvrp_mw < hs.entries[k].cvrp_mw)
                    ordering = false;
        }
        return {monotone && ordering && converge,
                std::string("monotone ") + (monotone ? "yes" : "no") + ", cosine >= Huygens for FoV <= 30: " +
                    (ordering ? "yes" : "no") + ", max |CVRP(180) - TRP_ref| / TRP_ref " + fmt("%.2e", worst_trp)};
    }

    // 6. Scan loss -------------------------------------------------------------
    Outcome scan_loss()
    {
        bool ok = true;
        std::string detail;
        for (ElementModel m : {ElementModel::Cosine, ElementModel::Huygens})
        {
            std::vector<double> a = sweep_db(boresight_sweep(m, 0.0)), b = sweep_db(boresight_sweep(m, -45.0));
            const auto &fov = default_fov_half_angles();
            std::vector<double> gap(a.size());
            for (std::size_t k = 0; k < a.size(); ++k)
                gap[k] = a[k] - b[k];

            // least-squares slope of the gap against FoV
            double mx = 0.0, my = 0.0;
            for (std::size_t k = 0; k < gap.size(); ++k)
                mx += fov[k], my += gap[k];
            mx /= double(gap.size()), my /= double(gap.size());
            double sxy = 0.0, sxx = 0.0;
            for (std::size_t k = 0; k < gap.size(); ++k)
                sxy += (fov[k] - mx) * (gap[k] - my), sxx += (fov[k] - mx) * (fov[k] - mx);
            double slope = sxy / sxx;
            double wide_rel = std::abs(std::pow(10.0, gap.front() / 10.0) - 1.0);

            bool lower = b.back() < a.back();
            ok = ok && lower && slope < 0.0 && wide_rel < 0.005;
            detail += std::string(to_string(m)) + ": point gap " + fmt("%.3f", gap.back()) + " dB, slope " +
                      fmt("%.2e", slope) + " dB/deg, gap(180) " + fmt("%.3f", 100.0 * wide_rel) + "% ";
        }
        return {ok, detail};
    }

    // 7. Fault divergence ------------------------------------------------------
    Outcome fault_divergence()
    {
        bool ok = true, any_flag = false;
        std::string detail;
        for (double scan : {0.0, -45.0})
        {
            SweepComparison c = compare_sweeps(boresight_sweep(ElementModel::Cosine, scan),
                                               boresight_sweep(ElementModel::Cosine, scan, {14, 7}));
            double narrow = 0.0, wide = std::abs(c.delta_db.front());
            for (std::size_t k = 0; k < c.fov_deg.size(); ++k)
                if (c.fov_deg[k] <= 30.0)
                    narrow = std::max(narrow, std::abs(c.delta_db[k]));
            ok = ok && narrow > wide && wide < 0.1;
            if (c.flagged && *c.divergence_fov_deg <= 30.0)
                any_flag = true;
            detail += "scan " + fmt("%g", scan) + ": narrow " + fmt("%.3f", narrow) + " dB, wide " + fmt("%.1e", wide) +
                      " dB, flagged " + (c.flagged ? "yes" : "no") + "; ";
        }
        return {ok && any_flag, detail};
    }

    // 8. Rotation fidelity -----------------------------------------------------
    // Parabolic refinement of the peak along the phi = 0 / 180 cut.
    double peak_offset_deg(const PolarizedPattern &p)
    {
        const AngularGrid &g = p.grid();
        std::size_t best_i = 0, best_j = 0;
        for (std::size_t i = 0; i < g.n_theta(); ++i)
            for (std::size_t j = 0; j < g.n_phi(); ++j)
                if (p.combined_at(i, j) > p.combined_at(best_i, best_j))
                    best_i = i, best_j = j;
        // signed angle in the x-z plane: positive towards phi = 0
        auto cut = [&](double x) {
            double phi = x >= 0.0 ? 0.0 : 180.0;
            return combined_eirp(p, {std::abs(x), phi});
        };
        double x0 = g.theta_deg()[best_i] * (std::abs(g.phi_deg()[best_j] - 180.0) < 90.0 ? -1.0 : 1.0);
        double h = g.dtheta_deg(), fm = cut(x0 - h), f0 = cut(x0), fp = cut(x0 + h);
        double denom = fm - 2.0 * f0 + fp;
        double x = denom < 0.0 ? x0 + 0.5 * h * (fm - fp) / denom : x0;
        return std::abs(x);
    }

    Outcome rotation_fidelity()
    {
        bool ok = true;
        std::string detail;
        for (ElementModel m : {ElementModel::Huygens, ElementModel::Cosine})
        {
            ArraySpec spec;
            spec.element = m;
            spec.scan_angle_deg = -45.0;
            SynthesisResult r = synthesize_eirp(spec, 1.0);
            PolarizedPattern aligned = rotate_to_boresight(r);
            PolarizedPattern back = rotate_about_y(aligned, spec.scan_angle_deg);

            double trp_db = std::abs(mw_to_dbm(trp(back)) - mw_to_dbm(trp(r.pattern)));
            double peak = *std::max_element(r.pattern.eirp_theta_mw().data().begin(), r.pattern.eirp_theta_mw().data().end());
            double worst_cell = 0.0;
            for (std::size_t k = 0; k < back.eirp_theta_mw().data().size(); ++k)
            {
                double ref = r.pattern.eirp_theta_mw().data()[k];
                if (ref >= 0.5 * peak)
                    worst_cell = std::max(worst_cell, std::abs(back.eirp_theta_mw().data()[k] - ref) / ref);
            }
            double offset = peak_offset_deg(aligned);
            // the Huygens beam carries the criterion; the cosine beam is reported for reference
            if (m == ElementModel::Huygens)
                ok = trp_db <= 0.1 && worst_cell <= 0.05 && offset <= 1.5;
            detail += std::string(m == ElementModel::Huygens ? "" : "[info] ") + to_string(m) + ": round-trip TRP " +
                      fmt("%.4f", trp_db) + " dB, main-lobe cell error " + fmt("%.2f", 100.0 * worst_cell) +
                      "%, aligned peak " + fmt("%.2f", offset) + " deg; ";
        }
        return {ok, detail};
    }

    // 9. Format and CLI determinism ------------------------------------------------
    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    }

    Outcome format_determinism()
    {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / ("cvrp_acceptance_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);

        ArraySpec spec;
        spec.scan_angle_deg = -4.5;
        spec.failed_elements = {7, 14};
        PolarizedPattern p = synthesize_eirp(spec, dbm_to_mw(3.0)).pattern;
        write_pattern(p, dir / "a.csv");
        PolarizedPattern q = read_pattern(dir / "a.csv");
        write_pattern(q, dir / "b.csv");
        bool bytes = slurp(dir / "a.csv") == slurp(dir / "b.csv");
        // the file is a fixed point: reading the rewritten file gives the same doubles
        PolarizedPattern q2 = read_pattern(dir / "b.csv");
        bool values = q2.eirp_theta_mw() == q.eirp_theta_mw() && q2.eirp_phi_mw() == q.eirp_phi_mw();
        for (std::size_t k = 0; k < p.eirp_theta_mw().data().size(); ++k)
        {
            double a = p.eirp_theta_mw().data()[k], b = q.eirp_theta_mw().data()[k];
            if (std::abs(a - b) > 2.0e-10 * std::abs(a)) // 12 digits of |dBm| < 200
                values = false;
        }

        int mismatches = 0;
        auto run = [&](std::vector<std::string> args) {
            std::ostringstream out, err;
            int code = cli_main(args, out, err);
            return std::pair{code, out.str()};
        };
        auto expect = [&](std::vector<std::string> args, const std::string &want) {
            auto [code, text] = run(std::move(args));
            if (code != 0 || text != want)
                ++mismatches;
        };
        const std::string a = (dir / "a.csv").string();
        expect({"trp", a}, format_power(trp(q)) + "\n");
        expect({"cvrp", a, "--cap", "180"}, format_power(trp(q)) + "\n");
        expect({"cvrp", a, "--cap", "30", "--center", "10,180"},
               format_power(cvrp::cvrp(q, SphericalMask::cap({10.0, 180.0}, 30.0))) + "\n");
        expect({"cvrp", a, "--point", "4.5,180"}, format_power(cvrp_point(q, {4.5, 180.0})) + "\n");
        expect({"prp", a, "--preset", "n75prp"}, format_power(prp(q, PrpPreset::N75prp)) + "\n");
        {
            std::ostringstream want;
            format_plot_table(sweep_to_plot_rows(cvrp_sweep(q, {0.0, 0.0})), want);
            expect({"sweep", a}, want.str());
        }
        {
            run({"synth", "-o", (dir / "c.csv").string(), "--scan", "-4.5", "--fe", "7,14", "--trp-dbm", "3"});
            if (slurp(dir / "c.csv") != slurp(dir / "a.csv"))
                ++mismatches;
        }
        fs::remove_all(dir);
        return {bytes && values && mismatches == 0, std::string("write/read/write identical: ") + (bytes ? "yes" : "no") +
                                                        ", values stable: " + (values ? "yes" : "no") +
                                                        ", CLI mismatches: " + std::to_string(mismatches)};
    }

    struct Criterion
    {
        int id;
        const char *name;
        double limit_s;
        std::function<Outcome()> run;
    };
}

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "limiting-case exactness", 5.0, limiting_cases},
        {2, "isotropic flatness and PRP bias", 5.0, isotropic_flatness},
        {3, "Monte Carlo quadrature oracle", 60.0, monte_carlo},
        {4, "element directivity anchors", 5.0, element_anchors},
        {5, "boresight sweep trends", 120.0, fig5_trends},
        {6, "scan-loss property", 60.0, scan_loss},
        {7, "fault divergence", 60.0, fault_divergence},
        {8, "rotation fidelity", 30.0, rotation_fidelity},
        {9, "format and CLI determinism", 10.0, format_determinism},
    };

    int failures = 0;
    for (const auto &c : criteria)
    {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.limit_s;
        bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("[%s] %d %s: %s (%.2f s of %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    c.limit_s);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
