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

#include "cvrp/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cvrp/array_synth.hpp"
#include "cvrp/metrics.hpp"
#include "cvrp/pattern.hpp"
#include "cvrp/pattern_io.hpp"
#include "cvrp/units.hpp"

namespace
{
    using namespace cvrp;

    // Option combinations CLI11 cannot express; reported like a parse error.
    class UsageError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    Direction to_direction(const std::vector<double> &v)
    {
        return {v.at(0), v.at(1)};
    }

    CellWeighting weighting_of(bool node_center)
    {
        return node_center ? CellWeighting::NodeCenter : CellWeighting::Coverage;
    }

    std::string scan_tag(double scan_deg)
    {
        return "scan_" + format_number(scan_deg);
    }

    const std::map<std::string, ElementModel> element_names = {{"cosine", ElementModel::Cosine},
                                                               {"huygens", ElementModel::Huygens}};

    const std::map<std::string, PrpPreset> preset_names = {
        {"uhrp", PrpPreset::Uhrp}, {"n75prp", PrpPreset::N75prp}, {"nhprp", PrpPreset::Nhprp}};

    struct SynthOptions
    {
        std::string output;
        std::string element = "cosine";
        double scan_deg = 0.0;
        int beam = 0;
        std::vector<std::size_t> failed;
        std::size_t rows = 2, cols = 8;
        double spacing_wl = 0.5, frequency_hz = 28.0e9, trp_dbm = 0.0;
        std::string numbering = "row";
        double dtheta = 1.5, dphi = 1.5;
        std::string label;
        CLI::Option *beam_opt = nullptr;
    };

    struct PatternOptions
    {
        std::string input, output;
        std::string to = "standard";
        double fill_mw = 0.0;
        double about_y_deg = 0.0;
    };

    struct PrpOptions
    {
        std::string input;
        double theta1 = 0.0, theta2 = 0.0;
        std::string preset;
        bool node_center = false;
    };

    struct CvrpOptions
    {
        std::string input;
        double cap_deg = 0.0;
        std::vector<double> center = {0.0, 0.0};
        std::vector<double> window;
        std::vector<double> point;
        bool node_center = false;
    };

    struct SweepOptions
    {
        std::string input, output;
        std::vector<double> center = {0.0, 0.0};
        std::vector<double> fovs = default_fov_half_angles();
        bool node_center = false;
    };

    struct DiagnoseOptions
    {
        std::string ref, test, output;
        double threshold_db = default_flag_threshold_db;
    };

    struct ReproOptions
    {
        std::string out_dir;
        std::string element;
        double trp_dbm = 0.0;
        double scan_deg = 0.0;
        std::vector<std::size_t> failed = {14, 7};
        double threshold_db = default_flag_threshold_db;
        double dtheta = 1.5, dphi = 1.5;
    };

    ArraySpec make_spec(const SynthOptions &o)
    {
        ArraySpec spec;
        spec.rows = o.rows;
        spec.cols = o.cols;
        spec.spacing_wl = o.spacing_wl;
        spec.element = element_names.at(o.element);
        spec.scan_angle_deg = o.beam_opt->count() ? beam_scan_angle_deg(o.beam) : o.scan_deg;
        spec.failed_elements = {o.failed.begin(), o.failed.end()};
        spec.frequency_hz = o.frequency_hz;
        spec.numbering = o.numbering == "row" ? ElementNumbering::RowMajor : ElementNumbering::ColumnMajor;
        return spec;
    }

    void write_sweep(const CvrpSweep &s, const std::string &path, std::ostream &out)
    {
        if (path.empty())
            format_plot_table(sweep_to_plot_rows(s), out);
        else
            write_sweep_csv(sweep_to_plot_rows(s), path);
    }

    std::filesystem::path prepare_dir(const std::string &dir)
    {
        std::filesystem::path p(dir);
        std::error_code ec;
        std::filesystem::create_directories(p, ec);
        if (ec)
            throw std::runtime_error("Cannot create directory '" + dir + "': " + ec.message());
        return p;
    }

    void run_repro_fig5(const ReproOptions &o, std::ostream &out)
    {
        auto dir = prepare_dir(o.out_dir);
        const AngularGrid grid = AngularGrid::standard(o.dtheta, o.dphi);
        std::vector<std::string> elements;
        if (o.element == "both")
            elements = {"cosine", "huygens"};
        else
            elements = {o.element};

        for (const auto &name : elements)
            for (double scan : {0.0, -4.5, -45.0})
            {
                ArraySpec spec;
                spec.element = element_names.at(name);
                spec.scan_angle_deg = scan;
                SynthesisResult r = synthesize_eirp(spec, dbm_to_mw(o.trp_dbm), grid);
                CvrpSweep s = cvrp_sweep(rotate_to_boresight(r), {0.0, 0.0});
                auto path = dir / ("fig5_" + name + "_" + scan_tag(scan) + ".csv");
                write_sweep_csv(sweep_to_plot_rows(s), path);
                out << "wrote " << path.string() << "\n";
            }
    }

    void run_repro_fig6(const ReproOptions &o, std::ostream &out)
    {
        auto dir = prepare_dir(o.out_dir);
        const AngularGrid grid = AngularGrid::standard(o.dtheta, o.dphi);

        ArraySpec allon;
        allon.element = element_names.at(o.element);
        allon.scan_angle_deg = o.scan_deg;
        ArraySpec faulty = allon;
        faulty.failed_elements = {o.failed.begin(), o.failed.end()};

        const double trp_mw = dbm_to_mw(o.trp_dbm);
        CvrpSweep ref = cvrp_sweep(rotate_to_boresight(synthesize_eirp(allon, trp_mw, grid)), {0.0, 0.0});
        CvrpSweep test = cvrp_sweep(rotate_to_boresight(synthesize_eirp(faulty, trp_mw, grid)), {0.0, 0.0});
        SweepComparison cmp = compare_sweeps(ref, test, o.threshold_db);

        const std::string stem = "fig6_" + o.element + "_" + scan_tag(o.scan_deg);
        const std::filesystem::path files[3] = {dir / (stem + "_allon.csv"), dir / (stem + "_fe.csv"),
                                                dir / (stem + "_compare.csv")};
        write_sweep_csv(sweep_to_plot_rows(ref), files[0]);
        write_sweep_csv(sweep_to_plot_rows(test), files[1]);
        write_sweep_csv(sweep_to_plot_rows(cmp), files[2]);
        for (const auto &f : files)
            out << "wrote " << f.string() << "\n";
        out << format_comparison_summary(cmp);
    }
}

std::string cvrp::format_power(double mw)
{
    char buf[96];
    const double dbm = mw_to_dbm(mw);
    if (mw == 0.0 || mw >= 0.01)
        std::snprintf(buf, sizeof(buf), "%.4f dBm (%.4f mW)", dbm, mw);
    else
        std::snprintf(buf, sizeof(buf), "%.4f dBm (%.4e mW)", dbm, mw);
    return buf;
}

std::string cvrp::format_comparison_summary(const SweepComparison &c)
{
    std::ostringstream s;
    s << "ref: " << c.ref_label << "\n";
    s << "test: " << c.test_label << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", c.max_abs_delta_db);
    s << "max_abs_delta_db: " << buf << "\n";
    s << "divergence_fov_deg: " << (c.divergence_fov_deg ? format_number(*c.divergence_fov_deg) : "none") << "\n";
    std::snprintf(buf, sizeof(buf), "%.4g", c.threshold_db);
    s << "flagged: " << (c.flagged ? "yes" : "no") << " (threshold " << buf << " dB)\n";
    return s.str();
}

int cvrp::cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Constrained-view radiated power tools for antenna EIRP patterns", "cvrp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cvrp 1.0.0");

    std::function<void()> run;
    const auto element_check = CLI::IsMember({"cosine", "huygens"});

    // synth
    SynthOptions so;
    auto *synth = app.add_subcommand("synth", "Synthesize a 2-D array EIRP pattern");
    synth->add_option("-o,--output", so.output, "Output pattern file")->required();
    synth->add_option("--element", so.element, "Element model")->check(element_check)->capture_default_str();
    auto *scan_opt = synth->add_option("--scan", so.scan_deg, "Scan angle in degrees [-45, 45]");
    so.beam_opt = synth->add_option("--beam", so.beam, "Codebook beam 1..21 (scan -45 + 4.5 (k - 1))");
    so.beam_opt->excludes(scan_opt);
    synth->add_option("--fe", so.failed, "Failed element numbers (1-based)")->delimiter(',');
    synth->add_option("--rows", so.rows)->capture_default_str();
    synth->add_option("--cols", so.cols)->capture_default_str();
    synth->add_option("--spacing", so.spacing_wl, "Element spacing in wavelengths")->capture_default_str();
    synth->add_option("--freq", so.frequency_hz, "Frequency in Hz")->capture_default_str();
    synth->add_option("--trp-dbm", so.trp_dbm, "Reference TRP in dBm")->capture_default_str();
    synth->add_option("--numbering", so.numbering, "Element numbering order")
        ->check(CLI::IsMember({"row", "column"}))
        ->capture_default_str();
    synth->add_option("--dtheta", so.dtheta, "Theta step in degrees")->capture_default_str();
    synth->add_option("--dphi", so.dphi, "Phi step in degrees")->capture_default_str();
    synth->add_option("--label", so.label, "Pattern label (default: generated)");
    synth->callback([&] {
        run = [&] {
            ArraySpec spec = make_spec(so);
            SynthesisResult r =
                synthesize_eirp(spec, dbm_to_mw(so.trp_dbm), AngularGrid::standard(so.dtheta, so.dphi));
            if (!so.label.empty())
                r.pattern.set_label(so.label);
            write_pattern(r.pattern, so.output);
        };
    });

    // remap, fill, rotate
    PatternOptions po;
    auto *remap = app.add_subcommand("remap", "Convert between the standard and distributed axis conventions");
    remap->add_option("input", po.input, "Input pattern file")->required();
    remap->add_option("-o,--output", po.output, "Output pattern file")->required();
    remap->add_option("--to", po.to, "Target convention")
        ->check(CLI::IsMember({"standard", "distributed"}))
        ->capture_default_str();
    remap->callback([&] {
        run = [&] {
            PolarizedPattern p = read_pattern(po.input);
            if (po.to == "standard")
                write_pattern(remap_to_standard(p), po.output);
            else
                write_pattern(remap_to_distributed(
                                  p, AngularGrid::distributed(p.grid().dtheta_deg(), p.grid().dphi_deg())),
                              po.output);
        };
    });

    auto *fill = app.add_subcommand("fill", "Fill unmeasured cells with a constant power");
    fill->add_option("input", po.input, "Input pattern file")->required();
    fill->add_option("-o,--output", po.output, "Output pattern file")->required();
    fill->add_option("--fill-mw", po.fill_mw, "Fill value in mW per polarization")->capture_default_str();
    fill->callback([&] { run = [&] { write_pattern(fill_unmeasured(read_pattern(po.input), po.fill_mw), po.output); }; });

    auto *rotate = app.add_subcommand("rotate", "Rotate a pattern about the y axis");
    rotate->add_option("input", po.input, "Input pattern file")->required();
    rotate->add_option("-o,--output", po.output, "Output pattern file")->required();
    rotate->add_option("--about-y", po.about_y_deg, "Rotation angle in degrees")->required();
    rotate->callback([&] { run = [&] { write_pattern(rotate_about_y(read_pattern(po.input), po.about_y_deg), po.output); }; });

    // trp, prp, cvrp
    std::string trp_input;
    auto *trp_cmd = app.add_subcommand("trp", "Total radiated power");
    trp_cmd->add_option("input", trp_input, "Input pattern file")->required();
    trp_cmd->callback([&] { run = [&] { out << format_power(trp(read_pattern(trp_input))) << "\n"; }; });

    PrpOptions pr;
    auto *prp_cmd = app.add_subcommand("prp", "Partial radiated power over a theta band");
    prp_cmd->add_option("input", pr.input, "Input pattern file")->required();
    auto *t1 = prp_cmd->add_option("--theta1", pr.theta1, "Lower band edge in degrees");
    auto *t2 = prp_cmd->add_option("--theta2", pr.theta2, "Upper band edge in degrees");
    auto *preset = prp_cmd->add_option("--preset", pr.preset, "Named band")->check(CLI::IsMember({"uhrp", "n75prp", "nhprp"}));
    t1->needs(t2);
    t2->needs(t1);
    preset->excludes(t1)->excludes(t2);
    prp_cmd->add_flag("--node-center", pr.node_center, "Binary node-center cell membership");
    prp_cmd->callback([&] {
        if (!preset->count() && !t1->count())
            throw UsageError("prp needs --theta1/--theta2 or --preset");
        run = [&] {
            PolarizedPattern p = read_pattern(pr.input);
            double v = preset->count() ? prp(p, preset_names.at(pr.preset), weighting_of(pr.node_center))
                                       : prp(p, pr.theta1, pr.theta2, weighting_of(pr.node_center));
            out << format_power(v) << "\n";
        };
    });

    CvrpOptions co;
    auto *cvrp_cmd = app.add_subcommand("cvrp", "Constrained-view radiated power over one field of view");
    cvrp_cmd->add_option("input", co.input, "Input pattern file")->required();
    auto *cap = cvrp_cmd->add_option("--cap", co.cap_deg, "Cap half-angle in degrees (0, 180]");
    auto *center = cvrp_cmd->add_option("--center", co.center, "Cap center theta,phi in degrees")
                       ->delimiter(',')
                       ->expected(2)
                       ->capture_default_str();
    auto *window = cvrp_cmd->add_option("--window", co.window, "theta_min,theta_max,phi_min,phi_max in degrees")
                       ->delimiter(',')
                       ->expected(4);
    auto *point = cvrp_cmd->add_option("--point", co.point, "Point direction theta,phi in degrees")
                      ->delimiter(',')
                      ->expected(2);
    cap->excludes(window)->excludes(point);
    window->excludes(point);
    center->needs(cap);
    cvrp_cmd->add_flag("--node-center", co.node_center, "Binary node-center cell membership");
    cvrp_cmd->callback([&] {
        if (!cap->count() && !window->count() && !point->count())
            throw UsageError("cvrp needs one of --cap, --window, --point");
        run = [&] {
            PolarizedPattern p = read_pattern(co.input);
            double v = 0.0;
            if (point->count())
                v = cvrp_point(p, to_direction(co.point));
            else if (window->count())
                v = cvrp::cvrp(p, SphericalMask::window({co.window[0], co.window[1], co.window[2], co.window[3]}),
                               weighting_of(co.node_center));
            else if (co.cap_deg == 180.0)
                v = cvrp::cvrp(p, SphericalMask::full_sphere(), weighting_of(co.node_center));
            else
                v = cvrp::cvrp(p, SphericalMask::cap(to_direction(co.center), co.cap_deg),
                               weighting_of(co.node_center));
            out << format_power(v) << "\n";
        };
    });

    // sweep, diagnose
    SweepOptions sw;
    auto *sweep = app.add_subcommand("sweep", "CVRP over a list of cap half-angles");
    sweep->add_option("input", sw.input, "Input pattern file")->required();
    sweep->add_option("--center", sw.center, "Cap center theta,phi in degrees")->delimiter(',')->expected(2)->capture_default_str();
    sweep->add_option("--fovs", sw.fovs, "Half-angles in degrees, decreasing")->delimiter(',');
    sweep->add_flag("--node-center", sw.node_center, "Binary node-center cell membership");
    sweep->add_option("-o,--output", sw.output, "Output CSV (default: stdout)");
    sweep->callback([&] {
        run = [&] {
            PolarizedPattern p = read_pattern(sw.input);
            write_sweep(cvrp_sweep(p, to_direction(sw.center), sw.fovs, weighting_of(sw.node_center)), sw.output, out);
        };
    });

    DiagnoseOptions dg;
    auto *diagnose = app.add_subcommand("diagnose", "Compare two CVRP sweeps and flag narrow-FoV divergence");
    diagnose->add_option("--ref", dg.ref, "Reference sweep CSV")->required();
    diagnose->add_option("--test", dg.test, "Test sweep CSV")->required();
    diagnose->add_option("--threshold-db", dg.threshold_db, "Flag threshold in dB")->capture_default_str();
    diagnose->add_option("-o,--output", dg.output, "Comparison CSV");
    diagnose->callback([&] {
        run = [&] {
            SweepComparison c = compare_sweeps(read_sweep_csv(dg.ref), read_sweep_csv(dg.test), dg.threshold_db);
            if (!dg.output.empty())
                write_sweep_csv(sweep_to_plot_rows(c), dg.output);
            out << format_comparison_summary(c);
        };
    });

    // end-to-end reproductions
    ReproOptions r5, r6;
    r5.element = "both";
    r6.element = "cosine";
    auto *fig5 = app.add_subcommand("repro-fig5", "Boresight CVRP sweeps of 2x8 arrays at scans 0, -4.5, -45 deg");
    fig5->add_option("--out-dir", r5.out_dir, "Output directory")->required();
    fig5->add_option("--element", r5.element, "Element model")
        ->check(CLI::IsMember({"cosine", "huygens", "both"}))
        ->capture_default_str();
    fig5->add_option("--trp-dbm", r5.trp_dbm, "Reference TRP in dBm")->capture_default_str();
    fig5->callback([&] { run = [&] { run_repro_fig5(r5, out); }; });

    auto *fig6 = app.add_subcommand("repro-fig6", "All-on vs failed-element CVRP sweeps and their comparison");
    fig6->add_option("--out-dir", r6.out_dir, "Output directory")->required();
    fig6->add_option("--scan", r6.scan_deg, "Scan angle in degrees")->capture_default_str();
    fig6->add_option("--fe", r6.failed, "Failed element numbers (1-based)")->delimiter(',')->capture_default_str();
    fig6->add_option("--element", r6.element, "Element model")->check(element_check)->capture_default_str();
    fig6->add_option("--trp-dbm", r6.trp_dbm, "Reference TRP in dBm")->capture_default_str();
    fig6->add_option("--threshold-db", r6.threshold_db, "Flag threshold in dB")->capture_default_str();
    fig6->callback([&] { run = [&] { run_repro_fig6(r6, out); }; });

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    catch (const UsageError &e)
    {
        err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
        return 2;
    }

    try
    {
        run();
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
