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

#include "cvrp/pattern_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace
{
    using namespace cvrp;

    std::string_view trim(std::string_view s)
    {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

    std::optional<double> parse_double(std::string_view s)
    {
        s = trim(s);
        if (s.empty())
            return std::nullopt;
        if (s.front() == '+')
            s.remove_prefix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v))
            return std::nullopt;
        return v;
    }

    std::vector<std::string_view> split(std::string_view line, char sep)
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            std::size_t pos = line.find(sep, start);
            out.push_back(trim(line.substr(start, pos - start)));
            if (pos == std::string_view::npos)
                break;
            start = pos + 1;
        }
        return out;
    }

    [[noreturn]] void fail(std::string_view source, std::size_t line, const std::string &what)
    {
        std::ostringstream msg;
        msg << source << ":" << line << ": " << what;
        throw FormatError(msg.str());
    }

    std::string sanitize(std::string s)
    {
        for (char &c : s)
            if (c == '\n' || c == '\r')
                c = ' ';
        return s;
    }

    struct HeaderLine
    {
        std::string value;
        std::size_t line;
    };

    // Reads "# key: value" lines up to and including the column header line.
    std::map<std::string, HeaderLine> read_header(std::istream &in, std::string_view source, std::string_view columns,
                                                  std::size_t &line_no)
    {
        std::map<std::string, HeaderLine> header;
        std::string line;
        while (std::getline(in, line))
        {
            ++line_no;
            std::string_view v = trim(line);
            if (v.empty())
                continue;
            if (v.front() == '#')
            {
                v.remove_prefix(1);
                std::size_t colon = v.find(':');
                if (colon == std::string_view::npos)
                    continue;
                std::string key(trim(v.substr(0, colon)));
                if (header.contains(key))
                    fail(source, line_no, "duplicate header key '" + key + "'");
                header[key] = {std::string(trim(v.substr(colon + 1))), line_no};
                continue;
            }
            if (v != columns)
                fail(source, line_no, "expected column header '" + std::string(columns) + "'");
            return header;
        }
        fail(source, line_no, "missing column header '" + std::string(columns) + "'");
    }

    double header_number(const std::map<std::string, HeaderLine> &h, const std::string &key, std::string_view source,
                         std::size_t line_no, std::optional<double> fallback = std::nullopt)
    {
        auto it = h.find(key);
        if (it == h.end())
        {
            if (fallback)
                return *fallback;
            fail(source, line_no, "missing header key '" + key + "'");
        }
        auto v = parse_double(it->second.value);
        if (!v || !std::isfinite(*v))
            fail(source, it->second.line, "header key '" + key + "' is not a finite number");
        return *v;
    }

    std::ofstream open_for_writing(const std::filesystem::path &path)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("Cannot open '" + path.string() + "' for writing.");
        return f;
    }

    void finish_writing(std::ofstream &f, const std::filesystem::path &path)
    {
        f.flush();
        if (!f)
            throw std::runtime_error("Write to '" + path.string() + "' failed.");
    }

    const std::map<std::string_view, int> reserved_keys = {
        {"format_version", 0}, {"convention", 0}, {"frequency_hz", 0}, {"dtheta_deg", 0}, {"dphi_deg", 0}, {"label", 0}};
}

std::string cvrp::format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    if (ec != std::errc())
        throw std::runtime_error("Number formatting failed.");
    return std::string(buf, ptr);
}

// ---- Pattern files ------------------------------------------------------

cvrp::PolarizedPattern cvrp::parse_pattern(std::istream &in, std::string_view source)
{
    std::size_t line_no = 0;
    auto header = read_header(in, source, pattern_columns, line_no);
    const std::size_t column_line = line_no;

    auto version = header.find("format_version");
    if (version == header.end())
        fail(source, column_line, "missing header key 'format_version'");
    if (version->second.value != pattern_format_version)
        fail(source, version->second.line, "unknown format version '" + version->second.value + "'");

    auto conv = header.find("convention");
    if (conv == header.end())
        fail(source, column_line, "missing header key 'convention'");
    if (conv->second.value != "standard" && conv->second.value != "distributed")
        fail(source, conv->second.line, "unknown convention '" + conv->second.value + "'");

    double dtheta = header_number(header, "dtheta_deg", source, column_line);
    double dphi = header_number(header, "dphi_deg", source, column_line);
    double freq = header_number(header, "frequency_hz", source, column_line, 0.0);

    std::optional<AngularGrid> grid;
    try
    {
        grid = conv->second.value == "standard" ? AngularGrid::standard(dtheta, dphi)
                                                : AngularGrid::distributed(dtheta, dphi);
    }
    catch (const std::invalid_argument &e)
    {
        fail(source, header.at("dtheta_deg").line, std::string("inconsistent step: ") + e.what());
    }

    const std::size_t nt = grid->n_theta(), np = grid->n_phi();
    Matrix eth(nt, np), eph(nt, np);
    std::vector<std::uint8_t> measured(nt * np, 0);

    std::string line;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#')
            continue;
        auto fields = split(v, ',');
        if (fields.size() != 4)
            fail(source, line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        std::optional<double> values[4];
        for (int k = 0; k < 4; ++k)
        {
            values[k] = parse_double(fields[k]);
            if (!values[k])
                fail(source, line_no, "field " + std::to_string(k + 1) + " is not numeric: '" + std::string(fields[k]) + "'");
        }
        double theta = *values[0], phi = *values[1], a = *values[2], b = *values[3];
        if (!std::isfinite(theta) || !std::isfinite(phi))
            fail(source, line_no, "angles must be finite");
        if ((std::isinf(a) && a > 0) || (std::isinf(b) && b > 0))
            fail(source, line_no, "EIRP of +inf dBm");

        auto ti = grid->theta_index(theta, 1.0e-6);
        auto pj = grid->phi_index(phi, 1.0e-6);
        if (!ti || !pj)
        {
            std::ostringstream msg;
            msg << "inconsistent step: (" << fields[0] << ", " << fields[1] << ") is not a node of the "
                << conv->second.value << " grid with steps " << dtheta << " / " << dphi << " deg";
            fail(source, line_no, msg.str());
        }
        std::size_t k = *ti * np + *pj;
        if (measured[k])
            fail(source, line_no, "duplicate row for (" + std::string(fields[0]) + ", " + std::string(fields[1]) + ")");
        measured[k] = 1;
        eth(*ti, *pj) = dbm_to_mw(a);
        eph(*ti, *pj) = dbm_to_mw(b);
    }

    auto label = header.find("label");
    PolarizedPattern p(std::move(*grid), std::move(eth), std::move(eph), std::move(measured), freq,
                       label == header.end() ? std::string() : label->second.value);
    for (const auto &[key, value] : header)
        if (!reserved_keys.contains(key))
            p.metadata[key] = value.value;
    return p;
}

cvrp::PolarizedPattern cvrp::read_pattern(const std::filesystem::path &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("Cannot open '" + path.string() + "' for reading.");
    return parse_pattern(f, path.string());
}

void cvrp::format_pattern(const PolarizedPattern &p, std::ostream &out)
{
    const AngularGrid &g = p.grid();
    out << "# format_version: " << pattern_format_version << "\n";
    out << "# convention: " << to_string(g.convention()) << "\n";
    out << "# frequency_hz: " << format_number(p.frequency_hz()) << "\n";
    out << "# dtheta_deg: " << format_number(g.dtheta_deg()) << "\n";
    out << "# dphi_deg: " << format_number(g.dphi_deg()) << "\n";
    out << "# label: " << sanitize(p.label()) << "\n";
    for (const auto &[key, value] : p.metadata)
        if (!reserved_keys.contains(key) && !key.empty())
            out << "# " << sanitize(key) << ": " << sanitize(value) << "\n";
    out << pattern_columns << "\n";

    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
        {
            if (!p.is_measured(i, j))
                continue;
            out << format_number(g.theta_deg()[i]) << ',' << format_number(g.phi_deg()[j]) << ','
                << format_number(mw_to_dbm(p.eirp_theta_mw()(i, j))) << ','
                << format_number(mw_to_dbm(p.eirp_phi_mw()(i, j))) << '\n';
        }
}

void cvrp::write_pattern(const PolarizedPattern &p, const std::filesystem::path &path)
{
    std::ostringstream buffer;
    format_pattern(p, buffer);
    auto f = open_for_writing(path);
    f << buffer.str();
    finish_writing(f, path);
}

// ---- Sweep files --------------------------------------------------------

void cvrp::format_plot_table(const PlotTable &t, std::ostream &out)
{
    if (!t.label.empty())
        out << "# label: " << sanitize(t.label) << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto &row : t.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_number(row[c]);
        out << "\n";
    }
}

void cvrp::write_sweep_csv(const PlotTable &t, const std::filesystem::path &path)
{
    std::ostringstream buffer;
    format_plot_table(t, buffer);
    auto f = open_for_writing(path);
    f << buffer.str();
    finish_writing(f, path);
}

cvrp::CvrpSweep cvrp::parse_sweep_csv(std::istream &in, std::string_view source)
{
    std::size_t line_no = 0;
    auto header = read_header(in, source, "fov_deg,cvrp_dbm", line_no);

    CvrpSweep s;
    if (auto label = header.find("label"); label != header.end())
        s.pattern_label = label->second.value;

    std::string line;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#')
            continue;
        auto fields = split(v, ',');
        if (fields.size() != 2)
            fail(source, line_no, "expected 2 fields, got " + std::to_string(fields.size()));
        auto fov = parse_double(fields[0]);
        auto dbm = parse_double(fields[1]);
        if (!fov || !dbm || !std::isfinite(*fov))
            fail(source, line_no, "non-numeric field");
        if (std::isinf(*dbm) && *dbm > 0)
            fail(source, line_no, "CVRP of +inf dBm");
        s.entries.push_back({*fov, *dbm <= dbm_floor ? 0.0 : dbm_to_mw(*dbm)});
    }
    return s;
}

cvrp::CvrpSweep cvrp::read_sweep_csv(const std::filesystem::path &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("Cannot open '" + path.string() + "' for reading.");
    return parse_sweep_csv(f, path.string());
}
