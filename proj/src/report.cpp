// SPDX-License-Identifier: Apache-2.0
//
// plmodel - large-scale path loss model evaluation and fitting
// Copyright (C) 2026 The plmodel authors
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

#include "plmodel/report.hpp"
#include "plmodel/error.hpp"
#include "plmodel/serialize.hpp"
#include "overloaded.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>

namespace plmodel
{
    namespace
    {
        using nlohmann::json;

        constexpr std::array<std::string_view, 8> registry_columns = {"n", "b", "f0", "alpha", "beta", "gamma", "xpd", "sigma"};
        constexpr std::array<std::string_view, 8> registry_headings = {"n", "b", "f0 (GHz)", "α", "β", "γ", "XPD (dB)", "σ (dB)"};

        std::string printed_cell(const PublishedEntry &e, std::string_view column)
        {
            for (const auto &p : e.printed)
                if (p.column == column)
                    return p.text;
            return {};
        }

        std::string shortest(double v)
        {
            std::array<char, 64> buf{};
            auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            return std::string(buf.data(), ptr);
        }

        std::string upper(std::string_view s)
        {
            std::string out(s);
            for (auto &c : out)
                c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            return out;
        }

        // (label, full-precision value, display text) rows of a fit summary
        struct Row
        {
            std::string label;
            std::string exact;
            std::string display;
        };

        std::vector<Row> fit_rows(const FitResult &fit)
        {
            std::vector<Row> rows;
            const auto param = [&](std::string label, double v, std::string unit = {})
            { rows.push_back({std::move(label), shortest(v), fixed(v, parameter_decimals) + unit}); };

            rows.push_back({"model", model_name(fit.params), model_name(fit.params)});
            const auto copol = [&](const CoPolParams &p)
            {
                std::visit(detail::overloaded{
                               [&](const CiParams &c) { param("n", c.n); },
                               [&](const CifParams &c)
                               {
                                   param("n", c.n);
                                   param("b", c.b);
                                   rows.push_back({"f0", shortest(c.f0), fixed(c.f0, parameter_decimals) + " GHz (rounded " +
                                                                             fixed(rounded_reference_frequency(c.f0), 1) + ")"});
                               },
                               [&](const AbgParams &c)
                               {
                                   param("alpha", c.alpha);
                                   param("beta", c.beta);
                                   param("gamma", c.gamma);
                               }},
                           p);
            };
            std::visit(detail::overloaded{
                           [&](const CiParams &c) { copol(c); },
                           [&](const CifParams &c) { copol(c); },
                           [&](const AbgParams &c) { copol(c); },
                           [&](const FiParams &c)
                           {
                               param("alpha", c.alpha, " dB");
                               param("beta", c.beta);
                           },
                           [&](const XpdExtension &x)
                           {
                               copol(x.base);
                               param("xpd", x.xpd, " dB");
                           },
                           [](const Tr38901InhModel &) {}},
                       fit.params);
            rows.push_back({"sigma", shortest(fit.sigma), fixed(fit.sigma, sigma_decimals) + " dB"});
            rows.push_back({"samples", std::to_string(fit.n_samples), std::to_string(fit.n_samples)});
            if (fit.ple_ci95)
            {
                const auto slope = std::holds_alternative<FiParams>(fit.params) ? "beta"
                                   : std::holds_alternative<AbgParams>(fit.params) ||
                                           (std::holds_alternative<XpdExtension>(fit.params) &&
                                            std::holds_alternative<AbgParams>(std::get<XpdExtension>(fit.params).base))
                                       ? "alpha"
                                       : "n";
                rows.push_back({std::string("ci95(") + slope + ")",
                                shortest(fit.ple_ci95->first) + ";" + shortest(fit.ple_ci95->second),
                                "[" + fixed(fit.ple_ci95->first, parameter_decimals) + ", " +
                                    fixed(fit.ple_ci95->second, parameter_decimals) + "]"});
            }
            return rows;
        }
    }

    ReportFormat parse_report_format(std::string_view name)
    {
        if (name == "md")
            return ReportFormat::md;
        if (name == "csv")
            return ReportFormat::csv;
        if (name == "json")
            return ReportFormat::json;
        throw input_error("unknown format '" + std::string(name) + "' (expected md, csv or json)");
    }

    std::string fixed(double value, int decimals)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
        std::string s(buf);
        if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-')
            s.erase(0, 1); // no "-0.00"
        return s;
    }

    std::string format_registry(std::span<const PublishedEntry> entries, ReportFormat format)
    {
        std::string out;
        switch (format)
        {
        case ReportFormat::csv:
        {
            out += "source,band,env,model,pol";
            for (auto c : registry_columns)
                out += ',' + std::string(c);
            out += '\n';
            for (const auto &e : entries)
            {
                out += e.source + ',' + std::string(to_string(e.band)) + ',' + std::string(to_string(e.environment)) + ',' +
                       upper(to_string(e.model)) + ',' + std::string(to_string(e.polarization));
                for (auto c : registry_columns)
                    out += ',' + printed_cell(e, c);
                out += '\n';
            }
            break;
        }
        case ReportFormat::md:
        {
            // only the columns used by at least one row
            std::vector<std::size_t> used;
            for (std::size_t c = 0; c < registry_columns.size(); ++c)
                for (const auto &e : entries)
                    if (!printed_cell(e, registry_columns[c]).empty())
                    {
                        used.push_back(c);
                        break;
                    }
            out += "| Source | Band | Env. | Model | Pol. |";
            for (auto c : used)
                out += ' ' + std::string(registry_headings[c]) + " |";
            out += "\n|---|---|---|---|---|";
            for (std::size_t i = 0; i < used.size(); ++i)
                out += "---|";
            out += '\n';
            for (const auto &e : entries)
            {
                const std::string pol = e.polarization == Polarization::vv ? "V-V" : "V-H";
                out += "| " + e.source + " | " + std::string(to_string(e.band)) + " | " + std::string(to_string(e.environment)) +
                       " | " + upper(to_string(e.model)) + " | " + pol + " |";
                for (auto c : used)
                {
                    const auto cell = printed_cell(e, registry_columns[c]);
                    out += ' ' + (cell.empty() ? std::string("-") : cell) + " |";
                }
                out += '\n';
            }
            break;
        }
        case ReportFormat::json:
        {
            json arr = json::array();
            for (const auto &e : entries)
                arr.push_back(to_json(e));
            out = arr.dump(2) + '\n';
            break;
        }
        }
        return out;
    }

    std::string format_fit_text(const FitResult &fit)
    {
        std::string out;
        for (const auto &row : fit_rows(fit))
        {
            out += row.label;
            out.append(row.label.size() < 10 ? 10 - row.label.size() : 1, ' ');
            out += row.display + '\n';
        }
        return out;
    }

    std::string format_fit(const FitResult &fit, ReportFormat format)
    {
        switch (format)
        {
        case ReportFormat::json:
            return to_json(fit).dump(2) + '\n';
        case ReportFormat::csv:
        {
            std::string out = "field,value\n";
            for (const auto &row : fit_rows(fit))
                out += row.label + ',' + row.exact + '\n';
            return out;
        }
        case ReportFormat::md:
        {
            std::string out = "| Field | Value |\n|---|---|\n";
            for (const auto &row : fit_rows(fit))
                out += "| " + row.label + " | " + row.display + " |\n";
            return out;
        }
        }
        return {};
    }

    std::string format_series(const FitResult &fit, const Dataset &data, ReportFormat format)
    {
        std::map<double, std::vector<std::pair<double, double>>> measured;
        for (const auto &s : data.samples())
            measured[s.frequency_ghz].emplace_back(s.distance_m, s.path_loss_db);

        const auto curve = [&](double f)
        {
            std::vector<std::pair<double, double>> pts;
            for (int d = 1; d <= 100; ++d)
                pts.emplace_back(d, evaluate(fit.params, f, d));
            return pts;
        };

        switch (format)
        {
        case ReportFormat::json:
        {
            json series = json::array();
            for (const auto &[f, pts] : measured)
            {
                json m = json::array();
                for (const auto &[d, pl] : pts)
                    m.push_back({d, pl});
                json c = json::array();
                for (const auto &[d, pl] : curve(f))
                    c.push_back({d, pl});
                series.push_back({{"freq_ghz", f}, {"measured", m}, {"model", c}});
            }
            return json{{"params", to_json(fit.params)}, {"series", series}}.dump(2) + '\n';
        }
        case ReportFormat::csv:
        case ReportFormat::md:
        {
            const bool md = format == ReportFormat::md;
            std::string out = md ? "| series | freq_ghz | distance_m | pl_db |\n|---|---|---|---|\n"
                                 : "series,freq_ghz,distance_m,pl_db\n";
            const auto row = [&](std::string_view kind, double f, double d, double pl)
            {
                if (md)
                    out += "| " + std::string(kind) + " | " + shortest(f) + " | " + shortest(d) + " | " + shortest(pl) + " |\n";
                else
                    out += std::string(kind) + ',' + shortest(f) + ',' + shortest(d) + ',' + shortest(pl) + '\n';
            };
            for (const auto &[f, pts] : measured)
            {
                for (const auto &[d, pl] : pts)
                    row("measured", f, d, pl);
                for (const auto &[d, pl] : curve(f))
                    row("model", f, d, pl);
            }
            return out;
        }
        }
        return {};
    }
}
