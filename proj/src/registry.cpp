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

#include "plmodel/registry.hpp"
#include "plmodel/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace plmodel
{
    namespace
    {
        // source | band | env | model | pol | column=printed ...
        constexpr std::string_view transcription = R"(
Table I|single_6_75|LOS|ci|VV|n=1.3 sigma=3.5
Table I|single_6_75|LOS|fi|VV|alpha=43.4 beta=1.7 sigma=3.4
Table I|single_6_75|NLOS|ci|VV|n=2.7 sigma=9.2
Table I|single_6_75|NLOS|fi|VV|alpha=35.2 beta=3.6 sigma=9.0
Table I|single_16_95|LOS|ci|VV|n=1.3 sigma=2.7
Table I|single_16_95|LOS|fi|VV|alpha=50.9 beta=1.7 sigma=2.4
Table I|single_16_95|NLOS|ci|VV|n=3.1 sigma=8.1
Table I|single_16_95|NLOS|fi|VV|alpha=61.0 beta=2.8 sigma=8.1
Table I|single_28|LOS|ci|VV|n=1.1 sigma=1.8
Table I|single_28|LOS|fi|VV|alpha=60.6 beta=1.2 sigma=1.8
Table I|single_28|NLOS|ci|VV|n=2.7 sigma=9.5
Table I|single_28|NLOS|fi|VV|alpha=51.3 beta=3.5 sigma=9.2
Table I|single_73|LOS|ci|VV|n=1.3 sigma=2.3
Table I|single_73|LOS|fi|VV|alpha=78.1 beta=0.5 sigma=1.4
Table I|single_73|NLOS|ci|VV|n=3.2 sigma=11.3
Table I|single_73|NLOS|fi|VV|alpha=76.2 beta=2.7 sigma=11.2
Table I|single_142|LOS|ci|VV|n=1.8 sigma=3.0
Table I|single_142|LOS|fi|VV|alpha=82.8 beta=1.1 sigma=2.3
Table I|single_142|NLOS|ci|VV|n=2.7 sigma=6.6
Table I|single_142|NLOS|fi|VV|alpha=98.9 beta=0.8 sigma=4.6
Table II|fr3_7_24|LOS|ci|VV|n=1.3 sigma=3.1
Table II|fr3_7_24|LOS|cix|VH|n=1.3 xpd=18.5 sigma=6.9
Table II|fr3_7_24|LOS|cif|VV|n=1.3 b=0 f0=12.0 sigma=3.1
Table II|fr3_7_24|LOS|cifx|VH|n=1.3 b=0 f0=12.0 xpd=16.9 sigma=6.7
Table II|fr3_7_24|LOS|abg|VV|alpha=1.7 beta=28.2 gamma=1.9 sigma=2.9
Table II|fr3_7_24|LOS|abgx|VH|alpha=1.7 beta=28.2 gamma=1.9 xpd=17.6 sigma=6.6
Table II|fr3_7_24|NLOS|ci|VV|n=2.9 sigma=9.1
Table II|fr3_7_24|NLOS|cix|VH|n=2.9 xpd=15.8 sigma=11.9
Table II|fr3_7_24|NLOS|cif|VV|n=2.9 b=0.1 f0=12.0 sigma=8.7
Table II|fr3_7_24|NLOS|cifx|VH|n=2.9 b=0.1 f0=12.0 xpd=21.8 sigma=12.0
Table II|fr3_7_24|NLOS|abg|VV|alpha=3.2 beta=12.9 gamma=3.4 sigma=8.6
Table II|fr3_7_24|NLOS|abgx|VH|alpha=3.2 beta=12.9 gamma=3.4 xpd=16.2 sigma=10.6
Table III|wide_0_5_100|LOS|ci|VV|n=1.3 sigma=2.8
Table III|wide_0_5_100|LOS|cix|VH|n=1.3 xpd=18.0 sigma=6.2
Table III|wide_0_5_100|LOS|cif|VV|n=1.3 b=0 f0=35.0 sigma=2.8
Table III|wide_0_5_100|LOS|cifx|VH|n=1.3 b=0 f0=35.0 xpd=18.0 sigma=6.2
Table III|wide_0_5_100|LOS|abg|VV|alpha=1.4 beta=29.5 gamma=2.1 sigma=2.7
Table III|wide_0_5_100|LOS|abgx|VH|alpha=1.4 beta=29.5 gamma=2.1 xpd=18.4 sigma=6
Table III|wide_0_5_100|NLOS|ci|VV|n=2.9 sigma=10.5
Table III|wide_0_5_100|NLOS|cix|VH|n=2.9 xpd=13.8 sigma=10.8
Table III|wide_0_5_100|NLOS|cif|VV|n=3.0 b=0.1 f0=40.0 sigma=10.2
Table III|wide_0_5_100|NLOS|cifx|VH|n=3.0 b=0.1 f0=40.0 xpd=16.2 sigma=10.9
Table III|wide_0_5_100|NLOS|abg|VV|alpha=3.4 beta=12.9 gamma=2.9 sigma=10.1
Table III|wide_0_5_100|NLOS|abgx|VH|alpha=3.4 beta=12.9 gamma=2.9 xpd=13.9 sigma=10.3
Table IV|wide_0_5_150|LOS|ci|VV|n=1.4 sigma=3.5
Table IV|wide_0_5_150|LOS|cif|VV|n=1.4 b=0.1 f0=57.0 sigma=3.0
Table IV|wide_0_5_150|LOS|abg|VV|alpha=1.5 beta=24.3 gamma=2.4 sigma=3.1
Table IV|wide_0_5_150|NLOS|ci|VV|n=2.9 sigma=10.7
Table IV|wide_0_5_150|NLOS|cif|VV|n=2.9 b=0 f0=51.0 sigma=10.2
Table IV|wide_0_5_150|NLOS|abg|VV|alpha=3.1 beta=23 gamma=2.5 sigma=10
)";

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> parts;
            std::size_t start = 0;
            while (true)
            {
                const auto pos = s.find(sep, start);
                parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return parts;
        }

        std::string lower(std::string_view s)
        {
            std::string out(s);
            std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            return out;
        }

        double number(std::string_view text)
        {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw std::logic_error("bad registry literal: " + std::string(text));
            return v;
        }

        CoPolParams copol_params(ModelFamily family, const std::map<std::string, double, std::less<>> &v, double base_sigma)
        {
            switch (family)
            {
            case ModelFamily::ci:
            case ModelFamily::cix:
                return CiParams{v.at("n"), base_sigma};
            case ModelFamily::cif:
            case ModelFamily::cifx:
                return CifParams{v.at("n"), v.at("b"), v.at("f0"), base_sigma};
            case ModelFamily::abg:
            case ModelFamily::abgx:
                return AbgParams{v.at("alpha"), v.at("beta"), v.at("gamma"), base_sigma};
            default:
                throw std::logic_error("not a co-polarized family");
            }
        }

        ModelFamily copol_family(ModelFamily x)
        {
            switch (x)
            {
            case ModelFamily::cix:
                return ModelFamily::ci;
            case ModelFamily::cifx:
                return ModelFamily::cif;
            case ModelFamily::abgx:
                return ModelFamily::abg;
            default:
                return x;
            }
        }

        std::vector<PublishedEntry> build()
        {
            std::vector<PublishedEntry> entries;
            for (auto line : split(transcription, '\n'))
            {
                if (line.empty())
                    continue;
                const auto cols = split(line, '|');
                PublishedEntry e;
                e.source = std::string(cols[0]);
                e.band = *parse_band(cols[1]);
                e.environment = *parse_environment(cols[2]);
                e.model = *parse_family(cols[3]);
                e.polarization = *parse_polarization(cols[4]);

                std::map<std::string, double, std::less<>> values;
                for (auto field : split(cols[5], ' '))
                {
                    const auto eq = field.find('=');
                    e.printed.push_back({std::string(field.substr(0, eq)), std::string(field.substr(eq + 1))});
                    values[std::string(field.substr(0, eq))] = number(field.substr(eq + 1));
                }
                e.sigma = values.at("sigma");

                if (e.model == ModelFamily::fi)
                    e.params = FiParams{values.at("alpha"), values.at("beta"), e.sigma};
                else if (is_cross_polarized(e.model))
                {
                    // the co-polarized row of the same table/environment precedes this one
                    const auto base = std::find_if(entries.rbegin(), entries.rend(), [&](const PublishedEntry &p)
                                                   { return p.source == e.source && p.environment == e.environment &&
                                                            p.model == copol_family(e.model); });
                    if (base == entries.rend())
                        throw std::logic_error("registry: missing co-polarized row for " + std::string(line));
                    e.params = XpdExtension{copol_params(e.model, values, base->sigma), values.at("xpd"), e.sigma};
                }
                else
                    e.params = std::visit([](const auto &p) { return ModelParams(p); }, copol_params(e.model, values, e.sigma));

                validate(e.params);
                entries.push_back(std::move(e));
            }
            return entries;
        }

        const std::vector<PublishedEntry> &registry()
        {
            static const std::vector<PublishedEntry> entries = build();
            return entries;
        }
    }

    std::string_view to_string(Band band)
    {
        switch (band)
        {
        case Band::single_6_75:
            return "single_6_75";
        case Band::single_16_95:
            return "single_16_95";
        case Band::single_28:
            return "single_28";
        case Band::single_73:
            return "single_73";
        case Band::single_142:
            return "single_142";
        case Band::fr3_7_24:
            return "fr3_7_24";
        case Band::wide_0_5_100:
            return "wide_0_5_100";
        case Band::wide_0_5_150:
            return "wide_0_5_150";
        }
        return "?";
    }

    std::optional<Band> parse_band(std::string_view token)
    {
        const std::string t = lower(token);
        for (auto b : {Band::single_6_75, Band::single_16_95, Band::single_28, Band::single_73, Band::single_142,
                       Band::fr3_7_24, Band::wide_0_5_100, Band::wide_0_5_150})
            if (to_string(b) == t)
                return b;
        return std::nullopt;
    }

    std::span<const PublishedEntry> all_entries()
    {
        return registry();
    }

    const PublishedEntry &lookup(ModelFamily model, Band band, Environment env, Polarization pol)
    {
        for (const auto &e : registry())
            if (e.model == model && e.band == band && e.environment == env && e.polarization == pol)
                return e;
        std::ostringstream os;
        os << "no published entry for " << to_string(model) << ':' << to_string(band) << ':'
           << lower(to_string(env)) << ':' << lower(to_string(pol));
        throw input_error(os.str());
    }

    const PublishedEntry &lookup(std::string_view key)
    {
        const auto parts = split(key, ':');
        if (parts.size() != 4)
            throw input_error("registry key must be model:band:env:pol, got '" + std::string(key) + "'");
        const auto model = parse_family(lower(parts[0]));
        const auto band = parse_band(parts[1]);
        const auto env = parse_environment(parts[2]);
        const auto pol = parse_polarization(lower(parts[3]) == "vv" ? "VV" : lower(parts[3]) == "vh" ? "VH" : "");
        if (!model || !band || !env || !pol)
            throw input_error("unknown registry key '" + std::string(key) + "'");
        return lookup(*model, *band, *env, *pol);
    }

    std::vector<PublishedEntry> list_entries(const RegistryFilter &filter)
    {
        std::vector<PublishedEntry> out;
        for (const auto &e : registry())
        {
            if (filter.model && e.model != *filter.model)
                continue;
            if (filter.band && e.band != *filter.band)
                continue;
            if (filter.environment && e.environment != *filter.environment)
                continue;
            if (filter.polarization && e.polarization != *filter.polarization)
                continue;
            if (filter.source && e.source != *filter.source)
                continue;
            out.push_back(e);
        }
        return out;
    }

    std::optional<std::string> parse_table_name(std::string_view token)
    {
        std::string t = lower(token);
        std::erase_if(t, [](char c) { return c == ' ' || c == '-' || c == '_'; });
        if (t.starts_with("table"))
            t.erase(0, 5);
        static const std::map<std::string, std::string, std::less<>> names = {
            {"1", "Table I"}, {"i", "Table I"}, {"2", "Table II"}, {"ii", "Table II"},
            {"3", "Table III"}, {"iii", "Table III"}, {"4", "Table IV"}, {"iv", "Table IV"}};
        const auto it = names.find(t);
        if (it == names.end())
            return std::nullopt;
        return it->second;
    }

    RegistryFilter parse_registry_filter(std::string_view text)
    {
        RegistryFilter filter;
        if (text.empty() || lower(text) == "all")
            return filter;
        for (auto raw : split(text, ','))
        {
            const std::string part = lower(raw);
            if (auto band = parse_band(part))
                filter.band = band;
            else if (auto model = parse_family(part))
                filter.model = model;
            else if (auto env = parse_environment(part))
                filter.environment = env;
            else if (part == "vv")
                filter.polarization = Polarization::vv;
            else if (part == "vh")
                filter.polarization = Polarization::vh;
            else if (auto table = parse_table_name(part))
                filter.source = table;
            else
                throw input_error("unknown registry filter '" + std::string(raw) + "'");
        }
        return filter;
    }

    std::string registry_key(const PublishedEntry &e)
    {
        return std::string(to_string(e.model)) + ':' + std::string(to_string(e.band)) + ':' +
               lower(to_string(e.environment)) + ':' + lower(to_string(e.polarization));
    }
}
