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

#include "plmodel/dataset.hpp"
#include "plmodel/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

namespace plmodel
{
    namespace
    {
        constexpr std::array<std::string_view, 6> csv_columns = {"freq_ghz", "distance_m", "env", "pol", "pl_db", "campaign"};

        std::string row_suffix(std::size_t row)
        {
            return ", row " + std::to_string(row);
        }

        std::string_view trim(std::string_view s)
        {
            const auto is_space = [](char c) { return c == ' ' || c == '\t'; };
            while (!s.empty() && is_space(s.front()))
                s.remove_prefix(1);
            while (!s.empty() && is_space(s.back()))
                s.remove_suffix(1);
            return s;
        }

        std::vector<std::string_view> split_fields(std::string_view line)
        {
            std::vector<std::string_view> fields;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                if (comma == std::string_view::npos)
                {
                    fields.push_back(trim(line.substr(start)));
                    break;
                }
                fields.push_back(trim(line.substr(start, comma - start)));
                start = comma + 1;
            }
            return fields;
        }

        // Locale-independent decimal parse; the whole field must be consumed.
        std::optional<double> parse_decimal(std::string_view field)
        {
            double value = 0.0;
            const char *begin = field.data();
            const char *end = begin + field.size();
            auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
            if (field.empty() || ec != std::errc{} || ptr != end)
                return std::nullopt;
            return value;
        }

        void append_decimal(std::string &out, double v)
        {
            std::array<char, 64> buf{};
            auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            out.append(buf.data(), ptr);
        }

        bool iequals(std::string_view a, std::string_view b)
        {
            return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y)
                              { return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y)); });
        }

        class UniformSource
        {
        public:
            explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

            // [0, 1)
            double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

            double normal()
            {
                const double u1 = 1.0 - uniform(); // (0, 1]
                const double u2 = uniform();
                return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            }

        private:
            std::mt19937_64 engine_;
        };
    }

    std::string_view to_string(Environment env)
    {
        return env == Environment::los ? "LOS" : "NLOS";
    }

    std::string_view to_string(Polarization pol)
    {
        return pol == Polarization::vv ? "VV" : "VH";
    }

    std::optional<Environment> parse_environment(std::string_view token)
    {
        if (iequals(token, "LOS"))
            return Environment::los;
        if (iequals(token, "NLOS"))
            return Environment::nlos;
        return std::nullopt;
    }

    std::optional<Polarization> parse_polarization(std::string_view token)
    {
        if (token == "VV")
            return Polarization::vv;
        if (token == "VH")
            return Polarization::vh;
        return std::nullopt;
    }

    void validate(const PathLossSample &s)
    {
        if (!std::isfinite(s.frequency_ghz) || s.frequency_ghz <= 0.0)
            throw input_error("non-positive frequency");
        if (!std::isfinite(s.distance_m) || s.distance_m < reference_distance_m)
            throw input_error("distance below 1 m reference");
        if (!std::isfinite(s.path_loss_db))
            throw input_error("non-finite path loss");
    }

    void validate(const CampaignDescriptor &c)
    {
        if (!(c.frequency_ghz > 0.0))
            throw input_error("campaign frequency must be positive");
        if (c.n_los_pairs < 0 || c.n_nlos_pairs < 0)
            throw input_error("campaign pair counts must be non-negative");
        if (!(c.d_min_m < c.d_max_m))
            throw input_error("campaign distance range must satisfy d_min < d_max");
    }

    Dataset::Dataset(std::vector<PathLossSample> samples, std::vector<CampaignDescriptor> campaigns)
        : samples_(std::move(samples)), campaigns_(std::move(campaigns))
    {
        if (samples_.empty())
            throw input_error("no samples");
        for (const auto &s : samples_)
            validate(s);
        for (const auto &c : campaigns_)
            validate(c);
    }

    std::vector<std::pair<double, std::size_t>> Dataset::frequency_counts() const
    {
        std::map<double, std::size_t> counts;
        for (const auto &s : samples_)
            ++counts[s.frequency_ghz];
        return {counts.begin(), counts.end()};
    }

    Dataset read_csv(std::istream &in)
    {
        std::string line;
        std::size_t row = 0;

        if (!std::getline(in, line))
            throw input_error("missing header");
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.starts_with("\xEF\xBB\xBF"))
            line.erase(0, 3);

        // Column position of each canonical field
        std::array<std::size_t, csv_columns.size()> position{};
        const auto header = split_fields(line);
        for (std::size_t c = 0; c < csv_columns.size(); ++c)
        {
            const auto it = std::find(header.begin(), header.end(), csv_columns[c]);
            if (it == header.end())
                throw input_error("missing header column '" + std::string(csv_columns[c]) + "'");
            if (std::find(it + 1, header.end(), csv_columns[c]) != header.end())
                throw input_error("duplicate header column '" + std::string(csv_columns[c]) + "'");
            position[c] = static_cast<std::size_t>(it - header.begin());
        }
        for (const auto &name : header)
            if (std::find(csv_columns.begin(), csv_columns.end(), name) == csv_columns.end())
                throw input_error("unexpected header column '" + std::string(name) + "'");

        std::vector<PathLossSample> samples;
        while (std::getline(in, line))
        {
            ++row;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (trim(line).empty())
                continue;

            const auto fields = split_fields(line);
            if (fields.size() != header.size())
                throw input_error("expected " + std::to_string(header.size()) + " fields, found " +
                                  std::to_string(fields.size()) + row_suffix(row));

            const auto number = [&](std::size_t column)
            {
                const auto v = parse_decimal(fields[position[column]]);
                if (!v)
                    throw input_error("non-numeric " + std::string(csv_columns[column]) + " '" +
                                      std::string(fields[position[column]]) + "'" + row_suffix(row));
                return *v;
            };

            PathLossSample s;
            s.frequency_ghz = number(0);
            s.distance_m = number(1);
            const auto env = parse_environment(fields[position[2]]);
            if (!env)
                throw input_error("unknown environment '" + std::string(fields[position[2]]) + "'" + row_suffix(row));
            s.environment = *env;
            const auto pol = parse_polarization(fields[position[3]]);
            if (!pol)
                throw input_error("unknown polarization '" + std::string(fields[position[3]]) + "'" + row_suffix(row));
            s.polarization = *pol;
            s.path_loss_db = number(4);
            s.campaign_id = std::string(fields[position[5]]);

            try
            {
                validate(s);
            }
            catch (const input_error &e)
            {
                throw input_error(e.what() + row_suffix(row));
            }
            samples.push_back(std::move(s));
        }

        if (samples.empty())
            throw input_error("no samples");
        return Dataset(std::move(samples));
    }

    Dataset load_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw input_error("cannot open '" + path.string() + "'");
        return read_csv(in);
    }

    void write_csv(std::ostream &out, const Dataset &ds)
    {
        std::string text;
        for (std::size_t c = 0; c < csv_columns.size(); ++c)
        {
            if (c)
                text += ',';
            text += csv_columns[c];
        }
        text += '\n';
        for (const auto &s : ds.samples())
        {
            if (s.campaign_id.find_first_of(",\r\n") != std::string::npos)
                throw input_error("campaign id cannot contain commas or line breaks: '" + s.campaign_id + "'");
            append_decimal(text, s.frequency_ghz);
            text += ',';
            append_decimal(text, s.distance_m);
            text += ',';
            text += to_string(s.environment);
            text += ',';
            text += to_string(s.polarization);
            text += ',';
            append_decimal(text, s.path_loss_db);
            text += ',';
            text += s.campaign_id;
            text += '\n';
        }
        out << text;
    }

    void save_csv(const std::filesystem::path &path, const Dataset &ds)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw input_error("cannot write '" + path.string() + "'");
        write_csv(out, ds);
    }

    Dataset filter(const Dataset &ds, const SampleFilter &criteria)
    {
        if (criteria.band_ghz && !(criteria.band_ghz->first <= criteria.band_ghz->second))
            throw input_error("band lower bound exceeds upper bound");

        std::vector<PathLossSample> kept;
        for (const auto &s : ds.samples())
        {
            if (criteria.environment && s.environment != *criteria.environment)
                continue;
            if (criteria.polarization && s.polarization != *criteria.polarization)
                continue;
            if (criteria.band_ghz && (s.frequency_ghz < criteria.band_ghz->first || s.frequency_ghz > criteria.band_ghz->second))
                continue;
            kept.push_back(s);
        }
        if (kept.empty())
            throw input_error("no samples match filter");
        const auto campaigns = ds.campaigns();
        return Dataset(std::move(kept), {campaigns.begin(), campaigns.end()});
    }

    std::span<const CampaignDescriptor> bundled_campaigns()
    {
        static const std::vector<CampaignDescriptor> campaigns = {
            {6.75, "370 Jay Street, Brooklyn, NY", 7, 13, 13.0, 97.0, 2.4, 1.5},
            {16.95, "370 Jay Street, Brooklyn, NY", 7, 13, 13.0, 97.0, 2.4, 1.5},
            {28.0, "2 MetroTech Center, Brooklyn, NY", 10, 38, 3.9, 45.9, 2.5, 1.5},
            {73.0, "2 MetroTech Center, Brooklyn, NY", 10, 38, 3.9, 45.9, 2.5, 1.5},
            {142.0, "2 MetroTech Center, Brooklyn, NY", 9, 12, 3.9, 39.2, 2.5, 1.5},
        };
        return campaigns;
    }

    Dataset synthesize(const SynthSpec &spec)
    {
        validate(spec.generating_model);
        if (spec.frequencies_ghz.empty())
            throw input_error("synthesis needs at least one frequency");
        for (double f : spec.frequencies_ghz)
            if (!std::isfinite(f) || f <= 0.0)
                throw input_error("non-positive frequency");
        if (!std::isfinite(spec.d_min_m) || spec.d_min_m < reference_distance_m)
            throw input_error("distance below 1 m reference");
        if (!std::isfinite(spec.d_max_m) || spec.d_max_m < spec.d_min_m)
            throw input_error("synthesis distance range must satisfy d_min <= d_max");
        if (spec.samples_per_frequency < 1)
            throw input_error("samples_per_frequency must be at least 1");
        if (!std::isfinite(spec.sigma_db) || spec.sigma_db < 0.0)
            throw input_error("sigma must be finite and non-negative");

        UniformSource rng(spec.seed);
        const double log_span = std::log(spec.d_max_m / spec.d_min_m);

        std::vector<PathLossSample> samples;
        samples.reserve(spec.frequencies_ghz.size() * spec.samples_per_frequency);
        for (double f : spec.frequencies_ghz)
        {
            for (std::size_t i = 0; i < spec.samples_per_frequency; ++i)
            {
                // exp() can land a hair outside the range; clamp back in
                const double d = std::clamp(spec.d_min_m * std::exp(log_span * rng.uniform()), spec.d_min_m, spec.d_max_m);
                const double noise = rng.normal();
                PathLossSample s;
                s.frequency_ghz = f;
                s.distance_m = d;
                s.environment = spec.environment;
                s.polarization = spec.polarization;
                s.path_loss_db = evaluate(spec.generating_model, f, d) + spec.sigma_db * noise;
                s.campaign_id = spec.campaign_id;
                samples.push_back(std::move(s));
            }
        }
        return Dataset(std::move(samples));
    }
}
