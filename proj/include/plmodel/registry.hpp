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

#ifndef PLMODEL_REGISTRY_HPP
#define PLMODEL_REGISTRY_HPP

#include "plmodel/dataset.hpp"
#include "plmodel/models.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Published InH path loss parameters (NYU WIRELESS measurements at 6.75,
// 16.95, 28, 73 and 142 GHz), stored at their printed precision.

namespace plmodel
{
    enum class Band
    {
        single_6_75,
        single_16_95,
        single_28,
        single_73,
        single_142,
        fr3_7_24,
        wide_0_5_100,
        wide_0_5_150
    };

    std::string_view to_string(Band band); // "single_6_75", ..., "wide_0_5_150"
    std::optional<Band> parse_band(std::string_view token); // case-insensitive

    struct PrintedValue
    {
        std::string column; // n, b, f0, alpha, beta, gamma, xpd, sigma
        std::string text;   // exactly as printed

        bool operator==(const PrintedValue &) const = default;
    };

    struct PublishedEntry
    {
        ModelFamily model = ModelFamily::ci;
        Band band = Band::single_6_75;
        Environment environment = Environment::los;
        Polarization polarization = Polarization::vv;
        ModelParams params;          // XPD bases carry the co-polarized row's sigma
        double sigma = 0.0;          // [dB]
        std::string source;          // "Table I" .. "Table IV"
        std::vector<PrintedValue> printed; // in table column order
    };

    // Every transcribed row, in table order.
    std::span<const PublishedEntry> all_entries();

    // Throws input_error when no such row was published.
    const PublishedEntry &lookup(ModelFamily model, Band band, Environment env, Polarization pol);

    // "ci:single_142:los:vv"
    const PublishedEntry &lookup(std::string_view key);

    struct RegistryFilter
    {
        std::optional<ModelFamily> model;
        std::optional<Band> band;
        std::optional<Environment> environment;
        std::optional<Polarization> polarization;
        std::optional<std::string> source; // canonical "Table N"
    };

    std::vector<PublishedEntry> list_entries(const RegistryFilter &filter = {});

    // Accepts "table1", "table-i", "Table I", "I", ... -> "Table I"
    std::optional<std::string> parse_table_name(std::string_view token);

    // Filter from a comma-separated list of key fragments, each one a table
    // name, band, model family, environment or polarization ("table4",
    // "wide_0_5_150,los", "ci,vv"). Empty text means no filter.
    RegistryFilter parse_registry_filter(std::string_view text);

    std::string registry_key(const PublishedEntry &e);
}

#endif
