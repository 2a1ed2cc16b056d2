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

#ifndef PLMODEL_DATASET_HPP
#define PLMODEL_DATASET_HPP

#include "plmodel/models.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plmodel
{
    enum class Environment
    {
        los,
        nlos
    };

    enum class Polarization
    {
        vv, // co-polarized
        vh  // cross-polarized
    };

    std::string_view to_string(Environment env);        // "LOS" / "NLOS"
    std::string_view to_string(Polarization pol);       // "VV" / "VH"
    std::optional<Environment> parse_environment(std::string_view token); // case-insensitive
    std::optional<Polarization> parse_polarization(std::string_view token);

    struct PathLossSample
    {
        double frequency_ghz = 0.0;
        double distance_m = 0.0; // 3D TX-RX separation
        Environment environment = Environment::los;
        Polarization polarization = Polarization::vv;
        double path_loss_db = 0.0;
        std::string campaign_id;

        bool operator==(const PathLossSample &) const = default;
    };

    // Summary of one measurement campaign (site, TX-RX pair counts, geometry).
    struct CampaignDescriptor
    {
        double frequency_ghz = 0.0;
        std::string site;
        int n_los_pairs = 0;
        int n_nlos_pairs = 0;
        double d_min_m = 0.0;
        double d_max_m = 0.0;
        double tx_height_m = 0.0;
        double rx_height_m = 0.0;

        bool operator==(const CampaignDescriptor &) const = default;
    };

    // Throws input_error if a sample is outside the model domain.
    void validate(const PathLossSample &s);
    void validate(const CampaignDescriptor &c);

    // Non-empty, validated, immutable collection of samples.
    class Dataset
    {
    public:
        explicit Dataset(std::vector<PathLossSample> samples, std::vector<CampaignDescriptor> campaigns = {});

        std::span<const PathLossSample> samples() const { return samples_; }
        std::span<const CampaignDescriptor> campaigns() const { return campaigns_; }
        std::size_t size() const { return samples_.size(); }

        // Distinct frequencies in ascending order, with the number of samples at each.
        std::vector<std::pair<double, std::size_t>> frequency_counts() const;

        bool operator==(const Dataset &) const = default;

    private:
        std::vector<PathLossSample> samples_;
        std::vector<CampaignDescriptor> campaigns_;
    };

    // CSV interchange. Header: freq_ghz,distance_m,env,pol,pl_db,campaign
    // Errors name the offending row (the header is row 1).
    Dataset load_csv(const std::filesystem::path &path);
    Dataset read_csv(std::istream &in);
    void write_csv(std::ostream &out, const Dataset &ds);
    void save_csv(const std::filesystem::path &path, const Dataset &ds);

    struct SampleFilter
    {
        std::optional<Environment> environment;
        std::optional<Polarization> polarization;
        std::optional<std::pair<double, double>> band_ghz; // inclusive [lo, hi]
    };

    // Throws input_error("no samples match filter") when nothing is left.
    Dataset filter(const Dataset &ds, const SampleFilter &criteria);

    // Campaign descriptors of the 6.75, 16.95, 28, 73 and 142 GHz InH measurements.
    std::span<const CampaignDescriptor> bundled_campaigns();

    struct SynthSpec
    {
        ModelParams generating_model = CiParams{};
        std::vector<double> frequencies_ghz;
        double d_min_m = 1.0;
        double d_max_m = 100.0;
        std::size_t samples_per_frequency = 1;
        double sigma_db = 0.0;
        std::uint64_t seed = 0;
        Environment environment = Environment::los;
        Polarization polarization = Polarization::vv;
        std::string campaign_id = "synthetic";
    };

    /// Draws a synthetic dataset from a generating model.
    ///
    /// For each frequency (in the given order) and each sample, one distance is
    /// drawn log-uniformly in [d_min, d_max] and Gaussian shadow fading with
    /// std-dev `sigma_db` is added to the mean path loss.
    ///
    /// Random numbers come from std::mt19937_64 seeded with `seed`. Uniforms use
    /// the top 53 bits of one engine output; normals use the Box-Muller cosine
    /// branch on two uniforms. Standard library distributions are not used, so
    /// the stream is the same for every conforming standard library.
    Dataset synthesize(const SynthSpec &spec);
}

#endif
