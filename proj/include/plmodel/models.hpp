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

#ifndef PLMODEL_MODELS_HPP
#define PLMODEL_MODELS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>

// Large-scale path loss model families. Frequencies are in GHz, distances in
// meters, path loss in dB. Every evaluator returns the mean path loss; the
// shadow-fading term is only drawn by dataset synthesis.

namespace plmodel
{
    inline constexpr double reference_distance_m = 1.0;
    inline constexpr double fspl_1m_1ghz_db = 32.4;

    // 3GPP TR 38.901 InH constants
    inline constexpr double inh_los_ple = 1.73;
    inline constexpr double inh_nlos_opt2_ple = 3.19;
    inline constexpr double inh_nlos_opt1_intercept_db = 17.3;
    inline constexpr double inh_nlos_opt1_freq_coeff = 24.9;
    inline constexpr double inh_nlos_opt1_slope = 3.83;

    // Close-in free space reference distance model (d0 = 1 m)
    struct CiParams
    {
        double n = 0.0;     // path loss exponent
        double sigma = 0.0; // shadow-fading std-dev [dB]

        bool operator==(const CiParams &) const = default;
    };

    // Floating-intercept model
    struct FiParams
    {
        double alpha = 0.0; // intercept [dB]
        double beta = 0.0;  // slope
        double sigma = 0.0;

        bool operator==(const FiParams &) const = default;
    };

    // Alpha-beta-gamma model
    struct AbgParams
    {
        double alpha = 0.0; // distance slope
        double beta = 0.0;  // offset [dB]
        double gamma = 0.0; // frequency slope
        double sigma = 0.0;

        bool operator==(const AbgParams &) const = default;
    };

    // CI model with frequency-weighted path loss exponent
    struct CifParams
    {
        double n = 0.0;  // baseline PLE
        double b = 0.0;  // linear frequency dependence of the PLE
        double f0 = 1.0; // reference frequency [GHz]
        double sigma = 0.0;

        bool operator==(const CifParams &) const = default;
    };

    using CoPolParams = std::variant<CiParams, CifParams, AbgParams>;

    // Cross-polarized (V-H) variant: constant XPD offset over a co-polarized base.
    // CI base -> CIX, CIF base -> CIFX, ABG base -> ABGX.
    struct XpdExtension
    {
        CoPolParams base;
        double xpd = 0.0; // [dB]
        double sigma = 0.0;

        bool operator==(const XpdExtension &) const = default;
    };

    enum class InhVariant
    {
        los,
        nlos_opt1,
        nlos_opt2
    };

    // Indoor hotspot path loss forms of 3GPP TR 38.901 (bare forms, no LOS floor).
    struct Tr38901InhModel
    {
        InhVariant variant = InhVariant::los;

        bool operator==(const Tr38901InhModel &) const = default;
    };

    using ModelParams = std::variant<CiParams, FiParams, AbgParams, CifParams, XpdExtension, Tr38901InhModel>;

    enum class ModelFamily
    {
        ci,
        fi,
        abg,
        cif,
        cix,
        cifx,
        abgx
    };

    double fspl_1m(double f_ghz);

    double eval_ci(const CiParams &p, double f_ghz, double d_m);
    double eval_fi(const FiParams &p, double d_m);
    double eval_abg(const AbgParams &p, double f_ghz, double d_m);
    double eval_cif(const CifParams &p, double f_ghz, double d_m);
    double eval_cross(const XpdExtension &x, double f_ghz, double d_m);
    double eval_3gpp_inh(const Tr38901InhModel &m, double f_ghz, double d_m);

    double evaluate(const CoPolParams &p, double f_ghz, double d_m);

    // Dispatch over every family. FI ignores the frequency, but it is still
    // required to be positive so that call sites stay uniform.
    double evaluate(const ModelParams &p, double f_ghz, double d_m);

    // Throws input_error when a parameter set violates its invariants.
    void validate(const ModelParams &p);

    ModelFamily family_of(const XpdExtension &x);
    std::optional<ModelFamily> family_of(const ModelParams &p); // nullopt for 3GPP forms

    // Short identifier: "ci", "fi", "abg", "cif", "cix", "cifx", "abgx" or "3gpp-inh-*".
    std::string model_name(const ModelParams &p);

    std::string_view to_string(ModelFamily family);
    std::optional<ModelFamily> parse_family(std::string_view name);
    bool is_cross_polarized(ModelFamily family);

    std::string_view to_string(InhVariant variant);
    std::optional<InhVariant> parse_inh_variant(std::string_view name);

    // Shadow-fading std-dev carried by the parameter set (0 for 3GPP forms).
    double shadow_sigma(const ModelParams &p);
}

#endif
