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

#include "plmodel/models.hpp"
#include "plmodel/error.hpp"
#include "overloaded.hpp"

#include <cmath>

namespace plmodel
{
    namespace
    {
        using detail::overloaded;

        void check_frequency(double f_ghz)
        {
            if (!std::isfinite(f_ghz) || f_ghz <= 0.0)
                throw input_error("non-positive frequency");
        }

        void check_distance(double d_m)
        {
            if (!std::isfinite(d_m) || d_m < reference_distance_m)
                throw input_error("distance below 1 m reference");
        }

        void check_finite(double v, const char *what)
        {
            if (!std::isfinite(v))
                throw input_error(std::string(what) + " must be finite");
        }

        void check_sigma(double sigma)
        {
            if (!std::isfinite(sigma) || sigma < 0.0)
                throw input_error("sigma must be finite and non-negative");
        }

        void validate_copol(const CoPolParams &p)
        {
            std::visit(overloaded{
                           [](const CiParams &c)
                           {
                               check_finite(c.n, "n");
                               check_sigma(c.sigma);
                           },
                           [](const CifParams &c)
                           {
                               check_finite(c.n, "n");
                               check_finite(c.b, "b");
                               if (!std::isfinite(c.f0) || c.f0 <= 0.0)
                                   throw input_error("f0 must be positive");
                               check_sigma(c.sigma);
                           },
                           [](const AbgParams &c)
                           {
                               check_finite(c.alpha, "alpha");
                               check_finite(c.beta, "beta");
                               check_finite(c.gamma, "gamma");
                               check_sigma(c.sigma);
                           }},
                       p);
        }
    }

    double fspl_1m(double f_ghz)
    {
        check_frequency(f_ghz);
        return fspl_1m_1ghz_db + 20.0 * std::log10(f_ghz);
    }

    double eval_ci(const CiParams &p, double f_ghz, double d_m)
    {
        check_distance(d_m);
        return fspl_1m(f_ghz) + 10.0 * p.n * std::log10(d_m / reference_distance_m);
    }

    double eval_fi(const FiParams &p, double d_m)
    {
        check_distance(d_m);
        return p.alpha + 10.0 * p.beta * std::log10(d_m);
    }

    double eval_abg(const AbgParams &p, double f_ghz, double d_m)
    {
        check_frequency(f_ghz);
        check_distance(d_m);
        return 10.0 * p.alpha * std::log10(d_m / reference_distance_m) + p.beta + 10.0 * p.gamma * std::log10(f_ghz);
    }

    double eval_cif(const CifParams &p, double f_ghz, double d_m)
    {
        check_distance(d_m);
        const double fspl = fspl_1m(f_ghz);
        const double ple = p.n * (1.0 + p.b * (f_ghz - p.f0) / p.f0);
        return fspl + 10.0 * ple * std::log10(d_m / reference_distance_m);
    }

    double evaluate(const CoPolParams &p, double f_ghz, double d_m)
    {
        return std::visit(overloaded{
                              [&](const CiParams &c) { return eval_ci(c, f_ghz, d_m); },
                              [&](const CifParams &c) { return eval_cif(c, f_ghz, d_m); },
                              [&](const AbgParams &c) { return eval_abg(c, f_ghz, d_m); }},
                          p);
    }

    double eval_cross(const XpdExtension &x, double f_ghz, double d_m)
    {
        return evaluate(x.base, f_ghz, d_m) + x.xpd;
    }

    double eval_3gpp_inh(const Tr38901InhModel &m, double f_ghz, double d_m)
    {
        switch (m.variant)
        {
        case InhVariant::los:
            return eval_ci(CiParams{inh_los_ple, 0.0}, f_ghz, d_m);
        case InhVariant::nlos_opt2:
            return eval_ci(CiParams{inh_nlos_opt2_ple, 0.0}, f_ghz, d_m);
        case InhVariant::nlos_opt1:
        {
            check_frequency(f_ghz);
            const FiParams fi{inh_nlos_opt1_intercept_db + inh_nlos_opt1_freq_coeff * std::log10(f_ghz),
                              inh_nlos_opt1_slope, 0.0};
            return eval_fi(fi, d_m);
        }
        }
        throw input_error("unknown 3GPP InH variant");
    }

    double evaluate(const ModelParams &p, double f_ghz, double d_m)
    {
        return std::visit(overloaded{
                              [&](const CiParams &c) { return eval_ci(c, f_ghz, d_m); },
                              [&](const FiParams &c)
                              {
                                  check_frequency(f_ghz);
                                  return eval_fi(c, d_m);
                              },
                              [&](const AbgParams &c) { return eval_abg(c, f_ghz, d_m); },
                              [&](const CifParams &c) { return eval_cif(c, f_ghz, d_m); },
                              [&](const XpdExtension &c) { return eval_cross(c, f_ghz, d_m); },
                              [&](const Tr38901InhModel &c) { return eval_3gpp_inh(c, f_ghz, d_m); }},
                          p);
    }

    void validate(const ModelParams &p)
    {
        std::visit(overloaded{
                       [](const CiParams &c) { validate_copol(c); },
                       [](const CifParams &c) { validate_copol(c); },
                       [](const AbgParams &c) { validate_copol(c); },
                       [](const FiParams &c)
                       {
                           check_finite(c.alpha, "alpha");
                           check_finite(c.beta, "beta");
                           check_sigma(c.sigma);
                       },
                       [](const XpdExtension &c)
                       {
                           validate_copol(c.base);
                           check_finite(c.xpd, "xpd");
                           check_sigma(c.sigma);
                       },
                       [](const Tr38901InhModel &) {}},
                   p);
    }

    ModelFamily family_of(const XpdExtension &x)
    {
        return std::visit(overloaded{
                              [](const CiParams &) { return ModelFamily::cix; },
                              [](const CifParams &) { return ModelFamily::cifx; },
                              [](const AbgParams &) { return ModelFamily::abgx; }},
                          x.base);
    }

    std::optional<ModelFamily> family_of(const ModelParams &p)
    {
        return std::visit(overloaded{
                              [](const CiParams &) -> std::optional<ModelFamily> { return ModelFamily::ci; },
                              [](const FiParams &) -> std::optional<ModelFamily> { return ModelFamily::fi; },
                              [](const AbgParams &) -> std::optional<ModelFamily> { return ModelFamily::abg; },
                              [](const CifParams &) -> std::optional<ModelFamily> { return ModelFamily::cif; },
                              [](const XpdExtension &x) -> std::optional<ModelFamily> { return family_of(x); },
                              [](const Tr38901InhModel &) -> std::optional<ModelFamily> { return std::nullopt; }},
                          p);
    }

    std::string model_name(const ModelParams &p)
    {
        if (const auto *m = std::get_if<Tr38901InhModel>(&p))
            return std::string(to_string(m->variant));
        return std::string(to_string(*family_of(p)));
    }

    std::string_view to_string(ModelFamily family)
    {
        switch (family)
        {
        case ModelFamily::ci:
            return "ci";
        case ModelFamily::fi:
            return "fi";
        case ModelFamily::abg:
            return "abg";
        case ModelFamily::cif:
            return "cif";
        case ModelFamily::cix:
            return "cix";
        case ModelFamily::cifx:
            return "cifx";
        case ModelFamily::abgx:
            return "abgx";
        }
        return "?";
    }

    std::optional<ModelFamily> parse_family(std::string_view name)
    {
        for (auto f : {ModelFamily::ci, ModelFamily::fi, ModelFamily::abg, ModelFamily::cif,
                       ModelFamily::cix, ModelFamily::cifx, ModelFamily::abgx})
            if (to_string(f) == name)
                return f;
        return std::nullopt;
    }

    bool is_cross_polarized(ModelFamily family)
    {
        return family == ModelFamily::cix || family == ModelFamily::cifx || family == ModelFamily::abgx;
    }

    std::string_view to_string(InhVariant variant)
    {
        switch (variant)
        {
        case InhVariant::los:
            return "3gpp-inh-los";
        case InhVariant::nlos_opt1:
            return "3gpp-inh-nlos-opt1";
        case InhVariant::nlos_opt2:
            return "3gpp-inh-nlos-opt2";
        }
        return "?";
    }

    std::optional<InhVariant> parse_inh_variant(std::string_view name)
    {
        for (auto v : {InhVariant::los, InhVariant::nlos_opt1, InhVariant::nlos_opt2})
            if (to_string(v) == name)
                return v;
        return std::nullopt;
    }

    double shadow_sigma(const ModelParams &p)
    {
        return std::visit(overloaded{
                              [](const Tr38901InhModel &) { return 0.0; },
                              [](const auto &c) { return c.sigma; }},
                          p);
    }
}
