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

#include "plmodel/serialize.hpp"
#include "plmodel/error.hpp"
#include "overloaded.hpp"

namespace plmodel
{
    namespace
    {
        using nlohmann::json;
        using detail::overloaded;

        double number(const json &j, const char *key)
        {
            const auto it = j.find(key);
            if (it == j.end() || !it->is_number())
                throw input_error(std::string("missing numeric field '") + key + "'");
            return it->get<double>();
        }

        double number_or(const json &j, const char *key, double fallback)
        {
            return j.contains(key) ? number(j, key) : fallback;
        }

        void put_copol(json &j, const CoPolParams &p)
        {
            std::visit(overloaded{
                           [&](const CiParams &c) { j["n"] = c.n; },
                           [&](const CifParams &c)
                           {
                               j["n"] = c.n;
                               j["b"] = c.b;
                               j["f0"] = c.f0;
                           },
                           [&](const AbgParams &c)
                           {
                               j["alpha"] = c.alpha;
                               j["beta"] = c.beta;
                               j["gamma"] = c.gamma;
                           }},
                       p);
        }
    }

    nlohmann::json to_json(const ModelParams &p)
    {
        json j = json::object();
        j["model"] = model_name(p);
        std::visit(overloaded{
                       [&](const CiParams &c)
                       {
                           put_copol(j, c);
                           j["sigma"] = c.sigma;
                       },
                       [&](const CifParams &c)
                       {
                           put_copol(j, c);
                           j["sigma"] = c.sigma;
                       },
                       [&](const AbgParams &c)
                       {
                           put_copol(j, c);
                           j["sigma"] = c.sigma;
                       },
                       [&](const FiParams &c)
                       {
                           j["alpha"] = c.alpha;
                           j["beta"] = c.beta;
                           j["sigma"] = c.sigma;
                       },
                       [&](const XpdExtension &x)
                       {
                           put_copol(j, x.base);
                           j["xpd"] = x.xpd;
                           j["sigma"] = x.sigma;
                           j["base_sigma"] = std::visit([](const auto &b) { return b.sigma; }, x.base);
                       },
                       [](const Tr38901InhModel &) {}},
                   p);
        return j;
    }

    ModelParams params_from_json(const nlohmann::json &j)
    {
        if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
            throw input_error("parameter object needs a string 'model' field");
        const auto name = j["model"].get<std::string>();

        ModelParams p;
        if (const auto variant = parse_inh_variant(name))
            p = Tr38901InhModel{*variant};
        else
        {
            const auto family = parse_family(name);
            if (!family)
                throw input_error("unknown model '" + name + "'");
            const double sigma = number_or(j, "sigma", 0.0);
            const double base_sigma = number_or(j, "base_sigma", 0.0);
            switch (*family)
            {
            case ModelFamily::ci:
                p = CiParams{number(j, "n"), sigma};
                break;
            case ModelFamily::fi:
                p = FiParams{number(j, "alpha"), number(j, "beta"), sigma};
                break;
            case ModelFamily::abg:
                p = AbgParams{number(j, "alpha"), number(j, "beta"), number(j, "gamma"), sigma};
                break;
            case ModelFamily::cif:
                p = CifParams{number(j, "n"), number(j, "b"), number(j, "f0"), sigma};
                break;
            case ModelFamily::cix:
                p = XpdExtension{CiParams{number(j, "n"), base_sigma}, number(j, "xpd"), sigma};
                break;
            case ModelFamily::cifx:
                p = XpdExtension{CifParams{number(j, "n"), number(j, "b"), number(j, "f0"), base_sigma}, number(j, "xpd"), sigma};
                break;
            case ModelFamily::abgx:
                p = XpdExtension{AbgParams{number(j, "alpha"), number(j, "beta"), number(j, "gamma"), base_sigma}, number(j, "xpd"), sigma};
                break;
            }
        }
        validate(p);
        return p;
    }

    nlohmann::json to_json(const FitResult &fit)
    {
        json j = to_json(fit.params);
        j["sigma"] = fit.sigma;
        j["n_samples"] = fit.n_samples;
        if (fit.ple_ci95)
            j["ci95"] = json::array({fit.ple_ci95->first, fit.ple_ci95->second});
        else
            j["ci95"] = nullptr;
        if (const auto *c = std::get_if<CifParams>(&fit.params))
            j["f0_rounded"] = rounded_reference_frequency(c->f0);
        return j;
    }

    FitResult fit_from_json(const nlohmann::json &j)
    {
        FitResult fit;
        fit.params = params_from_json(j);
        fit.sigma = number(j, "sigma");
        if (!j.contains("n_samples") || !j["n_samples"].is_number_unsigned())
            throw input_error("missing field 'n_samples'");
        fit.n_samples = j["n_samples"].get<std::size_t>();
        if (j.contains("ci95") && !j["ci95"].is_null())
        {
            const auto &ci = j["ci95"];
            if (!ci.is_array() || ci.size() != 2 || !ci[0].is_number() || !ci[1].is_number())
                throw input_error("ci95 must be [lo, hi]");
            fit.ple_ci95 = std::pair{ci[0].get<double>(), ci[1].get<double>()};
        }
        return fit;
    }

    nlohmann::json to_json(const EquivalenceClaim &claim, const ClaimResult &result)
    {
        return json{{"claim", claim.name},
                    {"lhs", describe(claim.lhs)},
                    {"rhs", describe(claim.rhs)},
                    {"max_abs_gap", claim.max_abs_gap},
                    {"holds", result.holds},
                    {"worst_gap", result.worst_gap},
                    {"worst_f_ghz", result.worst_f_ghz},
                    {"worst_d_m", result.worst_d_m}};
    }

    nlohmann::json to_json(const PublishedEntry &entry)
    {
        json j = to_json(entry.params);
        j["band"] = std::string(to_string(entry.band));
        j["env"] = std::string(to_string(entry.environment));
        j["pol"] = std::string(to_string(entry.polarization));
        j["source"] = entry.source;
        j["sigma"] = entry.sigma;
        return j;
    }
}
