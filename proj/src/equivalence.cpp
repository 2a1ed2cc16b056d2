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

#include "plmodel/equivalence.hpp"
#include "plmodel/error.hpp"
#include "overloaded.hpp"

#include <cmath>
#include <sstream>

namespace plmodel
{
    AbgParams abg_from_ci(double n)
    {
        return AbgParams{n, fspl_1m_1ghz_db, 2.0, 0.0};
    }

    std::optional<double> ci_from_abg(const AbgParams &p)
    {
        if (p.beta == fspl_1m_1ghz_db && p.gamma == 2.0)
            return p.alpha;
        return std::nullopt;
    }

    FiParams fi_from_3gpp(InhVariant variant, double f_ghz)
    {
        switch (variant)
        {
        case InhVariant::los:
            return FiParams{fspl_1m(f_ghz), inh_los_ple, 0.0};
        case InhVariant::nlos_opt2:
            return FiParams{fspl_1m(f_ghz), inh_nlos_opt2_ple, 0.0};
        case InhVariant::nlos_opt1:
            if (!std::isfinite(f_ghz) || f_ghz <= 0.0)
                throw input_error("non-positive frequency");
            return FiParams{inh_nlos_opt1_intercept_db + inh_nlos_opt1_freq_coeff * std::log10(f_ghz),
                            inh_nlos_opt1_slope, 0.0};
        }
        throw input_error("unknown 3GPP InH variant");
    }

    double evaluate(const ClaimSide &side, double f_ghz, double d_m)
    {
        return std::visit(detail::overloaded{
                              [&](const ModelParams &p) { return evaluate(p, f_ghz, d_m); },
                              [&](const FiFrom3gpp &m) { return eval_fi(fi_from_3gpp(m.variant, f_ghz), d_m); }},
                          side);
    }

    std::string describe(const ClaimSide &side)
    {
        std::ostringstream os;
        os.precision(6);
        std::visit(detail::overloaded{
                       [&](const FiFrom3gpp &m) { os << "fi(" << to_string(m.variant) << ")"; },
                       [&](const ModelParams &p)
                       {
                           std::visit(detail::overloaded{
                                          [&](const CiParams &c) { os << "ci(n=" << c.n << ")"; },
                                          [&](const FiParams &c) { os << "fi(alpha=" << c.alpha << ", beta=" << c.beta << ")"; },
                                          [&](const AbgParams &c) { os << "abg(alpha=" << c.alpha << ", beta=" << c.beta << ", gamma=" << c.gamma << ")"; },
                                          [&](const CifParams &c) { os << "cif(n=" << c.n << ", b=" << c.b << ", f0=" << c.f0 << ")"; },
                                          [&](const XpdExtension &x) { os << model_name(x) << "(xpd=" << x.xpd << ")"; },
                                          [&](const Tr38901InhModel &m) { os << to_string(m.variant); }},
                                      p);
                       }},
                   side);
        return os.str();
    }

    ClaimResult verify_claim(const EquivalenceClaim &claim)
    {
        if (claim.domain.frequencies_ghz.empty() || claim.domain.distances_m.empty())
            throw input_error("equivalence grid is empty");
        if (!(claim.max_abs_gap >= 0.0))
            throw input_error("max_abs_gap must be non-negative");

        ClaimResult result;
        result.worst_gap = -1.0;
        for (double f : claim.domain.frequencies_ghz)
            for (double d : claim.domain.distances_m)
            {
                const double gap = std::abs(evaluate(claim.lhs, f, d) - evaluate(claim.rhs, f, d));
                if (gap > result.worst_gap)
                {
                    result.worst_gap = gap;
                    result.worst_f_ghz = f;
                    result.worst_d_m = d;
                }
            }
        result.holds = result.worst_gap <= claim.max_abs_gap;
        return result;
    }

    EvaluationGrid standard_grid()
    {
        return {{0.5, 1.0, 6.75, 16.95, 28.0, 73.0, 100.0, 142.0, 150.0},
                {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}};
    }

    std::vector<EquivalenceClaim> standard_claims()
    {
        const auto grid = standard_grid();
        const auto inh = [](InhVariant v) { return ClaimSide{ModelParams{Tr38901InhModel{v}}}; };
        const auto side = [](ModelParams p) { return ClaimSide{std::move(p)}; };

        return {
            {"3gpp-los == ci(1.73)", inh(InhVariant::los), side(CiParams{inh_los_ple, 0.0}), grid, 1e-9},
            {"3gpp-los == fi(fspl, 1.73)", inh(InhVariant::los), FiFrom3gpp{InhVariant::los}, grid, 1e-9},
            {"3gpp-los == abg(1.73, 32.4, 2)", inh(InhVariant::los), side(abg_from_ci(inh_los_ple)), grid, 1e-9},
            {"3gpp-nlos-opt2 == ci(3.19)", inh(InhVariant::nlos_opt2), side(CiParams{inh_nlos_opt2_ple, 0.0}), grid, 1e-9},
            {"3gpp-nlos-opt2 == abg(3.19, 32.4, 2)", inh(InhVariant::nlos_opt2), side(abg_from_ci(inh_nlos_opt2_ple)), grid, 1e-9},
            {"3gpp-nlos-opt1 == fi(17.3 + 24.9 log10 f, 3.83)", inh(InhVariant::nlos_opt1), FiFrom3gpp{InhVariant::nlos_opt1}, grid, 1e-9},
            {"3gpp-nlos-opt1 == abg(3.83, 17.3, 2.49)", inh(InhVariant::nlos_opt1),
             side(AbgParams{inh_nlos_opt1_slope, inh_nlos_opt1_intercept_db, inh_nlos_opt1_freq_coeff / 10.0, 0.0}), grid, 1e-9},
            {"cif(b=0) == ci", side(CifParams{2.9, 0.0, 12.0, 0.0}), side(CiParams{2.9, 0.0}), grid, 1e-9},
        };
    }
}
