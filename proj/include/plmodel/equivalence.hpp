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

#ifndef PLMODEL_EQUIVALENCE_HPP
#define PLMODEL_EQUIVALENCE_HPP

#include "plmodel/models.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace plmodel
{
    // FI line whose intercept is derived per frequency from a 3GPP InH form.
    struct FiFrom3gpp
    {
        InhVariant variant = InhVariant::los;
    };

    using ClaimSide = std::variant<ModelParams, FiFrom3gpp>;

    struct EvaluationGrid
    {
        std::vector<double> frequencies_ghz;
        std::vector<double> distances_m;
    };

    struct EquivalenceClaim
    {
        std::string name;
        ClaimSide lhs;
        ClaimSide rhs;
        EvaluationGrid domain;
        double max_abs_gap = 1e-9; // [dB]
    };

    struct ClaimResult
    {
        bool holds = false;
        double worst_gap = 0.0;
        double worst_f_ghz = 0.0;
        double worst_d_m = 0.0;
    };

    AbgParams abg_from_ci(double n);

    // CI exponent of an ABG set with beta = 32.4 and gamma = 2; nullopt otherwise.
    std::optional<double> ci_from_abg(const AbgParams &p);

    FiParams fi_from_3gpp(InhVariant variant, double f_ghz);

    double evaluate(const ClaimSide &side, double f_ghz, double d_m);
    std::string describe(const ClaimSide &side);

    // Evaluates both sides over the grid; the first point of maximal gap is reported.
    ClaimResult verify_claim(const EquivalenceClaim &claim);

    // f in {0.5, 1, 6.75, 16.95, 28, 73, 100, 142, 150} GHz x d in {1, 2, 5, 10, 20, 50, 100} m
    EvaluationGrid standard_grid();

    // 3GPP LOS = CI(1.73) = FI(FSPL, 1.73) = ABG(1.73, 32.4, 2);
    // NLOS opt. 2 = CI(3.19) = ABG(3.19, 32.4, 2);
    // NLOS opt. 1 = FI(17.3 + 24.9 log10 f, 3.83) = ABG(3.83, 17.3, 2.49);
    // CIF(b = 0) = CI.
    std::vector<EquivalenceClaim> standard_claims();
}

#endif
