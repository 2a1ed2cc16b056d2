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

#ifndef PLMODEL_SERIALIZE_HPP
#define PLMODEL_SERIALIZE_HPP

#include "plmodel/equivalence.hpp"
#include "plmodel/fitting.hpp"
#include "plmodel/models.hpp"
#include "plmodel/registry.hpp"

#include <json.hpp>

// Flat key-value (JSON object) forms. Keys match field names, e.g.
//   {"model":"ci","n":1.3,"sigma":3.1}
//   {"model":"cix","n":1.3,"xpd":18.5,"sigma":6.9,"base_sigma":3.1}
// Objects are key-sorted and numbers keep full double precision.

namespace plmodel
{
    nlohmann::json to_json(const ModelParams &p);
    ModelParams params_from_json(const nlohmann::json &j); // throws input_error

    // Parameter keys plus sigma, n_samples and ci95 ([lo, hi] or null).
    // CIF results also carry f0_rounded. Residuals are not serialized.
    nlohmann::json to_json(const FitResult &fit);
    FitResult fit_from_json(const nlohmann::json &j);

    nlohmann::json to_json(const EquivalenceClaim &claim, const ClaimResult &result);
    nlohmann::json to_json(const PublishedEntry &entry);
}

#endif
