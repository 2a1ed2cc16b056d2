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

#ifndef PLMODEL_REPORT_HPP
#define PLMODEL_REPORT_HPP

#include "plmodel/dataset.hpp"
#include "plmodel/fitting.hpp"
#include "plmodel/registry.hpp"

#include <span>
#include <string>
#include <string_view>

namespace plmodel
{
    enum class ReportFormat
    {
        md,
        csv,
        json
    };

    ReportFormat parse_report_format(std::string_view name); // throws input_error("unknown format ...")

    // Display precision for human-readable tables.
    inline constexpr int parameter_decimals = 2;
    inline constexpr int sigma_decimals = 1;

    std::string fixed(double value, int decimals);

    // Published rows. CSV and markdown cells carry the printed text verbatim.
    std::string format_registry(std::span<const PublishedEntry> entries, ReportFormat format);

    // Human-readable fit summary (display precision).
    std::string format_fit_text(const FitResult &fit);

    // md is rounded for display; csv and json keep full precision.
    std::string format_fit(const FitResult &fit, ReportFormat format);

    // Measured points per frequency plus the model curve at d = 1, 2, ..., 100 m
    // for each of those frequencies.
    std::string format_series(const FitResult &fit, const Dataset &data, ReportFormat format);
}

#endif
