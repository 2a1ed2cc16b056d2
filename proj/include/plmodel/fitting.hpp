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

#ifndef PLMODEL_FITTING_HPP
#define PLMODEL_FITTING_HPP

#include "plmodel/dataset.hpp"
#include "plmodel/models.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

// MMSE parameter estimation. Every fit minimizes the shadow-fading standard
// deviation, reported as the population RMS of the residuals (divide by N).
// 95% intervals use the normal 1.96 multiplier with that same sigma.

namespace plmodel
{
    inline constexpr double ci95_z = 1.96;

    struct FitResult
    {
        ModelParams params;      // params' own sigma field carries the fitted sigma
        double sigma = 0.0;      // residual RMS [dB]
        std::size_t n_samples = 0;
        std::optional<std::pair<double, double>> ple_ci95; // on the distance-slope parameter
        std::vector<double> residuals;                     // measured - model, sample-aligned
    };

    // Distance-slope parameter of a parameter set: n (CI, CIF), beta (FI),
    // alpha (ABG), or that of the base model for XPD variants.
    std::optional<double> distance_slope(const ModelParams &p);

    FitResult fit_ci(const Dataset &ds);
    FitResult fit_fi(const Dataset &ds);
    FitResult fit_abg(const Dataset &ds);

    // Count-weighted mean of the distinct measurement frequencies.
    double weighted_reference_frequency(const Dataset &ds);

    // f0 as shown in tables (nearest 1 GHz).
    double rounded_reference_frequency(double f0_ghz);

    struct CifOptions
    {
        std::optional<double> pinned_f0_ghz; // use instead of the weighted mean
    };

    // Single-frequency datasets force b = 0 and reduce to fit_ci.
    FitResult fit_cif(const Dataset &ds, const CifOptions &options = {});

    // Constant XPD offset over a fixed co-polarized base fit (CI, CIF or ABG).
    // The base parameters are not refitted.
    FitResult fit_xpd(const FitResult &base, std::span<const PathLossSample> cross);
    FitResult fit_xpd(const FitResult &base, const Dataset &cross);

    // Inclusive range lo, lo + step, ..., up to hi.
    struct GridRange
    {
        double lo = 0.0;
        double hi = 0.0;
        double step = 0.0;

        std::size_t count() const; // 0 for an invalid range
        double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
    };

    /// Brute-force minimizer of sigma over a parameter grid.
    ///
    /// Axes per family: CI {n}; FI {alpha, beta}; ABG {alpha, beta, gamma};
    /// CIF {n, b} with f0 fixed to the weighted reference frequency. Grid points
    /// are enumerated with the last axis fastest; among equal-sigma minima the
    /// lowest index wins. Evaluation is split across threads, and the reduction
    /// keeps that tie-break, so the result matches a sequential scan.
    FitResult oracle_fit(const Dataset &ds, ModelFamily family, std::span<const GridRange> grid);

    struct ResidualStats
    {
        double mean = 0.0;
        double sigma = 0.0; // RMS about zero
        double max_abs = 0.0;
    };

    ResidualStats residual_stats(const FitResult &fit);
}

#endif
