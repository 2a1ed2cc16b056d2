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

#include "plmodel/fitting.hpp"
#include "plmodel/error.hpp"
#include "least_squares.hpp"
#include "overloaded.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

namespace plmodel
{
    namespace
    {
        using detail::overloaded;

        double log_distance(double d_m)
        {
            return 10.0 * std::log10(d_m / reference_distance_m);
        }

        double rms(std::span<const double> residuals)
        {
            double sq = 0.0;
            for (double r : residuals)
                sq += r * r;
            return std::sqrt(sq / static_cast<double>(residuals.size()));
        }

        std::pair<double, double> interval(double estimate, double standard_error)
        {
            return {estimate - ci95_z * standard_error, estimate + ci95_z * standard_error};
        }

        std::size_t distinct_distances(const Dataset &ds)
        {
            std::set<double> seen;
            for (const auto &s : ds.samples())
                seen.insert(s.distance_m);
            return seen.size();
        }

        // PL minus the 1 m free-space anchor
        std::vector<double> excess_over_fspl(const Dataset &ds)
        {
            std::vector<double> a;
            a.reserve(ds.size());
            for (const auto &s : ds.samples())
                a.push_back(s.path_loss_db - fspl_1m(s.frequency_ghz));
            return a;
        }

        void set_sigma(ModelParams &p, double sigma)
        {
            std::visit(overloaded{
                           [](Tr38901InhModel &) {},
                           [&](auto &c) { c.sigma = sigma; }},
                       p);
        }

        CoPolParams to_copol(const ModelParams &p)
        {
            if (const auto *c = std::get_if<CiParams>(&p))
                return *c;
            if (const auto *c = std::get_if<CifParams>(&p))
                return *c;
            if (const auto *c = std::get_if<AbgParams>(&p))
                return *c;
            throw input_error("XPD base fit must be a CI, CIF or ABG model");
        }

        ModelParams params_at(ModelFamily family, std::span<const double> v, double f0)
        {
            switch (family)
            {
            case ModelFamily::ci:
                return CiParams{v[0], 0.0};
            case ModelFamily::fi:
                return FiParams{v[0], v[1], 0.0};
            case ModelFamily::abg:
                return AbgParams{v[0], v[1], v[2], 0.0};
            case ModelFamily::cif:
                return CifParams{v[0], v[1], f0, 0.0};
            default:
                throw input_error("oracle_fit supports the ci, fi, abg and cif families");
            }
        }

        std::size_t axes_for(ModelFamily family)
        {
            switch (family)
            {
            case ModelFamily::ci:
                return 1;
            case ModelFamily::fi:
            case ModelFamily::cif:
                return 2;
            case ModelFamily::abg:
                return 3;
            default:
                throw input_error("oracle_fit supports the ci, fi, abg and cif families");
            }
        }
    }

    std::optional<double> distance_slope(const ModelParams &p)
    {
        return std::visit(overloaded{
                              [](const CiParams &c) -> std::optional<double> { return c.n; },
                              [](const FiParams &c) -> std::optional<double> { return c.beta; },
                              [](const AbgParams &c) -> std::optional<double> { return c.alpha; },
                              [](const CifParams &c) -> std::optional<double> { return c.n; },
                              [](const XpdExtension &x) -> std::optional<double>
                              { return std::visit([](const auto &b) { return distance_slope(ModelParams(b)); }, x.base); },
                              [](const Tr38901InhModel &) -> std::optional<double> { return std::nullopt; }},
                          p);
    }

    FitResult fit_ci(const Dataset &ds)
    {
        const auto samples = ds.samples();
        const std::vector<double> a = excess_over_fspl(ds);

        double sum_ad = 0.0;
        double sum_dd = 0.0;
        std::vector<double> dist(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            dist[i] = log_distance(samples[i].distance_m);
            sum_ad += a[i] * dist[i];
            sum_dd += dist[i] * dist[i];
        }
        if (!(sum_dd > 0.0))
            throw unidentifiable_error("n unidentifiable: all samples at d = 1 m");

        const double n = sum_ad / sum_dd;

        FitResult out;
        out.residuals.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.residuals[i] = a[i] - n * dist[i];
        out.sigma = rms(out.residuals);
        out.n_samples = samples.size();
        out.params = CiParams{n, out.sigma};
        out.ple_ci95 = interval(n, out.sigma / std::sqrt(sum_dd));
        return out;
    }

    FitResult fit_fi(const Dataset &ds)
    {
        const auto samples = ds.samples();
        if (distinct_distances(ds) < 2)
            throw unidentifiable_error("beta unidentifiable: all distances equal");

        const auto count = static_cast<double>(samples.size());
        std::vector<double> x(samples.size());
        double mean_x = 0.0;
        double mean_y = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            x[i] = log_distance(samples[i].distance_m);
            mean_x += x[i];
            mean_y += samples[i].path_loss_db;
        }
        mean_x /= count;
        mean_y /= count;

        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            sxx += (x[i] - mean_x) * (x[i] - mean_x);
            sxy += (x[i] - mean_x) * (samples[i].path_loss_db - mean_y);
        }
        if (!(sxx > 0.0))
            throw unidentifiable_error("beta unidentifiable: all distances equal");

        const double beta = sxy / sxx;
        const double alpha = mean_y - beta * mean_x;

        FitResult out;
        out.residuals.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.residuals[i] = samples[i].path_loss_db - (alpha + beta * x[i]);
        out.sigma = rms(out.residuals);
        out.n_samples = samples.size();
        out.params = FiParams{alpha, beta, out.sigma};
        out.ple_ci95 = interval(beta, out.sigma / std::sqrt(sxx));
        return out;
    }

    FitResult fit_abg(const Dataset &ds)
    {
        const auto samples = ds.samples();
        if (ds.frequency_counts().size() < 2)
            throw unidentifiable_error("gamma unidentifiable: single frequency");
        if (distinct_distances(ds) < 2)
            throw unidentifiable_error("alpha unidentifiable: single distance");

        std::array<std::vector<double>, 3> columns;
        std::vector<double> y(samples.size());
        for (auto &c : columns)
            c.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            columns[0][i] = log_distance(samples[i].distance_m);
            columns[1][i] = 1.0;
            columns[2][i] = 10.0 * std::log10(samples[i].frequency_ghz);
            y[i] = samples[i].path_loss_db;
        }
        constexpr std::array<std::string_view, 3> names = {"alpha", "beta", "gamma"};
        const auto solution = detail::solve_least_squares(columns, y, names);
        const auto &c = solution.coefficients;

        FitResult out;
        out.residuals.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.residuals[i] = y[i] - (c[0] * columns[0][i] + c[1] + c[2] * columns[2][i]);
        out.sigma = rms(out.residuals);
        out.n_samples = samples.size();
        out.params = AbgParams{c[0], c[1], c[2], out.sigma};
        out.ple_ci95 = interval(c[0], out.sigma * std::sqrt(solution.inverse_gram_diagonal[0]));
        return out;
    }

    double weighted_reference_frequency(const Dataset &ds)
    {
        double weighted = 0.0;
        double total = 0.0;
        for (const auto &[f, count] : ds.frequency_counts())
        {
            weighted += f * static_cast<double>(count);
            total += static_cast<double>(count);
        }
        return weighted / total;
    }

    double rounded_reference_frequency(double f0_ghz)
    {
        return std::round(f0_ghz);
    }

    FitResult fit_cif(const Dataset &ds, const CifOptions &options)
    {
        double f0 = weighted_reference_frequency(ds);
        if (options.pinned_f0_ghz)
        {
            if (!std::isfinite(*options.pinned_f0_ghz) || *options.pinned_f0_ghz <= 0.0)
                throw input_error("f0 must be positive");
            f0 = *options.pinned_f0_ghz;
        }

        if (ds.frequency_counts().size() < 2)
        {
            FitResult out = fit_ci(ds);
            const double n = std::get<CiParams>(out.params).n;
            out.params = CifParams{n, 0.0, f0, out.sigma};
            return out;
        }

        const auto samples = ds.samples();
        const std::vector<double> a = excess_over_fspl(ds);
        std::array<std::vector<double>, 2> columns;
        for (auto &c : columns)
            c.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            columns[0][i] = log_distance(samples[i].distance_m);
            columns[1][i] = columns[0][i] * (samples[i].frequency_ghz - f0) / f0;
        }
        constexpr std::array<std::string_view, 2> names = {"n", "b"};
        const auto solution = detail::solve_least_squares(columns, a, names);
        const double n = solution.coefficients[0];
        const double nb = solution.coefficients[1];

        double b = 0.0;
        if (std::abs(n) < 1e-12)
        {
            if (std::abs(nb) >= 1e-12)
                throw unidentifiable_error("b unidentifiable: fitted n is zero");
        }
        else
            b = nb / n;

        FitResult out;
        out.residuals.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.residuals[i] = a[i] - (n * columns[0][i] + nb * columns[1][i]);
        out.sigma = rms(out.residuals);
        out.n_samples = samples.size();
        out.params = CifParams{n, b, f0, out.sigma};
        out.ple_ci95 = interval(n, out.sigma * std::sqrt(solution.inverse_gram_diagonal[0]));
        return out;
    }

    FitResult fit_xpd(const FitResult &base, std::span<const PathLossSample> cross)
    {
        const CoPolParams base_params = to_copol(base.params);
        if (cross.empty())
            throw input_error("no cross-polarized samples");
        for (const auto &s : cross)
        {
            if (s.polarization != Polarization::vh)
                throw input_error("cross dataset contains non-VH samples");
            validate(s);
        }

        std::vector<double> offsets(cross.size());
        double mean = 0.0;
        for (std::size_t i = 0; i < cross.size(); ++i)
        {
            offsets[i] = cross[i].path_loss_db - evaluate(base_params, cross[i].frequency_ghz, cross[i].distance_m);
            mean += offsets[i];
        }
        mean /= static_cast<double>(cross.size());

        FitResult out;
        out.residuals.resize(cross.size());
        for (std::size_t i = 0; i < cross.size(); ++i)
            out.residuals[i] = offsets[i] - mean;
        out.sigma = rms(out.residuals);
        out.n_samples = cross.size();
        out.params = XpdExtension{base_params, mean, out.sigma};
        out.ple_ci95 = base.ple_ci95;
        return out;
    }

    FitResult fit_xpd(const FitResult &base, const Dataset &cross)
    {
        return fit_xpd(base, cross.samples());
    }

    std::size_t GridRange::count() const
    {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) || !(step > 0.0) || hi < lo)
            return 0;
        // tolerate representation error at the upper end
        return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    }

    FitResult oracle_fit(const Dataset &ds, ModelFamily family, std::span<const GridRange> grid)
    {
        const std::size_t n_axes = axes_for(family);
        if (grid.size() != n_axes)
            throw input_error("empty grid: " + std::string(to_string(family)) + " needs " + std::to_string(n_axes) + " axes");

        std::vector<std::size_t> counts(n_axes);
        std::size_t total = 1;
        for (std::size_t a = 0; a < n_axes; ++a)
        {
            counts[a] = grid[a].count();
            if (counts[a] == 0)
                throw input_error("empty grid");
            total *= counts[a];
        }

        const double f0 = family == ModelFamily::cif ? weighted_reference_frequency(ds) : 1.0;
        const auto samples = ds.samples();

        const auto point = [&](std::size_t flat)
        {
            std::vector<double> v(n_axes);
            for (std::size_t a = n_axes; a-- > 0;)
            {
                v[a] = grid[a].at(flat % counts[a]);
                flat /= counts[a];
            }
            return params_at(family, v, f0);
        };

        const auto sum_sq = [&](const ModelParams &p)
        {
            double acc = 0.0;
            for (const auto &s : samples)
            {
                const double r = s.path_loss_db - evaluate(p, s.frequency_ghz, s.distance_m);
                acc += r * r;
            }
            return acc;
        };

        struct Best
        {
            double score = std::numeric_limits<double>::infinity();
            std::size_t index = std::numeric_limits<std::size_t>::max();
        };

        const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
        const std::size_t chunk = (total + workers - 1) / workers;
        std::vector<Best> partial(workers);
        {
            std::vector<std::jthread> threads;
            for (std::size_t w = 0; w < workers; ++w)
            {
                threads.emplace_back([&, w]
                                     {
                    const std::size_t begin = w * chunk;
                    const std::size_t end = std::min(total, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i)
                    {
                        const double score = sum_sq(point(i));
                        if (score < partial[w].score)
                            partial[w] = {score, i};
                    } });
            }
        }

        // chunks are in index order, so strict < keeps the lowest index among ties
        Best best;
        for (const auto &p : partial)
            if (p.score < best.score)
                best = p;
        if (best.index == std::numeric_limits<std::size_t>::max())
            throw input_error("oracle grid produced no finite objective");

        FitResult out;
        out.params = point(best.index);
        out.residuals.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            out.residuals[i] = samples[i].path_loss_db - evaluate(out.params, samples[i].frequency_ghz, samples[i].distance_m);
        out.sigma = rms(out.residuals);
        out.n_samples = samples.size();
        set_sigma(out.params, out.sigma);
        return out;
    }

    ResidualStats residual_stats(const FitResult &fit)
    {
        if (fit.residuals.empty())
            throw input_error("fit has no residuals");
        ResidualStats stats;
        for (double r : fit.residuals)
        {
            stats.mean += r;
            stats.max_abs = std::max(stats.max_abs, std::abs(r));
        }
        stats.mean /= static_cast<double>(fit.residuals.size());
        stats.sigma = rms(fit.residuals);
        return stats;
    }
}
