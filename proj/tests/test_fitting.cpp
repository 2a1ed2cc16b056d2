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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "plmodel/error.hpp"
#include "plmodel/fitting.hpp"

#include <cmath>
#include <numeric>

using namespace plmodel;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const std::vector<double> bands = {6.75, 16.95, 28.0, 73.0, 142.0};

    Dataset synth(ModelParams model, std::vector<double> freqs, std::size_t per_freq, double sigma, std::uint64_t seed,
                  Polarization pol = Polarization::vv)
    {
        SynthSpec spec;
        spec.generating_model = std::move(model);
        spec.frequencies_ghz = std::move(freqs);
        spec.samples_per_frequency = per_freq;
        spec.sigma_db = sigma;
        spec.seed = seed;
        spec.polarization = pol;
        return synthesize(spec);
    }

    Dataset points(std::initializer_list<std::array<double, 3>> fdp)
    {
        std::vector<PathLossSample> samples;
        for (const auto &[f, d, pl] : fdp)
            samples.push_back({f, d, Environment::los, Polarization::vv, pl, ""});
        return Dataset(std::move(samples));
    }

    template <class T>
    const T &as(const FitResult &r)
    {
        REQUIRE(std::holds_alternative<T>(r.params));
        return std::get<T>(r.params);
    }
}

TEST_CASE("CI fit", "[fitting]")
{
    SECTION("single sample")
    {
        const auto r = fit_ci(points({{{1.0, 10.0, 62.4}}}));
        CHECK_THAT(as<CiParams>(r).n, WithinAbs(3.0, 1e-12));
        CHECK_THAT(r.sigma, WithinAbs(0.0, 1e-12));
        CHECK(r.n_samples == 1);
    }
    SECTION("noiseless round trip")
    {
        const auto r = fit_ci(synth(CiParams{2.1, 0}, bands, 20, 0.0, 1));
        CHECK_THAT(as<CiParams>(r).n, WithinAbs(2.1, 1e-6));
        CHECK(r.sigma < 1e-6);
        REQUIRE(r.ple_ci95);
        CHECK_THAT(r.ple_ci95->first, WithinAbs(2.1, 1e-6));
        CHECK_THAT(r.ple_ci95->second, WithinAbs(2.1, 1e-6));
    }
    SECTION("closed form against a long double oracle")
    {
        const auto ds = synth(CiParams{3.0, 0}, bands, 40, 8.0, 2);
        long double num = 0, den = 0;
        for (const auto &s : ds.samples())
        {
            const long double D = 10.0L * std::log10(static_cast<long double>(s.distance_m));
            num += (s.path_loss_db - oracle::fspl(s.frequency_ghz)) * D;
            den += D * D;
        }
        CHECK_THAT(as<CiParams>(fit_ci(ds)).n, WithinAbs(static_cast<double>(num / den), 1e-12));
    }
    SECTION("all samples at the reference distance")
    {
        CHECK_THROWS_WITH(fit_ci(points({{{28.0, 1.0, 62.0}}, {{73.0, 1.0, 70.0}}})), "n unidentifiable: all samples at d = 1 m");
        CHECK_THROWS_AS(fit_ci(points({{{28.0, 1.0, 62.0}}})), unidentifiable_error);
    }
    SECTION("confidence interval shrinks with the square root of N")
    {
        const auto small = fit_ci(synth(CiParams{2.0, 0}, {28.0}, 500, 4.0, 11));
        const auto large = fit_ci(synth(CiParams{2.0, 0}, {28.0}, 2000, 4.0, 12));
        const auto width = [](const FitResult &r) { return r.ple_ci95->second - r.ple_ci95->first; };
        CHECK_THAT(width(small) / width(large), WithinRel(2.0, 0.10));
    }
    SECTION("interval is centered on the estimate")
    {
        const auto r = fit_ci(synth(CiParams{2.0, 0}, {28.0}, 50, 4.0, 13));
        const double n = as<CiParams>(r).n;
        CHECK_THAT((r.ple_ci95->first + r.ple_ci95->second) / 2.0, WithinAbs(n, 1e-12));
        CHECK(r.ple_ci95->first < n);
    }
}

TEST_CASE("FI fit", "[fitting]")
{
    SECTION("two points")
    {
        const auto r = fit_fi(points({{{28.0, 1.0, 50.0}}, {{28.0, 10.0, 70.0}}}));
        CHECK_THAT(as<FiParams>(r).alpha, WithinAbs(50.0, 1e-9));
        CHECK_THAT(as<FiParams>(r).beta, WithinAbs(2.0, 1e-9));
        CHECK_THAT(r.sigma, WithinAbs(0.0, 1e-9));
    }
    SECTION("data drawn from 3GPP NLOS option 1 at 28 GHz")
    {
        const auto r = fit_fi(synth(Tr38901InhModel{InhVariant::nlos_opt1}, {28.0}, 50, 0.0, 3));
        CHECK_THAT(as<FiParams>(r).alpha, WithinAbs(53.3342349804213, 1e-6));
        CHECK_THAT(as<FiParams>(r).beta, WithinAbs(3.83, 1e-6));
    }
    SECTION("noiseless round trip")
    {
        const auto r = fit_fi(synth(FiParams{98.9, 0.8, 0}, {142.0}, 30, 0.0, 4));
        CHECK_THAT(as<FiParams>(r).alpha, WithinAbs(98.9, 1e-6));
        CHECK_THAT(as<FiParams>(r).beta, WithinAbs(0.8, 1e-6));
    }
    SECTION("single distance")
    {
        CHECK_THROWS_WITH(fit_fi(points({{{28.0, 5.0, 60.0}}, {{73.0, 5.0, 70.0}}})), "beta unidentifiable: all distances equal");
    }
}

TEST_CASE("ABG fit", "[fitting]")
{
    SECTION("noiseless round trip")
    {
        const auto r = fit_abg(synth(AbgParams{3.1, 23.0, 2.5, 0}, bands, 20, 0.0, 5));
        const auto p = as<AbgParams>(r);
        CHECK_THAT(p.alpha, WithinAbs(3.1, 1e-6));
        CHECK_THAT(p.beta, WithinAbs(23.0, 1e-6));
        CHECK_THAT(p.gamma, WithinAbs(2.5, 1e-6));
    }
    SECTION("CI data recovered as ABG with the free-space constants")
    {
        const auto p = as<AbgParams>(fit_abg(synth(CiParams{2.9, 0}, bands, 20, 0.0, 6)));
        CHECK_THAT(p.alpha, WithinAbs(2.9, 1e-6));
        CHECK_THAT(p.beta, WithinAbs(32.4, 1e-6));
        CHECK_THAT(p.gamma, WithinAbs(2.0, 1e-6));
    }
    SECTION("noisy fit matches a Cramer's rule oracle")
    {
        const auto ds = synth(AbgParams{3.5, 20.0, 2.3, 0}, bands, 30, 9.0, 7);
        std::vector<std::array<long double, 3>> rows;
        std::vector<long double> y;
        for (const auto &s : ds.samples())
        {
            rows.push_back({10.0L * std::log10(static_cast<long double>(s.distance_m)), 1.0L,
                            10.0L * std::log10(static_cast<long double>(s.frequency_ghz))});
            y.push_back(s.path_loss_db);
        }
        const auto expect = oracle::cramer3(rows, y);
        const auto p = as<AbgParams>(fit_abg(ds));
        CHECK_THAT(p.alpha, WithinAbs(static_cast<double>(expect[0]), 1e-9));
        CHECK_THAT(p.beta, WithinAbs(static_cast<double>(expect[1]), 1e-7));
        CHECK_THAT(p.gamma, WithinAbs(static_cast<double>(expect[2]), 1e-9));
    }
    SECTION("single frequency")
    {
        CHECK_THROWS_WITH(fit_abg(synth(AbgParams{3.1, 23.0, 2.5, 0}, {28.0}, 20, 1.0, 8)),
                          ContainsSubstring("gamma unidentifiable"));
    }
    SECTION("single distance")
    {
        CHECK_THROWS_WITH(fit_abg(points({{{28.0, 5.0, 60.0}}, {{73.0, 5.0, 70.0}}})), ContainsSubstring("alpha unidentifiable"));
    }
}

TEST_CASE("CIF fit", "[fitting]")
{
    SECTION("weighted reference frequency")
    {
        const auto ds = points({{{6.75, 2.0, 60.0}}, {{6.75, 3.0, 61.0}}, {{16.95, 2.0, 70.0}}, {{16.95, 5.0, 80.0}}});
        CHECK_THAT(weighted_reference_frequency(ds), WithinAbs(11.85, 1e-12));
        CHECK(rounded_reference_frequency(11.85) == 12.0);
        CHECK(rounded_reference_frequency(33.4) == 33.0);
        const auto uneven = points({{{28.0, 2.0, 60.0}}, {{28.0, 3.0, 61.0}}, {{28.0, 4.0, 62.0}}, {{142.0, 2.0, 80.0}}});
        CHECK_THAT(weighted_reference_frequency(uneven), WithinAbs(56.5, 1e-12));
    }
    SECTION("noiseless round trip")
    {
        SynthSpec spec;
        spec.generating_model = CifParams{2.0, 0.05, 53.34, 0};
        spec.frequencies_ghz = bands;
        spec.samples_per_frequency = 20;
        spec.seed = 9;
        const auto r = fit_cif(synthesize(spec), {.pinned_f0_ghz = 53.34});
        const auto p = as<CifParams>(r);
        CHECK_THAT(p.n, WithinAbs(2.0, 1e-6));
        CHECK_THAT(p.b, WithinAbs(0.05, 1e-6));
        CHECK(p.f0 == 53.34);
    }
    SECTION("noisy fit matches a Cramer's rule oracle")
    {
        SynthSpec spec;
        spec.generating_model = CifParams{3.0, 0.08, 50.0, 0};
        spec.frequencies_ghz = bands;
        spec.samples_per_frequency = 25;
        spec.sigma_db = 7.0;
        spec.seed = 10;
        const auto ds = synthesize(spec);
        const double f0 = weighted_reference_frequency(ds);
        std::vector<std::array<long double, 2>> rows;
        std::vector<long double> y;
        for (const auto &s : ds.samples())
        {
            const long double D = 10.0L * std::log10(static_cast<long double>(s.distance_m));
            rows.push_back({D, D * (s.frequency_ghz - f0) / f0});
            y.push_back(s.path_loss_db - oracle::fspl(s.frequency_ghz));
        }
        const auto [n, nb] = oracle::cramer2(rows, y);
        const auto p = as<CifParams>(fit_cif(ds));
        CHECK_THAT(p.n, WithinAbs(static_cast<double>(n), 1e-9));
        CHECK_THAT(p.b, WithinAbs(static_cast<double>(nb / n), 1e-9));
        CHECK_THAT(p.f0, WithinAbs(f0, 1e-12));
    }
    SECTION("pinned f0")
    {
        const auto ds = synth(CiParams{2.0, 0}, {6.75, 16.95}, 10, 2.0, 11);
        CHECK(as<CifParams>(fit_cif(ds, {.pinned_f0_ghz = 12.0})).f0 == 12.0);
        CHECK_THROWS_AS(fit_cif(ds, {.pinned_f0_ghz = 0.0}), input_error);
    }
    SECTION("single frequency collapses to CI")
    {
        const auto ds = synth(CiParams{2.4, 0}, {28.0}, 40, 5.0, 12);
        const auto cif = fit_cif(ds);
        const auto ci = fit_ci(ds);
        CHECK(as<CifParams>(cif).b == 0.0);
        CHECK_THAT(as<CifParams>(cif).n, WithinAbs(as<CiParams>(ci).n, 1e-12));
        CHECK_THAT(cif.sigma, WithinAbs(ci.sigma, 1e-12));
    }
}

TEST_CASE("XPD fit", "[fitting]")
{
    const auto base = fit_ci(synth(CiParams{2.9, 0}, bands, 20, 0.0, 13));

    SECTION("exact offset")
    {
        const auto cross = synth(XpdExtension{CiParams{2.9, 0}, 18.5, 0}, bands, 20, 0.0, 14, Polarization::vh);
        const auto r = fit_xpd(base, cross);
        const auto &x = as<XpdExtension>(r);
        CHECK_THAT(x.xpd, WithinAbs(18.5, 1e-9));
        CHECK_THAT(std::get<CiParams>(x.base).n, WithinAbs(2.9, 1e-9));
        CHECK(r.n_samples == cross.size());
        CHECK(r.sigma < 1e-9);
    }
    SECTION("noisy offset")
    {
        const auto cross = synth(XpdExtension{CiParams{2.9, 0}, 15.8, 0}, bands, 2000, 3.0, 15, Polarization::vh);
        CHECK_THAT(as<XpdExtension>(fit_xpd(base, cross)).xpd, WithinAbs(15.8, 0.1));
    }
    SECTION("errors")
    {
        CHECK_THROWS_WITH(fit_xpd(base, std::span<const PathLossSample>{}), "no cross-polarized samples");
        const auto co = synth(CiParams{2.9, 0}, bands, 2, 0.0, 16);
        CHECK_THROWS_WITH(fit_xpd(base, co), "cross dataset contains non-VH samples");
        const auto fi = fit_fi(synth(FiParams{60, 2, 0}, {28.0}, 10, 0.0, 17));
        const auto cross = synth(XpdExtension{CiParams{2.9, 0}, 15.8, 0}, bands, 2, 0.0, 18, Polarization::vh);
        CHECK_THROWS_AS(fit_xpd(fi, cross), input_error);
    }
}

TEST_CASE("Grid oracle", "[fitting]")
{
    SECTION("grid ranges")
    {
        CHECK(GridRange{1.0, 3.0, 0.01}.count() == 201);
        CHECK(GridRange{1.0, 1.0, 0.1}.count() == 1);
        CHECK(GridRange{1.0, 0.0, 0.1}.count() == 0);
        CHECK(GridRange{0.0, 1.0, 0.0}.count() == 0);
        CHECK(GridRange{0.0, 1.0, 0.3}.count() == 4);
    }
    SECTION("CI agrees with the closed form within one step")
    {
        const auto ds = synth(CiParams{2.3, 0}, bands, 30, 6.0, 19);
        const auto closed = fit_ci(ds);
        const GridRange grid[] = {{1.0, 4.0, 0.01}};
        const auto brute = oracle_fit(ds, ModelFamily::ci, grid);
        CHECK_THAT(as<CiParams>(brute).n, WithinAbs(as<CiParams>(closed).n, 0.01));
        CHECK(closed.sigma <= brute.sigma);
    }
    SECTION("FI on noiseless on-grid data")
    {
        const auto ds = synth(FiParams{60.0, 2.5, 0}, {28.0}, 30, 0.0, 20);
        const GridRange grid[] = {{59.0, 61.0, 0.01}, {2.0, 3.0, 0.01}};
        const auto brute = oracle_fit(ds, ModelFamily::fi, grid);
        CHECK_THAT(as<FiParams>(brute).alpha, WithinAbs(60.0, 1e-9));
        CHECK_THAT(as<FiParams>(brute).beta, WithinAbs(2.5, 1e-9));
    }
    SECTION("closed-form sigma never exceeds the grid minimum")
    {
        const auto ds = synth(AbgParams{3.0, 25.0, 2.2, 0}, bands, 10, 5.0, 21);
        const GridRange grid[] = {{2.5, 3.5, 0.05}, {20.0, 30.0, 0.5}, {1.5, 3.0, 0.05}};
        CHECK(fit_abg(ds).sigma <= oracle_fit(ds, ModelFamily::abg, grid).sigma);
        const GridRange cif_grid[] = {{2.0, 4.0, 0.02}, {-0.2, 0.2, 0.01}};
        CHECK(fit_cif(ds).sigma <= oracle_fit(ds, ModelFamily::cif, cif_grid).sigma);
    }
    SECTION("bad grids")
    {
        const auto ds = synth(CiParams{2.0, 0}, {28.0}, 5, 0.0, 22);
        const GridRange empty[] = {{1.0, 0.0, 0.1}};
        CHECK_THROWS_AS(oracle_fit(ds, ModelFamily::ci, empty), input_error);
        const GridRange one_axis[] = {{1.0, 2.0, 0.1}};
        CHECK_THROWS_AS(oracle_fit(ds, ModelFamily::abg, one_axis), input_error);
    }
}

TEST_CASE("Least-squares properties", "[fitting]")
{
    const auto ds = synth(AbgParams{3.0, 25.0, 2.2, 0}, bands, 20, 6.0, 23);

    SECTION("residuals are orthogonal to the design columns")
    {
        const auto r = fit_abg(ds);
        double dot_d = 0, dot_1 = 0, dot_f = 0;
        for (std::size_t i = 0; i < ds.size(); ++i)
        {
            const auto &s = ds.samples()[i];
            dot_d += r.residuals[i] * 10.0 * std::log10(s.distance_m);
            dot_1 += r.residuals[i];
            dot_f += r.residuals[i] * 10.0 * std::log10(s.frequency_ghz);
        }
        CHECK(std::abs(dot_d) < 1e-7);
        CHECK(std::abs(dot_1) < 1e-7);
        CHECK(std::abs(dot_f) < 1e-7);
    }
    SECTION("sigma is the RMS of the residuals")
    {
        for (const auto &r : {fit_ci(ds), fit_fi(ds), fit_abg(ds), fit_cif(ds)})
        {
            REQUIRE(r.residuals.size() == ds.size());
            const double sq = std::inner_product(r.residuals.begin(), r.residuals.end(), r.residuals.begin(), 0.0);
            CHECK_THAT(r.sigma, WithinAbs(std::sqrt(sq / static_cast<double>(ds.size())), 1e-12));
            CHECK(shadow_sigma(r.params) == r.sigma);
        }
    }
    SECTION("shifting path loss shifts the intercept")
    {
        std::vector<PathLossSample> shifted(ds.samples().begin(), ds.samples().end());
        for (auto &s : shifted)
            s.path_loss_db += 7.5;
        const auto a = fit_abg(ds);
        const auto b = fit_abg(Dataset(shifted));
        CHECK_THAT(as<AbgParams>(b).beta, WithinAbs(as<AbgParams>(a).beta + 7.5, 1e-8));
        CHECK_THAT(as<AbgParams>(b).alpha, WithinAbs(as<AbgParams>(a).alpha, 1e-10));
        CHECK_THAT(b.sigma, WithinAbs(a.sigma, 1e-10));

        const auto fa = fit_fi(ds);
        const auto fb = fit_fi(Dataset(shifted));
        CHECK_THAT(as<FiParams>(fb).alpha, WithinAbs(as<FiParams>(fa).alpha + 7.5, 1e-9));
    }
    SECTION("residual summary")
    {
        const auto r = fit_ci(points({{{1.0, 10.0, 63.4}}, {{1.0, 100.0, 92.4}}}));
        const auto st = residual_stats(r);
        CHECK(st.max_abs >= st.sigma);
        CHECK_THAT(st.sigma, WithinAbs(r.sigma, 1e-12));
        const double mean = (r.residuals[0] + r.residuals[1]) / 2.0;
        CHECK_THAT(st.mean, WithinAbs(mean, 1e-12));
    }
    SECTION("distance slope")
    {
        CHECK(distance_slope(CiParams{2.0, 0}) == 2.0);
        CHECK(distance_slope(FiParams{60.0, 1.5, 0}) == 1.5);
        CHECK(distance_slope(AbgParams{3.1, 23, 2.5, 0}) == 3.1);
        CHECK(distance_slope(XpdExtension{CifParams{2.5, 0.1, 30, 0}, 20, 0}) == 2.5);
    }
}
