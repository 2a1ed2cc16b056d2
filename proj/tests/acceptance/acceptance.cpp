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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "plmodel/cli.hpp"
#include "plmodel/dataset.hpp"
#include "plmodel/equivalence.hpp"
#include "plmodel/fitting.hpp"
#include "plmodel/registry.hpp"
#include "plmodel/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace plmodel;

namespace
{
    // Reference values computed independently at 30 significant digits.
    constexpr double fspl_6_75 = 48.9860754566205;
    constexpr double fspl_142 = 75.4457668876611;

    const std::vector<double> five_bands = {6.75, 16.95, 28.0, 73.0, 142.0};

    struct Outcome
    {
        bool pass = true;
        std::vector<std::string> notes;

        void check(bool ok, std::string note)
        {
            if (!ok)
                pass = false;
            notes.push_back((ok ? "" : "!") + std::move(note));
        }
    };

    std::string num(double v, int digits = 6)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        return buf;
    }

    Dataset synth(ModelParams model, std::vector<double> freqs, std::size_t per_freq, double sigma, std::uint64_t seed,
                  Environment env = Environment::los, Polarization pol = Polarization::vv)
    {
        SynthSpec spec;
        spec.generating_model = std::move(model);
        spec.frequencies_ghz = std::move(freqs);
        spec.samples_per_frequency = per_freq;
        spec.sigma_db = sigma;
        spec.seed = seed;
        spec.environment = env;
        spec.polarization = pol;
        return synthesize(spec);
    }

    double max_param_gap(const ModelParams &a, const ModelParams &b)
    {
        const auto flat = [](const ModelParams &p)
        {
            std::vector<double> v;
            const auto copol = [&](const CoPolParams &c)
            {
                std::visit(
                    [&](const auto &x)
                    {
                        using T = std::decay_t<decltype(x)>;
                        if constexpr (std::is_same_v<T, CiParams>)
                            v.insert(v.end(), {x.n});
                        else if constexpr (std::is_same_v<T, CifParams>)
                            v.insert(v.end(), {x.n, x.b, x.f0});
                        else
                            v.insert(v.end(), {x.alpha, x.beta, x.gamma});
                    },
                    c);
            };
            std::visit(
                [&](const auto &x)
                {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, FiParams>)
                        v.insert(v.end(), {x.alpha, x.beta});
                    else if constexpr (std::is_same_v<T, XpdExtension>)
                    {
                        copol(x.base);
                        v.push_back(x.xpd);
                    }
                    else if constexpr (std::is_same_v<T, Tr38901InhModel>)
                        v.push_back(static_cast<double>(x.variant));
                    else
                        copol(x);
                },
                p);
            return v;
        };
        const auto va = flat(a), vb = flat(b);
        if (va.size() != vb.size())
            return INFINITY;
        double gap = 0.0;
        for (std::size_t i = 0; i < va.size(); ++i)
            gap = std::max(gap, std::abs(va[i] - vb[i]));
        return gap;
    }

    // 1
    Outcome fspl_anchors()
    {
        Outcome o;
        const double at1 = fspl_1m(1.0);
        o.check(at1 == 32.4, "fspl(1)=" + num(at1, 15) + " (exactly 32.4)");
        const double at675 = fspl_1m(6.75);
        o.check(std::abs(at675 - fspl_6_75) < 1e-12, "fspl(6.75)=" + num(at675, 15) + " vs reference " + num(fspl_6_75, 15));
        o.check(std::abs(at675 - 49.0) <= 0.05, "fspl(6.75) within 49.0+-0.05");
        const double at142 = fspl_1m(142.0);
        o.check(std::abs(at142 - fspl_142) < 1e-12, "fspl(142)=" + num(at142, 15) + " vs reference " + num(fspl_142, 15));
        o.check(std::abs(at142 - 75.5) <= 0.05, "fspl(142) within 75.5+-0.05 (gap " + num(std::abs(at142 - 75.5), 4) + " dB)");
        return o;
    }

    // 2
    Outcome equivalences()
    {
        Outcome o;
        const auto claims = standard_claims();
        o.check(claims.size() == 8, std::to_string(claims.size()) + " identities");
        double worst = 0.0;
        for (const auto &c : claims)
        {
            const auto r = verify_claim(c);
            worst = std::max(worst, r.worst_gap);
            o.check(r.holds && r.worst_gap <= 1e-9 && c.domain.frequencies_ghz.size() == 9 && c.domain.distances_m.size() == 7,
                    c.name + " gap " + num(r.worst_gap, 3));
        }
        o.notes.push_back("worst gap " + num(worst, 3) + " dB");
        return o;
    }

    // 3
    Outcome round_trip()
    {
        Outcome o;
        const std::vector<std::pair<ModelFamily, ModelParams>> cases = {
            {ModelFamily::ci, CiParams{2.9, 0}},
            {ModelFamily::fi, FiParams{98.9, 0.8, 0}},
            {ModelFamily::abg, AbgParams{3.1, 23.0, 2.5, 0}},
            {ModelFamily::cif, CifParams{2.9, 0.1, 12.0, 0}},
            {ModelFamily::cix, XpdExtension{CiParams{2.9, 0}, 15.8, 0}},
            {ModelFamily::cifx, XpdExtension{CifParams{2.9, 0.1, 12.0, 0}, 21.8, 0}},
            {ModelFamily::abgx, XpdExtension{AbgParams{3.2, 12.9, 3.4, 0}, 16.2, 0}},
        };
        for (const auto &[family, truth] : cases)
        {
            // CIF is fitted with f0 pinned to the generating value
            const auto freqs = family == ModelFamily::fi ? std::vector<double>{142.0} : five_bands;
            FitResult fit;
            const auto copol = [&](const ModelParams &p)
            {
                const auto ds = synth(p, freqs, 20, 0.0, 100);
                if (std::holds_alternative<CiParams>(p))
                    return fit_ci(ds);
                if (std::holds_alternative<FiParams>(p))
                    return fit_fi(ds);
                if (std::holds_alternative<AbgParams>(p))
                    return fit_abg(ds);
                return fit_cif(ds, {.pinned_f0_ghz = std::get<CifParams>(p).f0});
            };
            if (const auto *x = std::get_if<XpdExtension>(&truth))
            {
                const auto base = copol(std::visit([](const auto &b) { return ModelParams{b}; }, x->base));
                fit = fit_xpd(base, synth(truth, freqs, 20, 0.0, 101, Environment::los, Polarization::vh));
            }
            else
                fit = copol(truth);
            const double gap = max_param_gap(fit.params, truth);
            o.check(gap <= 1e-6, std::string(to_string(family)) + " noiseless gap " + num(gap, 2));
        }

        const auto ci_noisy = fit_ci(synth(CiParams{2.9, 0}, five_bands, 2000, 10.5, 42));
        const double n = std::get<CiParams>(ci_noisy.params).n;
        o.check(std::abs(n - 2.9) <= 0.05, "CI n=" + num(n, 5) + " (2.9+-0.05)");
        o.check(std::abs(ci_noisy.sigma - 10.5) <= 0.2, "CI sigma=" + num(ci_noisy.sigma, 5) + " (10.5+-0.2)");

        const auto abg = std::get<AbgParams>(fit_abg(synth(AbgParams{3.1, 23.0, 2.5, 0}, five_bands, 2000, 3.0, 42)).params);
        o.check(std::abs(abg.alpha - 3.1) <= 0.1, "ABG alpha=" + num(abg.alpha, 5));
        o.check(std::abs(abg.beta - 23.0) <= 0.1, "ABG beta=" + num(abg.beta, 5));
        o.check(std::abs(abg.gamma - 2.5) <= 0.1, "ABG gamma=" + num(abg.gamma, 5));
        return o;
    }

    // 4
    Outcome oracle_equivalence()
    {
        Outcome o;
        constexpr double step = 0.01;
        constexpr double slack = 1e-9;
        std::mt19937_64 rng(2026);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int ci_ok = 0, fi_alpha_ok = 0, fi_beta_ok = 0, fi_sigma_ok = 0;
        double ci_worst = 0.0, fi_alpha_worst = 0.0, fi_beta_worst = 0.0;
        for (int k = 0; k < 50; ++k)
        {
            const double f = five_bands[k % five_bands.size()];
            const double n_true = 1.0 + 2.5 * unit(rng);
            const double sigma = 1.0 + 9.0 * unit(rng);
            const std::size_t count = 20 + static_cast<std::size_t>(40 * unit(rng));
            const auto ds = synth(CiParams{n_true, 0}, {f}, count, sigma, rng());

            const auto ci = fit_ci(ds);
            const double n_hat = std::get<CiParams>(ci.params).n;
            const GridRange ci_grid[] = {{std::floor(n_hat) - 1.0, std::floor(n_hat) + 2.0, step}};
            const double n_grid = std::get<CiParams>(oracle_fit(ds, ModelFamily::ci, ci_grid).params).n;
            ci_worst = std::max(ci_worst, std::abs(n_grid - n_hat));
            ci_ok += std::abs(n_grid - n_hat) <= step + slack;

            const auto fi = fit_fi(ds);
            const auto fi_hat = std::get<FiParams>(fi.params);
            const double a0 = std::round(fi_hat.alpha), b0 = std::round(fi_hat.beta);
            const GridRange fi_grid[] = {{a0 - 3.0, a0 + 3.0, step}, {b0 - 1.0, b0 + 1.0, step}};
            const auto grid_fit = oracle_fit(ds, ModelFamily::fi, fi_grid);
            const auto fi_grid_p = std::get<FiParams>(grid_fit.params);
            const double da = std::abs(fi_grid_p.alpha - fi_hat.alpha), db = std::abs(fi_grid_p.beta - fi_hat.beta);
            fi_alpha_worst = std::max(fi_alpha_worst, da);
            fi_beta_worst = std::max(fi_beta_worst, db);
            fi_alpha_ok += da <= step + slack;
            fi_beta_ok += db <= step + slack;
            fi_sigma_ok += fi.sigma <= grid_fit.sigma;
        }
        o.check(ci_ok == 50, "CI n " + std::to_string(ci_ok) + "/50 within one step (worst " + num(ci_worst, 3) + ")");
        o.check(fi_beta_ok == 50, "FI beta " + std::to_string(fi_beta_ok) + "/50 (worst " + num(fi_beta_worst, 3) + ")");
        o.check(fi_alpha_ok == 50, "FI alpha " + std::to_string(fi_alpha_ok) + "/50 (worst " + num(fi_alpha_worst, 3) + ")");
        o.check(fi_sigma_ok == 50, "FI closed-form sigma <= grid sigma " + std::to_string(fi_sigma_ok) + "/50");
        return o;
    }

    // 5
    Outcome registry_fidelity()
    {
        Outcome o;
        std::ifstream in(std::string(PLMODEL_TEST_DATA_DIR) + "/registry_golden.csv", std::ios::binary);
        std::ostringstream golden;
        golden << in.rdbuf();
        const auto exported = format_registry(all_entries(), ReportFormat::csv);
        o.check(in.good() || in.eof(), "golden file readable");
        o.check(exported == golden.str(), "CSV export byte-identical to golden transcription (" +
                                              std::to_string(all_entries().size()) + " rows)");

        std::size_t mismatched = 0;
        for (const auto &e : all_entries())
        {
            if (&lookup(registry_key(e)) != &e)
                ++mismatched;
            const auto row = format_registry(std::span(&e, 1), ReportFormat::csv);
            for (const auto &p : e.printed)
                if (row.find(',' + p.text) == std::string::npos)
                    ++mismatched;
        }
        o.check(mismatched == 0, "lookup and per-row report round trip, " + std::to_string(mismatched) + " mismatches");

        const auto &ci = lookup("ci:single_142:los:vv");
        o.check(std::get<CiParams>(ci.params).n == 1.8 && ci.sigma == 3.0, "CI 142 GHz LOS n=1.8 sigma=3.0");
        const auto &fi = lookup("fi:single_142:nlos:vv");
        const auto &fp = std::get<FiParams>(fi.params);
        o.check(fp.alpha == 98.9 && fp.beta == 0.8 && fi.sigma == 4.6, "FI 142 GHz NLOS 98.9/0.8/4.6");
        const auto &cif = lookup("cif:wide_0_5_150:los:vv");
        const auto &cp = std::get<CifParams>(cif.params);
        o.check(cp.n == 1.4 && cp.b == 0.1 && cp.f0 == 57.0 && cif.sigma == 3.0, "CIF 0.5-150 GHz LOS 1.4/0.1/57.0/3.0");
        return o;
    }

    // 6
    Outcome confidence_interval()
    {
        Outcome o;
        // 7 samples per band x 5 bands at sigma 3.5 dB targets a 95% half-width near 0.1
        const auto dir = std::filesystem::temp_directory_path();
        const auto make = [&](const std::string &name, double n)
        {
            const auto path = (dir / name).string();
            std::ostringstream out, err;
            cli::run({"synth", "--model", "ci", "--n", num(n, 6), "--sigma", "3.5", "--freqs", "6.75,16.95,28,73,142",
                      "--count", "7", "--seed", "42", "--env", "LOS", "--output", path},
                     out, err);
            return path;
        };
        const auto compare = [](const std::string &path)
        {
            std::ostringstream out, err;
            const int code = cli::run({"compare", "--input", path, "--against", "3gpp-inh-los"}, out, err);
            return std::pair{code, out.str()};
        };
        const auto verdict = [](const std::string &text)
        {
            const auto at = text.find("verdict");
            return at == std::string::npos ? std::string("?") : text.substr(at + 10, text.find('\n', at) - at - 10);
        };

        const auto low = make("plmodel_accept_ci14.csv", 1.4);
        const auto fit = fit_ci(load_csv(low));
        const double half = (fit.ple_ci95->second - fit.ple_ci95->first) / 2.0;
        o.notes.push_back("n=" + num(std::get<CiParams>(fit.params).n, 4) + " ci95 [" + num(fit.ple_ci95->first, 4) + ", " +
                          num(fit.ple_ci95->second, 4) + "] half-width " + num(half, 3));
        const auto [c1, out1] = compare(low);
        o.check(c1 == 0 && verdict(out1) == "OUTSIDE", "CI(1.4) vs 1.73: " + verdict(out1));

        const auto matched = make("plmodel_accept_ci173.csv", 1.73);
        const auto [c2, out2] = compare(matched);
        o.check(c2 == 0 && verdict(out2) == "INSIDE", "CI(1.73) vs 1.73: " + verdict(out2));
        return o;
    }

    // 7
    Outcome invariants()
    {
        Outcome o;
        const auto ds = synth(AbgParams{3.0, 25.0, 2.2, 0}, five_bands, 40, 6.0, 7);

        const auto abg = fit_abg(ds);
        double worst_dot = 0.0;
        {
            double dots[3] = {};
            for (std::size_t i = 0; i < ds.size(); ++i)
            {
                const auto &s = ds.samples()[i];
                dots[0] += abg.residuals[i] * 10.0 * std::log10(s.distance_m);
                dots[1] += abg.residuals[i];
                dots[2] += abg.residuals[i] * 10.0 * std::log10(s.frequency_ghz);
            }
            for (double d : dots)
                worst_dot = std::max(worst_dot, std::abs(d));
        }
        o.check(worst_dot < 1e-7, "ABG residuals orthogonal to design columns (" + num(worst_dot, 2) + ")");

        const auto ci = fit_ci(ds);
        double dot_ci = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i)
            dot_ci += ci.residuals[i] * 10.0 * std::log10(ds.samples()[i].distance_m);
        o.check(std::abs(dot_ci) < 1e-7, "CI residuals orthogonal to log-distance (" + num(std::abs(dot_ci), 2) + ")");

        double anchor = 0.0;
        for (double f : five_bands)
        {
            anchor = std::max(anchor, std::abs(eval_ci({2.7, 0}, f, 1.0) - fspl_1m(f)));
            anchor = std::max(anchor, std::abs(eval_cif({2.7, 0.3, 40.0, 0}, f, 1.0) - fspl_1m(f)));
        }
        anchor = std::max(anchor, std::abs(eval_abg({3.1, 23.0, 2.5, 0}, 1.0, 1.0) - 23.0));
        for (const auto &e : all_entries())
            if (const auto *c = std::get_if<CiParams>(&e.params))
                anchor = std::max(anchor, std::abs(eval_ci(*c, 28.0, 1.0) - fspl_1m(28.0)));
        o.check(anchor < 1e-12, "anchor identities (" + num(anchor, 2) + ")");

        std::vector<PathLossSample> shifted(ds.samples().begin(), ds.samples().end());
        for (auto &s : shifted)
            s.path_loss_db += 5.0;
        const auto abg_shift = std::get<AbgParams>(fit_abg(Dataset(shifted)).params);
        const auto abg_base = std::get<AbgParams>(abg.params);
        const auto fi_shift = std::get<FiParams>(fit_fi(Dataset(shifted)).params);
        const auto fi_base = std::get<FiParams>(fit_fi(ds).params);
        o.check(std::abs(abg_shift.beta - abg_base.beta - 5.0) < 1e-8 && std::abs(abg_shift.alpha - abg_base.alpha) < 1e-10 &&
                    std::abs(fi_shift.alpha - fi_base.alpha - 5.0) < 1e-8 && std::abs(fi_shift.beta - fi_base.beta) < 1e-10,
                "shift equivariance of intercepts");

        const auto again = synth(AbgParams{3.0, 25.0, 2.2, 0}, five_bands, 40, 6.0, 7);
        bool same = again.size() == ds.size();
        for (std::size_t i = 0; same && i < ds.size(); ++i)
            same = std::memcmp(&again.samples()[i].path_loss_db, &ds.samples()[i].path_loss_db, sizeof(double)) == 0 &&
                   again.samples()[i].distance_m == ds.samples()[i].distance_m;
        std::ostringstream a, b, e1, e2;
        cli::run({"synth", "--model", "ci", "--n", "2.9", "--sigma", "10.5", "--freqs", "6.75,16.95", "--count", "200", "--seed", "42"}, a, e1);
        cli::run({"synth", "--model", "ci", "--n", "2.9", "--sigma", "10.5", "--freqs", "6.75,16.95", "--count", "200", "--seed", "42"}, b, e2);
        const GridRange grid[] = {{2.0, 4.0, 0.05}, {20.0, 30.0, 0.5}, {1.5, 3.0, 0.05}};
        const bool oracle_same = oracle_fit(ds, ModelFamily::abg, grid).params == oracle_fit(ds, ModelFamily::abg, grid).params;
        o.check(same && a.str() == b.str() && !a.str().empty() && oracle_same, "determinism (synthesize, CLI synth, grid oracle)");

        const auto single = synth(CiParams{2.4, 0}, {28.0}, 60, 5.0, 8);
        const auto cif = fit_cif(single);
        const auto ci1 = fit_ci(single);
        const double collapse = std::abs(std::get<CifParams>(cif.params).n - std::get<CiParams>(ci1.params).n);
        o.check(std::get<CifParams>(cif.params).b == 0.0 && collapse <= 1e-12, "CIF single-frequency collapse (" + num(collapse, 2) + ")");

        bool filter_ok = true;
        {
            const SampleFilter env{.environment = Environment::los};
            const SampleFilter band{.band_ghz = std::pair{10.0, 80.0}};
            filter_ok = filter(filter(ds, env), band) == filter(filter(ds, band), env) &&
                        filter(filter(ds, band), band) == filter(ds, band);
        }
        o.check(filter_ok, "filter idempotent and commutative");

        std::stringstream csv;
        write_csv(csv, ds);
        o.check(read_csv(csv) == ds, "CSV write/load round trip");
        return o;
    }
}

int main()
{
    struct Criterion
    {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "FSPL anchors", 1.0, fspl_anchors},
        {2, "equivalence suite", 1.0, equivalences},
        {3, "round-trip recovery", 10.0, round_trip},
        {4, "closed form vs grid oracle", 30.0, oracle_equivalence},
        {5, "registry fidelity", 1.0, registry_fidelity},
        {6, "confidence-interval verdicts", 5.0, confidence_interval},
        {7, "invariant suite", 30.0, invariants},
    };

    int failed = 0;
    for (const auto &c : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.check(secs < c.budget_s, "runtime " + num(secs, 3) + " s (budget " + num(c.budget_s) + " s)");
        failed += !o.pass;

        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": ";
        for (std::size_t i = 0; i < o.notes.size(); ++i)
            std::cout << (i ? "; " : "") << o.notes[i];
        std::cout << '\n';
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
