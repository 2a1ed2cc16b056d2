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

#include "plmodel/cli.hpp"
#include "plmodel/dataset.hpp"
#include "plmodel/equivalence.hpp"
#include "plmodel/error.hpp"
#include "plmodel/fitting.hpp"
#include "plmodel/registry.hpp"
#include "plmodel/report.hpp"
#include "plmodel/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace plmodel::cli
{
    namespace
    {
        constexpr const char *ansi_green = "\x1b[32m";
        constexpr const char *ansi_red = "\x1b[31m";
        constexpr const char *ansi_reset = "\x1b[0m";

        std::string styled(const std::string &text, bool good, const Terminal &terminal)
        {
            if (!terminal.color)
                return text;
            return std::string(good ? ansi_green : ansi_red) + text + ansi_reset;
        }

        std::string lower(std::string s)
        {
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            return s;
        }

        double parse_number(std::string_view text, const std::string &what)
        {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
                throw input_error("invalid number '" + std::string(text) + "' for " + what);
            return v;
        }

        std::vector<double> parse_list(const std::string &text, const std::string &what)
        {
            std::vector<double> values;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
                values.push_back(parse_number(item, what));
            if (values.empty())
                throw input_error(what + " is empty");
            return values;
        }

        // Options shared by every command that selects samples
        struct SelectionFlags
        {
            std::string env;
            std::string pol;
            std::string band;

            SampleFilter to_filter() const
            {
                SampleFilter f;
                if (!env.empty())
                {
                    f.environment = parse_environment(env);
                    if (!f.environment)
                        throw input_error("unknown environment '" + env + "'");
                }
                if (!pol.empty())
                {
                    f.polarization = parse_polarization(lower(pol) == "vv" ? "VV" : lower(pol) == "vh" ? "VH" : "");
                    if (!f.polarization)
                        throw input_error("unknown polarization '" + pol + "'");
                }
                if (!band.empty())
                {
                    const auto v = parse_list(band, "--band");
                    if (v.size() != 2 || !(v[0] <= v[1]))
                        throw input_error("--band expects lo,hi with lo <= hi");
                    f.band_ghz = std::pair{v[0], v[1]};
                }
                return f;
            }

            void attach(CLI::App *cmd)
            {
                cmd->add_option("--env", env, "LOS or NLOS");
                cmd->add_option("--pol", pol, "VV or VH");
                cmd->add_option("--band", band, "Inclusive frequency band lo,hi in GHz");
            }
        };

        struct ModelFlags
        {
            std::string model;
            std::optional<double> n, b, f0, alpha, beta, gamma, xpd;

            void attach(CLI::App *cmd)
            {
                cmd->add_option("--model", model, "ci, fi, abg, cif, cix, cifx, abgx, 3gpp-inh-los, 3gpp-inh-nlos-opt1, 3gpp-inh-nlos-opt2");
                cmd->add_option("--n", n, "Path loss exponent");
                cmd->add_option("--b", b, "CIF frequency dependence");
                cmd->add_option("--f0", f0, "CIF reference frequency [GHz]");
                cmd->add_option("--alpha", alpha, "FI intercept [dB] or ABG distance slope");
                cmd->add_option("--beta", beta, "FI slope or ABG offset [dB]");
                cmd->add_option("--gamma", gamma, "ABG frequency slope");
                cmd->add_option("--xpd", xpd, "Cross-polarization discrimination [dB]");
            }

            double need(const std::optional<double> &v, const char *flag) const
            {
                if (!v)
                    throw input_error(std::string(flag) + " is required for model " + model);
                return *v;
            }

            ModelParams to_params() const
            {
                if (model.empty())
                    throw input_error("--model is required");
                if (const auto variant = parse_inh_variant(model))
                    return Tr38901InhModel{*variant};
                const auto family = parse_family(model);
                if (!family)
                    throw input_error("unknown model '" + model + "'");

                const auto ci = [&] { return CiParams{need(n, "--n"), 0.0}; };
                const auto cif = [&] { return CifParams{need(n, "--n"), need(b, "--b"), need(f0, "--f0"), 0.0}; };
                const auto abg = [&] { return AbgParams{need(alpha, "--alpha"), need(beta, "--beta"), need(gamma, "--gamma"), 0.0}; };

                ModelParams p;
                switch (*family)
                {
                case ModelFamily::ci:
                    p = ci();
                    break;
                case ModelFamily::fi:
                    p = FiParams{need(alpha, "--alpha"), need(beta, "--beta"), 0.0};
                    break;
                case ModelFamily::abg:
                    p = abg();
                    break;
                case ModelFamily::cif:
                    p = cif();
                    break;
                case ModelFamily::cix:
                    p = XpdExtension{ci(), need(xpd, "--xpd"), 0.0};
                    break;
                case ModelFamily::cifx:
                    p = XpdExtension{cif(), need(xpd, "--xpd"), 0.0};
                    break;
                case ModelFamily::abgx:
                    p = XpdExtension{abg(), need(xpd, "--xpd"), 0.0};
                    break;
                }
                validate(p);
                return p;
            }
        };

        void write_json_file(const std::string &path, const nlohmann::json &j)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw input_error("cannot write '" + path + "'");
            f << j.dump(2) << '\n';
        }

        FitResult fit_family(const Dataset &ds, ModelFamily family, const SampleFilter &selection, std::optional<double> pin_f0)
        {
            const auto co_polarized = [&](ModelFamily base, const Dataset &data)
            {
                switch (base)
                {
                case ModelFamily::ci:
                    return fit_ci(data);
                case ModelFamily::fi:
                    return fit_fi(data);
                case ModelFamily::abg:
                    return fit_abg(data);
                case ModelFamily::cif:
                    return fit_cif(data, CifOptions{pin_f0});
                default:
                    throw input_error("not a co-polarized family");
                }
            };

            if (!is_cross_polarized(family))
                return co_polarized(family, filter(ds, selection));

            if (selection.polarization)
                throw input_error("--pol cannot be combined with cross-polarized models (V-V base and V-H data are both used)");
            SampleFilter vv = selection;
            vv.polarization = Polarization::vv;
            SampleFilter vh = selection;
            vh.polarization = Polarization::vh;
            const ModelFamily base = family == ModelFamily::cix    ? ModelFamily::ci
                                     : family == ModelFamily::cifx ? ModelFamily::cif
                                                                   : ModelFamily::abg;
            const FitResult base_fit = co_polarized(base, filter(ds, vv));
            return fit_xpd(base_fit, filter(ds, vh));
        }

        int cmd_fit(const std::string &input, const std::string &model, const SelectionFlags &sel,
                    std::optional<double> pin_f0, const std::string &json_path, std::ostream &out)
        {
            const auto family = parse_family(model);
            if (!family)
                throw input_error("unknown model '" + model + "'");
            if (pin_f0 && *family != ModelFamily::cif && *family != ModelFamily::cifx)
                throw input_error("--pin-f0 only applies to cif and cifx");
            const SampleFilter selection = sel.to_filter();

            const Dataset ds = load_csv(input);
            const FitResult fit = fit_family(ds, *family, selection, pin_f0);
            out << format_fit_text(fit);
            if (!json_path.empty())
                write_json_file(json_path, to_json(fit));
            return exit_ok;
        }

        int cmd_eval(const ModelFlags &flags, const std::string &registry_key, std::optional<double> f,
                     std::optional<double> d, std::ostream &out)
        {
            if (!d)
                throw input_error("--d is required");
            ModelParams params;
            if (!registry_key.empty())
            {
                if (!flags.model.empty())
                    throw input_error("use either --registry or --model, not both");
                params = lookup(registry_key).params;
            }
            else
                params = flags.to_params();

            double frequency = 0.0;
            if (f)
                frequency = *f;
            else if (std::holds_alternative<FiParams>(params))
                frequency = 1.0; // FI is frequency independent
            else
                throw input_error("--f is required for model " + model_name(params));

            out << fixed(evaluate(params, frequency, *d), parameter_decimals) << " dB\n";
            return exit_ok;
        }

        struct SynthFlags
        {
            std::string freqs;
            double sigma = 0.0;
            std::size_t count = 1;
            std::uint64_t seed = 0;
            double d_min = 1.0;
            double d_max = 100.0;
            std::string env = "LOS";
            std::string pol = "VV";
            std::string campaign = "synthetic";
            std::string output;
        };

        int cmd_synth(const ModelFlags &model, const SynthFlags &flags, std::ostream &out)
        {
            SynthSpec spec;
            spec.generating_model = model.to_params();
            if (flags.freqs.empty())
                throw input_error("--freqs is required");
            spec.frequencies_ghz = parse_list(flags.freqs, "--freqs");
            spec.d_min_m = flags.d_min;
            spec.d_max_m = flags.d_max;
            spec.samples_per_frequency = flags.count;
            spec.sigma_db = flags.sigma;
            spec.seed = flags.seed;
            const auto env = parse_environment(flags.env);
            if (!env)
                throw input_error("unknown environment '" + flags.env + "'");
            spec.environment = *env;
            const std::string pol = lower(flags.pol);
            if (pol != "vv" && pol != "vh")
                throw input_error("unknown polarization '" + flags.pol + "'");
            spec.polarization = pol == "vv" ? Polarization::vv : Polarization::vh;
            spec.campaign_id = flags.campaign;

            const Dataset ds = synthesize(spec);
            if (flags.output.empty())
                write_csv(out, ds);
            else
                save_csv(flags.output, ds);
            return exit_ok;
        }

        int cmd_compare_claims(const std::string &json_path, std::ostream &out, const Terminal &terminal)
        {
            nlohmann::json report = nlohmann::json::array();
            bool all = true;
            for (const auto &claim : standard_claims())
            {
                const ClaimResult r = verify_claim(claim);
                all = all && r.holds;
                char gap[32];
                std::snprintf(gap, sizeof gap, "%.3e", r.worst_gap);
                out << styled(r.holds ? "HOLDS" : "FAILS", r.holds, terminal) << "  " << claim.name
                    << "  worst_gap=" << gap << " dB at f=" << r.worst_f_ghz << " GHz, d=" << r.worst_d_m << " m\n";
                report.push_back(to_json(claim, r));
            }
            if (!json_path.empty())
                write_json_file(json_path, report);
            return all ? exit_ok : exit_failure;
        }

        int cmd_compare(const std::string &input, const std::string &against, const SelectionFlags &sel,
                        const std::string &json_path, std::ostream &out, const Terminal &terminal)
        {
            const auto variant = parse_inh_variant(against);
            if (!variant)
                throw input_error("unknown 3GPP variant '" + against + "'");
            const SampleFilter selection = sel.to_filter();
            const Dataset ds = filter(load_csv(input), selection);

            FitResult fit;
            std::string parameter;
            double reference = 0.0;
            double fitted = 0.0;
            switch (*variant)
            {
            case InhVariant::los:
            case InhVariant::nlos_opt2:
                fit = fit_ci(ds);
                parameter = "n";
                fitted = std::get<CiParams>(fit.params).n;
                reference = *variant == InhVariant::los ? inh_los_ple : inh_nlos_opt2_ple;
                break;
            case InhVariant::nlos_opt1:
                fit = fit_abg(ds);
                parameter = "alpha";
                fitted = std::get<AbgParams>(fit.params).alpha;
                reference = inh_nlos_opt1_slope;
                break;
            }

            const auto [lo, hi] = *fit.ple_ci95;
            const bool inside = lo <= reference && reference <= hi;

            out << "against   " << against << '\n'
                << "parameter " << parameter << '\n'
                << "fitted    " << fixed(fitted, parameter_decimals) << '\n'
                << "reference " << fixed(reference, parameter_decimals) << '\n'
                << "ci95      [" << fixed(lo, parameter_decimals) << ", " << fixed(hi, parameter_decimals) << "]\n";
            if (const auto *abg = std::get_if<AbgParams>(&fit.params))
                out << "gamma     " << fixed(abg->gamma, parameter_decimals) << " (reference "
                    << fixed(inh_nlos_opt1_freq_coeff / 10.0, parameter_decimals) << ")\n";
            out << "sigma     " << fixed(fit.sigma, sigma_decimals) << " dB\n"
                << "samples   " << fit.n_samples << '\n'
                << "verdict   " << styled(inside ? "INSIDE" : "OUTSIDE", inside, terminal) << '\n';

            if (!json_path.empty())
            {
                nlohmann::json j = to_json(fit);
                j["against"] = against;
                j["parameter"] = parameter;
                j["fitted"] = fitted;
                j["reference"] = reference;
                j["verdict"] = inside ? "INSIDE" : "OUTSIDE";
                write_json_file(json_path, j);
            }
            return exit_ok;
        }

        int cmd_report(const std::optional<std::string> &registry_filter, const std::string &fit_path,
                       const std::string &data_path, bool series, const std::string &format_name, std::ostream &out)
        {
            const ReportFormat format = parse_report_format(format_name);
            if (registry_filter && !fit_path.empty())
                throw input_error("use either --registry or --fit, not both");

            if (registry_filter)
            {
                if (series)
                    throw input_error("--series needs --fit and --data");
                out << format_registry(list_entries(parse_registry_filter(*registry_filter)), format);
                return exit_ok;
            }
            if (fit_path.empty())
                throw input_error("report needs --registry or --fit");

            std::ifstream f(fit_path, std::ios::binary);
            if (!f)
                throw input_error("cannot open '" + fit_path + "'");
            nlohmann::json j;
            try
            {
                j = nlohmann::json::parse(f);
            }
            catch (const nlohmann::json::parse_error &e)
            {
                throw input_error("invalid JSON in '" + fit_path + "': " + e.what());
            }
            const FitResult fit = fit_from_json(j);

            if (series)
            {
                if (data_path.empty())
                    throw input_error("--series needs --data");
                out << format_series(fit, load_csv(data_path), format);
            }
            else
                out << format_fit(fit, format);
            return exit_ok;
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Terminal &terminal)
    {
        CLI::App app{"Large-scale path loss model evaluation and fitting", "plmodel"};
        app.require_subcommand(1);

        // fit
        auto *fit = app.add_subcommand("fit", "Fit a model family to a CSV dataset");
        std::string fit_input, fit_model, fit_json;
        std::optional<double> pin_f0;
        SelectionFlags fit_sel;
        fit->add_option("--input", fit_input, "Measurement CSV")->required();
        fit->add_option("--model", fit_model, "ci, fi, abg, cif, cix, cifx, abgx")->required();
        fit->add_option("--pin-f0", pin_f0, "Fix the CIF reference frequency [GHz]");
        fit->add_option("--json", fit_json, "Also write the fit as JSON");
        fit_sel.attach(fit);

        // eval
        auto *eval = app.add_subcommand("eval", "Evaluate mean path loss at (f, d)");
        ModelFlags eval_model;
        std::string eval_registry;
        std::optional<double> eval_f, eval_d;
        eval_model.attach(eval);
        eval->add_option("--registry", eval_registry, "Published entry model:band:env:pol, e.g. ci:single_142:los:vv");
        eval->add_option("--f", eval_f, "Frequency [GHz]");
        eval->add_option("--d", eval_d, "3D distance [m]");

        // synth
        auto *synth = app.add_subcommand("synth", "Draw a synthetic dataset from a model");
        ModelFlags synth_model;
        SynthFlags synth_flags;
        synth_model.attach(synth);
        synth->add_option("--freqs", synth_flags.freqs, "Comma-separated frequencies [GHz]");
        synth->add_option("--sigma", synth_flags.sigma, "Shadow-fading std-dev [dB]");
        synth->add_option("--count", synth_flags.count, "Samples per frequency");
        synth->add_option("--seed", synth_flags.seed, "PRNG seed");
        synth->add_option("--dmin", synth_flags.d_min, "Minimum distance [m]");
        synth->add_option("--dmax", synth_flags.d_max, "Maximum distance [m]");
        synth->add_option("--env", synth_flags.env, "LOS or NLOS");
        synth->add_option("--pol", synth_flags.pol, "VV or VH");
        synth->add_option("--campaign", synth_flags.campaign, "Campaign id written to every row");
        synth->add_option("--output", synth_flags.output, "Output CSV (default: stdout)");

        // compare
        auto *compare = app.add_subcommand("compare", "Compare fitted slopes with 3GPP InH values, or verify model equivalences");
        std::string cmp_input, cmp_against, cmp_json;
        bool cmp_claims = false;
        SelectionFlags cmp_sel;
        compare->add_option("--input", cmp_input, "Measurement CSV");
        compare->add_option("--against", cmp_against, "3gpp-inh-los, 3gpp-inh-nlos-opt1 or 3gpp-inh-nlos-opt2");
        compare->add_flag("--claims", cmp_claims, "Verify the CI/FI/ABG/3GPP equivalences instead");
        compare->add_option("--json", cmp_json, "Also write the report as JSON");
        cmp_sel.attach(compare);

        // report
        auto *report = app.add_subcommand("report", "Render published tables, fit results or plot series");
        std::optional<std::string> rep_registry;
        std::string rep_fit, rep_data, rep_format = "md";
        bool rep_series = false;
        report->add_option("--registry", rep_registry, "Registry filter: all, table1..table4, band, model, env, pol (comma-separated)");
        report->add_option("--fit", rep_fit, "Fit JSON written by 'fit --json'");
        report->add_option("--data", rep_data, "Measurement CSV for --series");
        report->add_flag("--series", rep_series, "Emit scatter points and model curves");
        report->add_option("--format", rep_format, "md, csv or json");

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_input_error;
        }

        try
        {
            if (*fit)
                return cmd_fit(fit_input, fit_model, fit_sel, pin_f0, fit_json, out);
            if (*eval)
                return cmd_eval(eval_model, eval_registry, eval_f, eval_d, out);
            if (*synth)
                return cmd_synth(synth_model, synth_flags, out);
            if (*compare)
            {
                if (cmp_claims)
                    return cmd_compare_claims(cmp_json, out, terminal);
                if (cmp_input.empty() || cmp_against.empty())
                    throw input_error("compare needs --input and --against (or --claims)");
                return cmd_compare(cmp_input, cmp_against, cmp_sel, cmp_json, out, terminal);
            }
            if (*report)
                return cmd_report(rep_registry, rep_fit, rep_data, rep_series, rep_format, out);
        }
        catch (const input_error &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_input_error;
        }
        catch (const unidentifiable_error &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_unidentifiable;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_failure;
        }
        return exit_failure;
    }
}
