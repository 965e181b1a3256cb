// Copyright 2026 The diamond-qnd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnd/commands.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qnd/constants.h"
#include "qnd/dynamics.h"
#include "qnd/output.h"
#include "qnd/parallel.h"
#include "qnd/readout.h"

namespace qnd {

namespace {

using nlohmann::json;

Provenance provenance(const CommandOptions &opts, const std::string &command,
                      std::vector<std::pair<std::string, std::string>> units) {
    return {command, opts.config.source_hash, std::move(units)};
}

ReadoutOptions readout_options(const CommandOptions &opts) {
    ReadoutOptions r;
    r.refine_probe = opts.refine_probe;
    r.frequency_offset = opts.config.frequency_offset;
    return r;
}

json couplings_json(const CouplingSet &c) {
    return {
        {"omega_r_mhz", angular_to_mhz(c.omega_r())},
        {"omega_a_mhz", angular_to_mhz(c.omega_a())},
        {"omega_qb_mhz", angular_to_mhz(c.omega_qb())},
        {"g_zz_mhz", angular_to_mhz(c.g_zz())},
        {"g_a_mhz", angular_to_mhz(c.g_a())},
        {"kappa_mhz", angular_to_mhz(c.kappa())},
        {"dispersive_shift_mhz", angular_to_mhz(dispersive_shift(c))},
    };
}

json chain_json(const RunConfig &cfg) {
    return {
        {"T_N_kelvin", cfg.chain.noise_temperature},
        {"tau_ns", cfg.chain.tau / kNanosecond},
        {"bandwidth_mhz", cfg.chain.bandwidth * 1e-6},
        {"bandwidth_defaulted", cfg.bandwidth_defaulted},
        {"carrier_ghz", cfg.chain.carrier / kTwoPi * 1e-9},
        {"carrier_defaulted", cfg.carrier_defaulted},
    };
}

const char *orientation_name(Orientation o) {
    return o == Orientation::ExcitedAbove ? "excited_above" : "excited_below";
}

json report_json(const FidelityReport &r, const CouplingSet &c) {
    return {
        {"probe_offset_mhz", angular_to_mhz(r.probe_omega - c.omega_r())},
        {"probe_power_photons_per_ns", r.probe_power / kPhotonsPerNs},
        {"p_t_g_photons_per_s", r.p_t_g},
        {"p_t_e_photons_per_s", r.p_t_e},
        {"nbar_g", r.nbar_g},
        {"nbar_e", r.nbar_e},
        {"noise_flux_photons_per_s", r.noise_flux},
        {"threshold", r.threshold},
        {"orientation", orientation_name(r.orientation)},
        {"err_g", r.err_g},
        {"err_e", r.err_e},
        {"fidelity", r.fidelity},
    };
}

std::vector<QubitState> selected_states(const CommandOptions &opts) {
    if (opts.state) {
        return {*opts.state};
    }
    return {QubitState::G, QubitState::E};
}

std::string fmt(double x, int precision = 6) {
    std::ostringstream ss;
    ss.precision(precision);
    ss << x;
    return ss.str();
}

}  // namespace

CommandResult run_spectrum(const CommandOptions &opts) {
    const RunConfig &cfg = opts.config;
    const CouplingSet &c = cfg.couplings;
    std::vector<double> grid = linspace(c.omega_r() - cfg.spectrum.span, c.omega_r() + cfg.spectrum.span, cfg.spectrum.points);
    double origin = cfg.spectrum.offsets ? c.omega_r() : 0.0;

    CommandResult result;
    std::ostringstream summary;
    for (QubitState state : selected_states(opts)) {
        Spectrum sp = spectrum(state, cfg.probe_power, grid, c);
        Table table{{"omega_mhz", "re_t", "im_t", "power_ratio"}, {}};
        for (const auto &pt : sp.points) {
            table.rows.push_back({angular_to_mhz(pt.omega - origin), pt.t.real(), pt.t.imag(), pt.power_ratio});
        }
        std::string tag(1, label(state));
        Provenance prov = provenance(opts, "spectrum", {{"omega_mhz", cfg.spectrum.offsets ? "MHz offset from omega_r" : "MHz"},
                                                        {"power_ratio", "|t|^2"}});
        auto path = opts.out_dir / ("spectrum_" + tag + extension(opts.format));
        write_text(path, render_table(table, prov, opts.format));
        result.files.push_back(path);

        json positions = json::array(), heights = json::array();
        for (const auto &pk : sp.peaks) {
            positions.push_back(angular_to_mhz(pk.omega - origin));
            heights.push_back(pk.height);
        }
        json peaks = {
            {"qubit_state", tag},
            {"probe_power_photons_per_ns", cfg.probe_power / kPhotonsPerNs},
            {"peak_positions_mhz", positions},
            {"peak_heights", heights},
        };
        auto peak_path = opts.out_dir / ("peaks_" + tag + ".json");
        write_text(peak_path, render_document(peaks, prov));
        result.files.push_back(peak_path);

        summary << tag << ": " << sp.peaks.size() << " peaks";
        for (const auto &pk : sp.peaks) {
            summary << " " << fmt(angular_to_mhz(pk.omega - origin)) << "MHz(" << fmt(pk.height, 4) << ")";
        }
        summary << "\n";
    }
    result.summary = summary.str();
    return result;
}

CommandResult run_histogram(const CommandOptions &opts) {
    const RunConfig &cfg = opts.config;
    ReadoutOptions ro = readout_options(opts);
    auto [dist_g, dist_e] = histogram_pair(cfg.couplings, cfg.probe_power, cfg.chain, ro);
    FidelityReport report = fidelity(cfg.couplings, cfg.probe_power, cfg.chain, ro);

    Table table{{"n", "prob_g", "prob_e"}, {}};
    size_t n_max = std::max(dist_g.probs.size(), dist_e.probs.size());
    for (size_t n = 0; n < n_max; n++) {
        table.rows.push_back({static_cast<double>(n), dist_g.at(n), dist_e.at(n)});
    }
    Provenance prov = provenance(opts, "histogram", {{"n", "photon counts in tau"}, {"prob", "probability"}});
    CommandResult result;
    auto path = opts.out_dir / (std::string("histogram") + extension(opts.format));
    write_text(path, render_table(table, prov, opts.format));
    result.files.push_back(path);

    json summary = report_json(report, cfg.couplings);
    summary["mean_g"] = dist_g.mean;
    summary["mean_e"] = dist_e.mean;
    summary["variance_g"] = dist_g.variance;
    summary["variance_e"] = dist_e.variance;
    summary["overlap"] = overlap(dist_g, dist_e);
    summary["cutoff"] = n_max - 1;
    auto summary_path = opts.out_dir / "histogram_summary.json";
    write_text(summary_path, render_document(summary, prov));
    result.files.push_back(summary_path);

    std::ostringstream text;
    text << "threshold " << report.threshold << " (" << orientation_name(report.orientation) << "), fidelity "
         << fmt(report.fidelity, 8) << ", overlap " << fmt(overlap(dist_g, dist_e)) << "\n";

    if (cfg.monte_carlo.samples > 0) {
        uint64_t seed = opts.seed.value_or(cfg.monte_carlo.seed);
        json mc = json::object();
        for (auto [tag, p_t] : {std::pair{"g", report.p_t_g}, std::pair{"e", report.p_t_e}}) {
            MonteCarloReport r = monte_carlo_check(p_t, report.noise_flux, cfg.chain.tau, cfg.monte_carlo.samples, seed);
            mc[tag] = {
                {"signal_mean", r.signal_mean},
                {"noise_mean", r.noise_mean},
                {"samples", r.n_samples},
                {"seed", r.seed},
                {"tv_distance", r.tv_distance},
            };
            text << "monte carlo " << tag << ": tv " << fmt(r.tv_distance, 4) << " over " << r.n_samples << " samples\n";
        }
        auto mc_path = opts.out_dir / "montecarlo.json";
        write_text(mc_path, render_document(mc, prov));
        result.files.push_back(mc_path);
    }
    result.summary = text.str();
    return result;
}

CommandResult run_fidelity(const CommandOptions &opts) {
    const RunConfig &cfg = opts.config;
    FidelityReport report = fidelity(cfg.couplings, cfg.probe_power, cfg.chain, readout_options(opts));
    Provenance prov = provenance(opts, "fidelity", {{"frequencies", "MHz"}, {"fluxes", "photons/s"}});
    CommandResult result;
    std::filesystem::path path;
    if (opts.format == OutputFormat::Json) {
        json doc = report_json(report, cfg.couplings);
        doc["couplings"] = couplings_json(cfg.couplings);
        doc["chain"] = chain_json(cfg);
        doc["refine_probe"] = opts.refine_probe;
        path = opts.out_dir / "fidelity.json";
        write_text(path, render_document(doc, prov));
    } else {
        std::string out = render_csv({{}, {}}, prov);
        out.pop_back();  // drop the empty header line
        out += "quantity,value\n";
        json flat = report_json(report, cfg.couplings);
        flat.update(couplings_json(cfg.couplings));
        flat.update(chain_json(cfg));
        for (auto &[k, v] : flat.items()) {
            out += k + ",";
            if (v.is_number_float()) {
                out += format_number(v.get<double>());
            } else if (v.is_string()) {
                out += v.get<std::string>();
            } else {
                out += v.dump();
            }
            out += "\n";
        }
        path = opts.out_dir / "fidelity.csv";
        write_text(path, out);
    }
    result.files.push_back(path);
    result.summary = "fidelity " + fmt(report.fidelity, 8) + " at threshold " + std::to_string(report.threshold) +
                     " (nbar_g " + fmt(report.nbar_g, 4) + ", nbar_e " + fmt(report.nbar_e, 4) + ")\n";
    return result;
}

CommandResult run_map(const CommandOptions &opts) {
    const RunConfig &cfg = opts.config;
    std::vector<double> kappas = cfg.kappa_axis.values();
    std::vector<double> powers = cfg.power_axis.values();
    SweepGrid grid = fidelity_map(kappas, powers, cfg.chain, cfg.couplings, readout_options(opts));

    Table table{{"kappa_mhz", "p_photons_per_ns", "fidelity"}, {}};
    for (size_t i = 0; i < kappas.size(); i++) {
        for (size_t j = 0; j < powers.size(); j++) {
            table.rows.push_back({angular_to_mhz(kappas[i]), powers[j] / kPhotonsPerNs, grid.fidelity[i][j]});
        }
    }
    Provenance prov = provenance(opts, "map", {{"kappa_mhz", "MHz"}, {"p_photons_per_ns", "photons/ns"}});
    CommandResult result;
    auto path = opts.out_dir / (std::string("map") + extension(opts.format));
    write_text(path, render_table(table, prov, opts.format));
    result.files.push_back(path);

    double best_kappa = grid.kappa_values[grid.argmax_kappa];
    double best_p = grid.p_values[grid.argmax_p];
    json summary = {
        {"argmax",
         {
             {"kappa_mhz", angular_to_mhz(best_kappa)},
             {"p_photons_per_ns", best_p / kPhotonsPerNs},
             {"p_photons_per_10ns", best_p * 10.0 * kNanosecond},
             {"fidelity", grid.best()},
             {"kappa_index", grid.argmax_kappa},
             {"p_index", grid.argmax_p},
         }},
        {"grid", {{"kappa_points", kappas.size()}, {"p_points", powers.size()}}},
        {"chain", chain_json(cfg)},
    };
    auto summary_path = opts.out_dir / "map_summary.json";
    write_text(summary_path, render_document(summary, prov));
    result.files.push_back(summary_path);
    result.summary = "best fidelity " + fmt(grid.best(), 8) + " at kappa " + fmt(angular_to_mhz(best_kappa)) + " MHz, p " +
                     fmt(best_p / kPhotonsPerNs) + " photons/ns\n";
    return result;
}

CommandResult run_oracle_check(const CommandOptions &opts) {
    const RunConfig &cfg = opts.config;
    const CouplingSet &c = cfg.couplings;
    std::vector<double> grid = linspace(c.omega_r() - cfg.oracle.span, c.omega_r() + cfg.oracle.span, cfg.oracle.points);
    const QubitState states[2] = {QubitState::G, QubitState::E};
    std::vector<double> err(2 * grid.size(), 0.0);
    std::vector<char> converged(2 * grid.size(), 0);
    parallel_for(err.size(), [&](size_t k) {
        double omega = grid[k / 2];
        QubitState state = states[k % 2];
        double p_s = saturation_power(omega, state, c);
        double power = cfg.oracle.drive_fraction * (std::isfinite(p_s) ? p_s : c.kappa());
        OdeTransmission ode = steady_transmission(state, {omega, power}, c, cfg.oracle.ode_tol);
        err[k] = std::abs(ode.t - t_linear(omega, state, c));
        converged[k] = ode.converged;
    });

    Table table{{"omega_mhz", "abs_err_t_g", "abs_err_t_e"}, {}};
    double max_err[2] = {0.0, 0.0};
    size_t unconverged = 0;
    for (size_t i = 0; i < grid.size(); i++) {
        table.rows.push_back({angular_to_mhz(grid[i] - c.omega_r()), err[2 * i], err[2 * i + 1]});
        for (int s = 0; s < 2; s++) {
            max_err[s] = std::max(max_err[s], err[2 * i + s]);
            unconverged += converged[2 * i + s] ? 0 : 1;
        }
    }
    bool pass = std::max(max_err[0], max_err[1]) <= cfg.oracle.tolerance;

    Provenance prov = provenance(opts, "oracle-check", {{"omega_mhz", "MHz offset from omega_r"}, {"abs_err", "|t_ode - t_linear|"}});
    CommandResult result;
    auto path = opts.out_dir / (std::string("oracle") + extension(opts.format));
    write_text(path, render_table(table, prov, opts.format));
    result.files.push_back(path);
    json summary = {
        {"max_abs_err_g", max_err[0]},
        {"max_abs_err_e", max_err[1]},
        {"tolerance", cfg.oracle.tolerance},
        {"drive_fraction", cfg.oracle.drive_fraction},
        {"points", grid.size()},
        {"unconverged", unconverged},
        {"pass", pass},
    };
    auto summary_path = opts.out_dir / "oracle_summary.json";
    write_text(summary_path, render_document(summary, prov));
    result.files.push_back(summary_path);
    result.summary = std::string(pass ? "oracle check passed" : "oracle check FAILED") + ": max |dt| g " +
                     fmt(max_err[0], 3) + ", e " + fmt(max_err[1], 3) + " (tolerance " + fmt(cfg.oracle.tolerance, 3) +
                     ", p = " + fmt(cfg.oracle.drive_fraction, 3) + " p_s)\n";
    result.exit_code = pass ? kExitOk : kExitNumerical;
    return result;
}

}  // namespace qnd
