// Copyright 2026 The weakfisher Authors
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

#include "weakfisher/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakfisher/config_space_meter.h"
#include "weakfisher/errors.h"
#include "weakfisher/estimation_lab.h"
#include "weakfisher/phase_space_meter.h"
#include "weakfisher/sampled_wavefunction.h"

namespace weakfisher {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

// Flag problems found after CLI11 parsing.
class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string scenario = "phase";
    std::string coupling = "symmetric";
    std::string regime = "general";
    std::string wavefunction;
    std::string output;
    double sigma = 1.0;
    double n = 4.0;
    double theta_i = kPi / 2.0;
    double theta_f = kPi / 2.0;
    double phi0 = 0.0;
    double g = 0.0;
    double g_min = 0.0;
    double g_max = kPi / 2.0;
    std::size_t points = 200;
    int n_max = 30;
    std::int64_t trials = 100000;
    std::int64_t repeats = 200;
    std::uint64_t seed = 42;
    std::optional<double> window_lo;
    std::optional<double> window_hi;
};

// Numeric flags echoed into the output metadata, in a fixed order per command.
using Echo = std::vector<std::pair<std::string, double>>;

json breakdown_json(const FisherBreakdown &b) {
    return json{
        {"p_d", b.p_d},
        {"q_d", b.q_d},
        {"q_r", b.q_r},
        {"pd_qd", b.pd_qd},
        {"pr_qr", b.pr_qr},
        {"f_p", b.f_p},
        {"f_tot", b.f_tot},
        {"q_j", b.q_j},
        {"diagnostics",
         {{"degenerate_success", b.diagnostics.degenerate_success},
          {"degenerate_failure", b.diagnostics.degenerate_failure},
          {"indeterminate_fp", b.diagnostics.indeterminate_fp}}},
    };
}

json inputs_json(const std::string &command, const Echo &echo) {
    json in = {{"command", command}};
    for (const auto &[key, value] : echo) {
        in[key] = value;
    }
    return in;
}

std::string metadata_line(const std::string &command, const Echo &echo) {
    std::string line = "# command=" + command;
    for (const auto &[key, value] : echo) {
        line += " " + key + "=" + format_number(value);
    }
    return line + "\n";
}

std::string csv_row(const std::vector<double> &values) {
    std::string row;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) {
            row += ',';
        }
        row += format_number(values[k]);
    }
    return row + "\n";
}

Coupling parse_coupling(const std::string &name) {
    return name == "asymmetric" ? Coupling::Asymmetric : Coupling::Symmetric;
}

Regime parse_regime(const std::string &name) {
    if (name == "weak") {
        return Regime::Weak;
    }
    if (name == "strong") {
        return Regime::Strong;
    }
    return Regime::General;
}

Echo angle_echo(const Flags &f) {
    return {{"theta_i", f.theta_i}, {"theta_f", f.theta_f}, {"phi0", f.phi0}};
}

Echo scenario_echo(const Flags &f) {
    Echo echo;
    if (f.scenario == "config-gauss") {
        echo.emplace_back("sigma", f.sigma);
    } else if (f.scenario == "phase") {
        echo.emplace_back("n", f.n);
    }
    const Echo angles = angle_echo(f);
    echo.insert(echo.end(), angles.begin(), angles.end());
    return echo;
}

json scenario_labels(const Flags &f) {
    json labels = {{"scenario", f.scenario}};
    if (f.scenario == "phase") {
        labels["coupling"] = f.coupling;
    } else if (f.scenario == "config-sampled") {
        labels["wavefunction"] = f.wavefunction;
        labels["regime"] = f.regime;
    }
    return labels;
}

// Breakdown evaluator for the selected scenario.
std::function<FisherBreakdown(double)> scenario_evaluator(const Flags &f) {
    const SelectionPair pair = SelectionPair::from_angles(f.theta_i, f.theta_f, f.phi0);
    if (f.scenario == "config-gauss") {
        const GaussianMeter meter(f.sigma);
        return [=](double g) { return gaussian_fisher_breakdown(meter, pair, g); };
    }
    if (f.scenario == "config-sampled") {
        if (f.wavefunction.empty()) {
            throw UsageError("--wavefunction is required for scenario config-sampled");
        }
        const SampledWavefunction wave = load_wavefunction_csv(f.wavefunction);
        const Regime regime = parse_regime(f.regime);
        return [=](double g) { return sampled_fisher_breakdown(wave, pair, g, regime); };
    }
    const CoherentMeter meter = CoherentMeter::from_photon_number(f.n, parse_coupling(f.coupling));
    if (meter.coupling() == Coupling::Asymmetric) {
        return [=](double g) { return phase_fisher_breakdown_numeric(meter, pair, g); };
    }
    return [=](double g) { return phase_fisher_breakdown(meter, pair, g); };
}

std::string run_breakdown(const Flags &f) {
    const FisherBreakdown b = scenario_evaluator(f)(f.g);
    Echo echo = scenario_echo(f);
    echo.emplace_back("g", f.g);
    json doc = {{"inputs", inputs_json("breakdown", echo)}, {"result", breakdown_json(b)}};
    doc["inputs"].update(scenario_labels(f));
    return doc.dump(2) + "\n";
}

std::string run_sweep(const Flags &f) {
    if (!(f.g_min <= f.g_max)) {
        throw UsageError("--g-min must not exceed --g-max");
    }
    const auto evaluate = scenario_evaluator(f);
    Echo echo = scenario_echo(f);
    echo.emplace_back("g_min", f.g_min);
    echo.emplace_back("g_max", f.g_max);
    echo.emplace_back("points", static_cast<double>(f.points));
    std::string text = metadata_line("sweep", echo) + "g,p_d,F_p,pdQd,prQr,F_tot,Q_j\n";
    for (std::size_t k = 0; k < f.points; ++k) {
        const double g = f.points == 1 ? f.g_min
                                       : f.g_min + (f.g_max - f.g_min) * static_cast<double>(k) /
                                                       static_cast<double>(f.points - 1);
        const FisherBreakdown b = evaluate(g);
        text += csv_row({g, b.p_d, b.f_p, b.pd_qd, b.pr_qr, b.f_tot, b.q_j});
    }
    return text;
}

std::string run_fig1(const Flags &f) {
    const CoherentMeter meter = CoherentMeter::from_photon_number(f.n);
    const SelectionPair pair = SelectionPair::from_angles(f.theta_i, f.theta_f, f.phi0);
    const std::vector<double> grid = quarter_period_grid(f.points);
    const std::vector<FisherBreakdown> rows = figure_sweep(meter, pair, grid);
    Echo echo = {{"n", f.n}, {"points", static_cast<double>(f.points)}};
    const Echo angles = angle_echo(f);
    echo.insert(echo.end(), angles.begin(), angles.end());
    std::string text = metadata_line("fig1", echo) + "g,F_p,pdQd,prQr,F_tot,Q_j\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const FisherBreakdown &b = rows[k];
        text += csv_row({grid[k], b.f_p, b.pd_qd, b.pr_qr, b.f_tot, b.q_j});
    }
    return text;
}

std::string run_fig2(const Flags &f) {
    std::vector<double> ns;
    for (int k = 1; k <= f.n_max; ++k) {
        ns.push_back(k);
    }
    const SelectionPair pair = SelectionPair::from_angles(f.theta_i, f.theta_f, f.phi0);
    const std::vector<FisherBreakdown> rows = photon_number_sweep(ns, pair, f.g);
    Echo echo = {{"n_max", static_cast<double>(f.n_max)}, {"g", f.g}};
    const Echo angles = angle_echo(f);
    echo.insert(echo.end(), angles.begin(), angles.end());
    std::string text = metadata_line("fig2", echo) + "n,pdQd,prQr,Q_j,classical_4n\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const FisherBreakdown &b = rows[k];
        text += csv_row({ns[k], b.pd_qd, b.pr_qr, b.q_j, 4.0 * ns[k]});
    }
    return text;
}

double relative_error(double closed, double numeric, double scale) {
    return std::abs(closed - numeric) / std::max(std::abs(closed), scale);
}

std::string run_qfi_check(const Flags &f) {
    if (f.scenario == "config-sampled") {
        throw UsageError("qfi-check supports scenarios config-gauss and phase");
    }
    const SelectionPair pair = SelectionPair::from_angles(f.theta_i, f.theta_f, f.phi0);
    FisherBreakdown numeric;
    std::optional<FisherBreakdown> closed;
    double closed_q_j = 0.0;
    if (f.scenario == "config-gauss") {
        const GaussianMeter meter(f.sigma);
        closed = gaussian_fisher_breakdown(meter, pair, f.g);
        closed_q_j = closed->q_j;
        numeric = gaussian_fisher_breakdown_numeric(meter, pair, f.g);
    } else {
        const CoherentMeter meter = CoherentMeter::from_photon_number(f.n, parse_coupling(f.coupling));
        if (meter.coupling() == Coupling::Symmetric) {
            closed = phase_fisher_breakdown(meter, pair, f.g);
        }
        closed_q_j = joint_qfi(meter, pair.pre());
        numeric = phase_fisher_breakdown_numeric(meter, pair, f.g);
    }

    // Errors are relative to max(|closed|, 1e-8 q_j) so vanishing terms compare on the scale of q_j.
    const double scale = std::max(1e-8 * closed_q_j, 1e-300);
    json quantities = json::object();
    double worst = 0.0;
    const auto add = [&](const char *name, double c, double v) {
        const double e = relative_error(c, v, scale);
        worst = std::max(worst, e);
        quantities[name] = {{"closed", c}, {"numeric", v}, {"rel_error", e}};
    };
    add("q_j", closed_q_j, numeric.q_j);
    if (closed) {
        add("p_d", closed->p_d, numeric.p_d);
        add("pd_qd", closed->pd_qd, numeric.pd_qd);
        add("pr_qr", closed->pr_qr, numeric.pr_qr);
        add("f_p", closed->f_p, numeric.f_p);
        add("f_tot", closed->f_tot, numeric.f_tot);
    }
    Echo echo = scenario_echo(f);
    echo.emplace_back("g", f.g);
    json doc = {{"inputs", inputs_json("qfi-check", echo)},
                {"quantities", quantities},
                {"max_rel_error", worst},
                {"numeric", breakdown_json(numeric)}};
    doc["inputs"].update(scenario_labels(f));
    return doc.dump(2) + "\n";
}

std::string run_mc(const Flags &f) {
    if (f.window_lo.has_value() != f.window_hi.has_value()) {
        throw UsageError("--window-lo and --window-hi must be given together");
    }
    if (f.scenario == "config-sampled") {
        throw UsageError("mc supports scenarios config-gauss and phase");
    }
    if (f.scenario == "phase" && f.coupling != "symmetric") {
        throw UsageError("mc supports the symmetric coupling only");
    }
    const SelectionPair pair = SelectionPair::from_angles(f.theta_i, f.theta_f, f.phi0);
    PostSelectionModel model = f.scenario == "config-gauss"
                                   ? PostSelectionModel(GaussianMeter(f.sigma), pair)
                                   : PostSelectionModel(CoherentMeter::from_photon_number(f.n), pair);
    std::optional<EstimationWindow> window;
    if (f.window_lo) {
        window = EstimationWindow{*f.window_lo, *f.window_hi};
    }
    const TrialConfig config{std::move(model), f.g, f.trials, f.seed};
    const EstimateSummary s = crb_experiment(config, f.repeats, window);

    Echo echo = scenario_echo(f);
    echo.emplace_back("g", f.g);
    echo.emplace_back("trials", static_cast<double>(f.trials));
    echo.emplace_back("repeats", static_cast<double>(f.repeats));
    if (window) {
        echo.emplace_back("window_lo", window->lo);
        echo.emplace_back("window_hi", window->hi);
    }
    json inputs = inputs_json("mc", echo);
    inputs.update(scenario_labels(f));
    inputs["seed"] = f.seed;
    json doc = {{"inputs", inputs},
                {"summary",
                 {{"g_true", s.g_true},
                  {"g_hat_mean", s.g_hat_mean},
                  {"g_hat_variance", s.g_hat_variance},
                  {"crb", s.crb},
                  {"efficiency", s.efficiency()},
                  {"repeats", s.repeats},
                  {"trials", s.trials},
                  {"window_lo", s.window.lo},
                  {"window_hi", s.window.hi}}}};
    return doc.dump(2) + "\n";
}

void add_output(CLI::App *cmd, Flags &f) {
    cmd->add_option("-o,--output", f.output, "Output file (default stdout)");
}

void add_angles(CLI::App *cmd, Flags &f) {
    const CLI::Range polar(0.0, kPi);
    cmd->add_option("--theta-i", f.theta_i, "Pre-selection polar angle (radians)")->check(polar);
    cmd->add_option("--theta-f", f.theta_f, "Post-selection polar angle (radians)")->check(polar);
    cmd->add_option("--phi0", f.phi0, "Relative azimuth phi_i - phi_f (radians)")->check(CLI::Number);
}

void add_scenario(CLI::App *cmd, Flags &f, std::vector<std::string> scenarios) {
    cmd->add_option("--scenario", f.scenario, "Meter model")->check(CLI::IsMember(std::move(scenarios)));
    cmd->add_option("--sigma", f.sigma, "Gaussian pointer width")->check(CLI::PositiveNumber);
    cmd->add_option("--n", f.n, "Mean photon number")->check(CLI::NonNegativeNumber);
    cmd->add_option("--coupling", f.coupling, "Phase-space coupling")
        ->check(CLI::IsMember({"symmetric", "asymmetric"}));
    add_angles(cmd, f);
}

void add_sampled(CLI::App *cmd, Flags &f) {
    cmd->add_option("--wavefunction", f.wavefunction, "CSV file with columns p,re,im");
    cmd->add_option("--regime", f.regime, "Sampled-meter regime")->check(CLI::IsMember({"general", "weak", "strong"}));
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Flags f;
    CLI::App app{"Fisher-information bookkeeping for post-selected weak measurements", "weakfisher"};
    app.require_subcommand(1, 1);

    CLI::App *breakdown = app.add_subcommand("breakdown", "Single Fisher-information breakdown as JSON");
    add_scenario(breakdown, f, {"config-gauss", "phase", "config-sampled"});
    add_sampled(breakdown, f);
    breakdown->add_option("--g", f.g, "Coupling strength")->required()->check(CLI::Number);
    add_output(breakdown, f);

    CLI::App *sweep = app.add_subcommand("sweep", "Breakdowns over a coupling grid as CSV");
    add_scenario(sweep, f, {"config-gauss", "phase", "config-sampled"});
    add_sampled(sweep, f);
    sweep->add_option("--g-min", f.g_min, "First coupling")->check(CLI::Number);
    sweep->add_option("--g-max", f.g_max, "Last coupling")->check(CLI::Number);
    sweep->add_option("--points", f.points, "Grid points")->check(CLI::Range(1, 10000000));
    add_output(sweep, f);

    CLI::App *fig1 = app.add_subcommand("fig1", "Contributions to the total information versus g");
    fig1->add_option("--n", f.n, "Mean photon number")->check(CLI::NonNegativeNumber);
    fig1->add_option("--points", f.points, "Grid points on [0, pi/2]")->check(CLI::Range(1, 10000000));
    add_angles(fig1, f);
    add_output(fig1, f);

    CLI::App *fig2 = app.add_subcommand("fig2", "Branch QFIs versus photon number");
    fig2->add_option("--n-max", f.n_max, "Largest photon number")->check(CLI::Range(1, 100000));
    fig2->add_option("--g", f.g, "Coupling strength")->check(CLI::Number);
    add_angles(fig2, f);
    add_output(fig2, f);

    CLI::App *qfi_check = app.add_subcommand("qfi-check", "Closed forms against numerical QFI/CFI");
    add_scenario(qfi_check, f, {"config-gauss", "phase"});
    qfi_check->add_option("--g", f.g, "Coupling strength")->required()->check(CLI::Number);
    add_output(qfi_check, f);

    CLI::App *mc = app.add_subcommand("mc", "Monte Carlo maximum-likelihood experiment");
    add_scenario(mc, f, {"config-gauss", "phase"});
    mc->add_option("--g", f.g, "True coupling")->required()->check(CLI::Number);
    mc->add_option("--trials", f.trials, "Post-selection rounds per repeat")->check(CLI::Range(1LL, 1000000000000LL));
    mc->add_option("--repeats", f.repeats, "Independent repeats")->check(CLI::Range(1LL, 100000000LL));
    mc->add_option("--seed", f.seed, "Generator seed");
    mc->add_option("--window-lo", f.window_lo, "Estimation window start")->check(CLI::Number);
    mc->add_option("--window-hi", f.window_hi, "Estimation window end")->check(CLI::Number);
    add_output(mc, f);

    // Figures default to the orthogonal configuration at phi0 = pi, g = pi/2.
    fig1->preparse_callback([&f](std::size_t) { f.phi0 = kPi; });
    fig2->preparse_callback([&f](std::size_t) {
        f.phi0 = kPi;
        f.g = kPi / 2.0;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::string text;
    try {
        if (breakdown->parsed()) {
            text = run_breakdown(f);
        } else if (sweep->parsed()) {
            text = run_sweep(f);
        } else if (fig1->parsed()) {
            text = run_fig1(f);
        } else if (fig2->parsed()) {
            text = run_fig2(f);
        } else if (qfi_check->parsed()) {
            text = run_qfi_check(f);
        } else {
            text = run_mc(f);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }

    if (f.output.empty()) {
        out << text;
        out.flush();
        return kExitOk;
    }
    std::ofstream file(f.output, std::ios::binary);
    if (!file) {
        err << "usage error: cannot open " << f.output << " for writing\n";
        return kExitUsage;
    }
    file << text;
    if (!file.flush()) {
        err << "usage error: failed writing " << f.output << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace weakfisher
