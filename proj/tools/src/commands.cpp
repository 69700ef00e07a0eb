#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "qfim/boundary.hpp"
#include "qfim/dynamics.hpp"
#include "qfim/metrology.hpp"
#include "qfim/qfi.hpp"
#include "qfim/version.hpp"

namespace qfim::cli {

namespace {

// gamma below this (in gamma0 units) counts as fully shielded.
constexpr double kShieldedThreshold = 1e-13;

// Rows are independent; partition the index range into contiguous blocks.
template <typename Fn>
void parallel_for_index(std::size_t n, int threads, Fn&& fn) {
    const int workers = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::size_t block = (n + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * block;
        const std::size_t end = std::min(n, begin + block);
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool method_requested(const RunConfig& config, qfi::Method m) {
    return std::find(config.qfi_methods.begin(), config.qfi_methods.end(), m) !=
           config.qfi_methods.end();
}

const GridSpec& require_grid(const RunConfig& config) {
    if (!config.grid) {
        throw ConfigError("config: " + to_string(config.command) + " requires a grid");
    }
    return *config.grid;
}

} // namespace

std::vector<double> make_grid(const GridSpec& g) {
    std::vector<double> xs(static_cast<std::size_t>(g.points));
    const int last = g.points - 1;
    if (g.spacing == Spacing::linear) {
        const double step = (g.max - g.min) / last;
        for (int i = 0; i <= last; ++i) xs[static_cast<std::size_t>(i)] = g.min + step * i;
    } else {
        const double log_min = std::log(g.min);
        const double step = (std::log(g.max) - log_min) / last;
        for (int i = 0; i <= last; ++i) {
            xs[static_cast<std::size_t>(i)] = std::exp(log_min + step * i);
        }
    }
    xs.front() = g.min;
    xs.back() = g.max;
    return xs;
}

Table scan_boundary_table(const RunConfig& config, int threads) {
    const Polarization alpha = config.make_polarization();
    const std::vector<double> zetas = make_grid(require_grid(config));

    Table table;
    table.columns = {"zeta", "f_parallel", "f_perp", "f_eff", "one_minus_f", "gamma_over_gamma0"};
    table.rows.assign(zetas.size(), {});
    parallel_for_index(zetas.size(), threads, [&](std::size_t i) {
        const double zeta = zetas[i];
        const auto r = boundary::evaluate_response(2.0 * zeta);
        const double fe = (alpha.alpha_x() + alpha.alpha_y()) * r.f_parallel +
                          alpha.alpha_z() * r.f_perp;
        table.rows[i] = {zeta, r.f_parallel, r.f_perp, fe, 1.0 - fe, 1.0 - fe};
    });
    return table;
}

Table evolve_table(const RunConfig& config, int threads) {
    const AtomSpec atom = config.make_atom();
    const Environment env = config.make_environment();
    const auto coeffs = dynamics::kossakowski_coefficients(atom, env);
    const BlochVector initial = bloch_from_angles(atom.theta(), atom.phi());
    const std::vector<double> taus = make_grid(require_grid(config));

    Table table;
    table.columns = {"gamma0_tau", "w1", "w2", "w3", "purity"};
    table.rows.assign(taus.size(), {});
    parallel_for_index(taus.size(), threads, [&](std::size_t i) {
        const BlochVector w =
            dynamics::propagate_bloch(initial, coeffs, taus[i] / atom.gamma0());
        table.rows[i] = {taus[i], w.w1, w.w2, w.w3, norm(w)};
    });
    return table;
}

Table qfi_table(const RunConfig& config, int threads) {
    const AtomSpec atom = config.make_atom();
    const Environment env = config.make_environment();
    const std::vector<double> taus = make_grid(require_grid(config));
    const auto param = config.qfi_parameter;

    // For omega0 the closed column carries the first-order expression;
    // max_pairwise_diff then audits it against the exact engines.
    const std::array<std::pair<qfi::Method, bool>, 3> methods{
        {{qfi::Method::closed_form, method_requested(config, qfi::Method::closed_form)},
         {qfi::Method::bloch_form, method_requested(config, qfi::Method::bloch_form)},
         {qfi::Method::spectral_form, method_requested(config, qfi::Method::spectral_form)}}};

    Table table;
    table.columns = {"gamma0_tau", "value_closed", "value_bloch", "value_spectral",
                     "max_pairwise_diff"};
    table.rows.assign(taus.size(), {});
    parallel_for_index(taus.size(), threads, [&](std::size_t i) {
        std::array<std::optional<double>, 3> vals;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            if (methods[m].second) {
                vals[m] = qfi::qfi_value(param, methods[m].first, atom, env,
                                         taus[i] / atom.gamma0());
            }
        }
        double diff = 0.0;
        for (std::size_t a = 0; a < vals.size(); ++a) {
            for (std::size_t b = a + 1; b < vals.size(); ++b) {
                if (vals[a] && vals[b]) diff = std::max(diff, std::abs(*vals[a] - *vals[b]));
            }
        }
        table.rows[i] = {taus[i], vals[0], vals[1], vals[2], diff};
    });
    return table;
}

nlohmann::ordered_json freq_opt_record(const RunConfig& config) {
    const AtomSpec atom = config.make_atom();
    const Environment env = config.make_environment();
    const double gamma = dynamics::effective_decay_rate(atom, env);  // gamma0 = 1 units

    nlohmann::ordered_json rec;
    rec["mode"] = to_string(config.freq_opt_mode);
    rec["gamma_over_gamma0"] = gamma;
    const bool shielded = gamma < kShieldedThreshold;
    rec["shielded"] = shielded;

    if (config.freq_opt_mode == FreqOptMode::single) {
        if (shielded) {
            rec["note"] = "decay rate is zero: QFI grows as tau^2, no finite optimum";
            return rec;
        }
        const auto analytic = metrology::optimal_single_shot(gamma);
        const auto numeric = metrology::maximize_qfi_numeric(
            [&](double tau) { return qfi::qfi_frequency_exact(atom, env, tau); },
            1e-3 / gamma, 20.0 / gamma, 1e-8);
        rec["analytic"] = {{"tau_star_gamma0", analytic.tau_star},
                           {"f_max_gamma0_sq", analytic.f_max}};
        rec["numeric"] = {{"tau_star_gamma0", numeric.tau_star},
                          {"f_max_gamma0_sq", numeric.f_max},
                          {"at_bracket_edge", numeric.at_bracket_edge}};
        rec["relative_difference"] = {
            {"tau_star", std::abs(numeric.tau_star - analytic.tau_star) / analytic.tau_star},
            {"f_max", std::abs(numeric.f_max - analytic.f_max) / analytic.f_max}};
        return rec;
    }

    const double total_time = *config.total_time;
    rec["total_time_gamma0"] = total_time;
    if (shielded) {
        // Without decay the uncertainty 1/sqrt(T tau) is minimized by a
        // single uninterrupted probe.
        rec["tau_star_gamma0"] = total_time;
        rec["n_star"] = 1.0;
        rec["delta_omega_min_over_gamma0"] = 1.0 / total_time;
        return rec;
    }
    const auto plan = metrology::optimal_ramsey(total_time, gamma);
    const auto numeric = metrology::maximize_qfi_numeric(
        [&](double tau) { return tau * std::exp(-gamma * tau); }, 1e-3 / gamma,
        std::min(total_time, 20.0 / gamma), 1e-8);
    rec["analytic"] = {{"tau_star_gamma0", plan.tau_star},
                       {"n_star", plan.n_star},
                       {"delta_omega_min_over_gamma0", plan.delta_omega_min},
                       {"validity_warning", plan.validity_warning}};
    rec["numeric"] = {{"tau_star_gamma0", numeric.tau_star},
                      {"delta_omega_min_over_gamma0",
                       metrology::ramsey_uncertainty(total_time, numeric.tau_star, gamma)}};
    rec["relative_difference"] = {
        {"tau_star", std::abs(numeric.tau_star - plan.tau_star) / plan.tau_star}};
    return rec;
}

std::string format_value(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void write_csv(std::ostream& out, const Table& table, int precision) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (row[c]) out << format_value(*row[c], precision);
        }
        out << '\n';
    }
}

namespace {

nlohmann::ordered_json metadata(const RunConfig& config) {
    return {{"artifact", "qfimirror"}, {"version", kVersion}, {"config", dump_config(config)}};
}

} // namespace

nlohmann::ordered_json table_to_json(const Table& table, const RunConfig& config) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata(config);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c]) {
                // Round through the CSV formatter so both formats agree.
                rec[table.columns[c]] =
                    std::stod(format_value(*row[c], config.output.precision));
            } else {
                rec[table.columns[c]] = nullptr;
            }
        }
        rows.push_back(std::move(rec));
    }
    j["rows"] = std::move(rows);
    return j;
}

void run_to_stream(const RunConfig& config, int threads, std::ostream& out) {
    validate_for_command(config);

    if (config.command == Command::freq_opt) {
        nlohmann::ordered_json j;
        j["metadata"] = metadata(config);
        j["result"] = freq_opt_record(config);
        out << j.dump(2) << '\n';
        return;
    }

    Table table;
    switch (config.command) {
    case Command::scan_boundary: table = scan_boundary_table(config, threads); break;
    case Command::evolve: table = evolve_table(config, threads); break;
    case Command::qfi: table = qfi_table(config, threads); break;
    case Command::freq_opt: break;  // handled above
    }

    if (config.output.format == FileFormat::csv) {
        write_csv(out, table, config.output.precision);
    } else {
        out << table_to_json(table, config).dump(2) << '\n';
    }
}

void run_command(const RunConfig& config, int threads) {
    const Polarization alpha = config.make_polarization();
    if (alpha.normalization_warning()) {
        std::cerr << "warning: polarization weights sum to " << alpha.raw_sum()
                  << "; normalized to 1\n";
    }
    if (config.make_atom().weak_coupling_warning()) {
        std::cerr << "warning: gamma0/omega0 = " << config.gamma0_over_omega0
                  << " strains the weak-coupling master equation\n";
    }

    if (config.output.path.empty()) {
        run_to_stream(config, threads, std::cout);
        if (!std::cout) throw IoError("failed writing", "<stdout>");
        return;
    }
    std::ofstream out(config.output.path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file", config.output.path);
    }
    run_to_stream(config, threads, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing output file", config.output.path);
    }
}

} // namespace qfim::cli
