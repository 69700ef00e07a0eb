// commands.hpp — table assembly and deterministic CSV/JSON emission
//
// Every table row depends only on its grid index, so rows may be computed by
// any number of worker threads into a preallocated buffer; serialization is
// single-threaded in grid order and therefore byte-identical regardless of
// the thread count.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace qfim::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

// Grid points including both endpoints; log spacing is uniform in log(x).
std::vector<double> make_grid(const GridSpec& g);

// (zeta, f_parallel, f_perp, f_eff, one_minus_f, gamma_over_gamma0) rows.
Table scan_boundary_table(const RunConfig& config, int threads);

// (gamma0_tau, w1, w2, w3, purity) rows.
Table evolve_table(const RunConfig& config, int threads);

// (gamma0_tau, value_closed, value_bloch, value_spectral, max_pairwise_diff);
// columns for methods that were not requested stay empty.
Table qfi_table(const RunConfig& config, int threads);

// Single JSON record with analytic and numeric-optimizer values and their
// relative difference; a shielded environment is reported as such instead of
// infinities.
nlohmann::ordered_json freq_opt_record(const RunConfig& config);

// One value with `precision` significant digits ("%.{p}g", C locale).
std::string format_value(double v, int precision);

void write_csv(std::ostream& out, const Table& table, int precision);

// {"metadata": {...}, "rows": [{column: value, ...}, ...]}.
nlohmann::ordered_json table_to_json(const Table& table, const RunConfig& config);

// Run config.command and stream the result in the configured format.
void run_to_stream(const RunConfig& config, int threads, std::ostream& out);

// Full dispatch: opens config.output.path (stdout when empty) and writes.
// Unwritable paths raise IoError.
void run_command(const RunConfig& config, int threads);

} // namespace qfim::cli
