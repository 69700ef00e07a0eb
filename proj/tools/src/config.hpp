// config.hpp — run configuration: JSON schema, validation, and echo
//
// All physical inputs are dimensionless: times are gamma0*tau, the boundary
// distance is zeta = omega0*z0/c, and the coupling enters as gamma0/omega0.
// An optional "si" block converts laboratory values once at parse time.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfim/atom.hpp"
#include "qfim/qfi.hpp"

namespace qfim::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::string path)
        : std::runtime_error(what + ": " + path), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

enum class Command { scan_boundary, evolve, qfi, freq_opt };
enum class Spacing { linear, log };
enum class FileFormat { csv, json };
enum class FreqOptMode { single, ramsey };

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    Spacing spacing = Spacing::linear;
};

struct OutputSpec {
    std::string path;  // empty: stdout
    FileFormat format = FileFormat::csv;
    int precision = 12;  // significant digits, [6, 17]
};

struct RunConfig {
    Command command = Command::scan_boundary;

    double gamma0_over_omega0 = 1e-6;
    double theta = 1.5707963267948966;
    double phi = 0.0;

    std::optional<double> zeta;  // nullopt: unbounded vacuum
    std::array<double, 3> alpha{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    std::optional<GridSpec> grid;
    OutputSpec output;

    qfi::ParameterTag qfi_parameter = qfi::ParameterTag::theta;
    std::vector<qfi::Method> qfi_methods{qfi::Method::closed_form, qfi::Method::bloch_form,
                                         qfi::Method::spectral_form};

    FreqOptMode freq_opt_mode = FreqOptMode::single;
    std::optional<double> total_time;  // gamma0*T, required for ramsey mode

    // Core objects in gamma0 = 1 units.
    AtomSpec make_atom() const;
    Polarization make_polarization() const;
    Environment make_environment() const;
};

// Enum <-> string helpers used by both the parser and the writers.
std::string to_string(Command c);
std::string to_string(Spacing s);
std::string to_string(FileFormat f);
std::string to_string(FreqOptMode m);
std::string to_string(qfi::ParameterTag p);
std::string to_string(qfi::Method m);
Command command_from_string(const std::string& s);

// Parse and validate; throws ConfigError with a field-level message.
RunConfig parse_config(const nlohmann::json& j);

// Read + parse a config file; unreadable file -> ConfigError.
RunConfig load_config(const std::string& path);

// Echo of the resolved (dimensionless, normalized) configuration;
// parse_config(dump_config(c)) reproduces c.
nlohmann::ordered_json dump_config(const RunConfig& c);

// Checks the per-command requirements (grid present, ramsey total_time, ...).
void validate_for_command(const RunConfig& c);

} // namespace qfim::cli
