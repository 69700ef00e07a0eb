#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qfim::cli {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

double get_number(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail(std::string(key) + " must be a number");
    return j[key].get<double>();
}

int get_int(const nlohmann::json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) fail(std::string(key) + " must be an integer");
    return j[key].get<int>();
}

std::string get_string(const nlohmann::json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) fail(std::string(key) + " must be a string");
    return j[key].get<std::string>();
}

} // namespace

std::string to_string(Command c) {
    switch (c) {
    case Command::scan_boundary: return "scan-boundary";
    case Command::evolve: return "evolve";
    case Command::qfi: return "qfi";
    case Command::freq_opt: return "freq-opt";
    }
    return "?";
}

std::string to_string(Spacing s) { return s == Spacing::linear ? "linear" : "log"; }
std::string to_string(FileFormat f) { return f == FileFormat::csv ? "csv" : "json"; }
std::string to_string(FreqOptMode m) { return m == FreqOptMode::single ? "single" : "ramsey"; }

std::string to_string(qfi::ParameterTag p) {
    switch (p) {
    case qfi::ParameterTag::theta: return "theta";
    case qfi::ParameterTag::phi: return "phi";
    case qfi::ParameterTag::omega0: return "omega0";
    }
    return "?";
}

std::string to_string(qfi::Method m) {
    switch (m) {
    case qfi::Method::closed_form: return "closed_form";
    case qfi::Method::bloch_form: return "bloch_form";
    case qfi::Method::spectral_form: return "spectral_form";
    }
    return "?";
}

Command command_from_string(const std::string& s) {
    if (s == "scan-boundary") return Command::scan_boundary;
    if (s == "evolve") return Command::evolve;
    if (s == "qfi") return Command::qfi;
    if (s == "freq-opt") return Command::freq_opt;
    fail("unknown command '" + s + "'");
}

AtomSpec RunConfig::make_atom() const {
    return AtomSpec(1.0 / gamma0_over_omega0, 1.0, theta, phi);
}

Polarization RunConfig::make_polarization() const {
    return Polarization(alpha[0], alpha[1], alpha[2]);
}

Environment RunConfig::make_environment() const {
    if (zeta) {
        return Boundary{*zeta, make_polarization()};
    }
    return Unbounded{};
}

RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) fail("top level must be an object");
    RunConfig c;

    if (j.contains("command")) c.command = command_from_string(get_string(j, "command", ""));

    if (j.contains("atom")) {
        const auto& a = j["atom"];
        if (!a.is_object()) fail("atom must be an object");
        c.gamma0_over_omega0 = get_number(a, "gamma0_over_omega0", c.gamma0_over_omega0);
        c.theta = get_number(a, "theta", c.theta);
        c.phi = get_number(a, "phi", c.phi);
    }

    if (j.contains("environment")) {
        const auto& e = j["environment"];
        if (!e.is_object()) fail("environment must be an object");
        const std::string type = get_string(e, "type", "unbounded");
        if (type == "unbounded") {
            c.zeta.reset();
        } else if (type == "boundary") {
            if (!e.contains("zeta")) fail("environment.zeta required for type 'boundary'");
            c.zeta = get_number(e, "zeta", 0.0);
        } else {
            fail("environment.type must be 'unbounded' or 'boundary'");
        }
    }

    if (j.contains("polarization")) {
        const auto& p = j["polarization"];
        if (!p.is_object() || !p.contains("alpha") || !p["alpha"].is_array() ||
            p["alpha"].size() != 3) {
            fail("polarization.alpha must be an array of 3 numbers");
        }
        for (int i = 0; i < 3; ++i) {
            if (!p["alpha"][i].is_number()) fail("polarization.alpha entries must be numbers");
            c.alpha[static_cast<std::size_t>(i)] = p["alpha"][i].get<double>();
        }
    }

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) fail("grid must be an object");
        GridSpec gs;
        gs.min = get_number(g, "min", 0.0);
        gs.max = get_number(g, "max", 0.0);
        gs.points = get_int(g, "points", 0);
        const std::string spacing = get_string(g, "spacing", "linear");
        if (spacing == "linear") {
            gs.spacing = Spacing::linear;
        } else if (spacing == "log") {
            gs.spacing = Spacing::log;
        } else {
            fail("grid.spacing must be 'linear' or 'log'");
        }
        c.grid = gs;
    }

    if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) fail("output must be an object");
        c.output.path = get_string(o, "path", "");
        const std::string format = get_string(o, "format", "csv");
        if (format == "csv") {
            c.output.format = FileFormat::csv;
        } else if (format == "json") {
            c.output.format = FileFormat::json;
        } else {
            fail("output.format must be 'csv' or 'json'");
        }
        c.output.precision = get_int(o, "precision", 12);
    }

    if (j.contains("qfi")) {
        const auto& q = j["qfi"];
        if (!q.is_object()) fail("qfi must be an object");
        const std::string param = get_string(q, "parameter", "theta");
        if (param == "theta") {
            c.qfi_parameter = qfi::ParameterTag::theta;
        } else if (param == "phi") {
            c.qfi_parameter = qfi::ParameterTag::phi;
        } else if (param == "omega0") {
            c.qfi_parameter = qfi::ParameterTag::omega0;
        } else {
            fail("qfi.parameter must be 'theta', 'phi' or 'omega0'");
        }
        if (q.contains("methods")) {
            if (!q["methods"].is_array() || q["methods"].empty()) {
                fail("qfi.methods must be a non-empty array");
            }
            c.qfi_methods.clear();
            for (const auto& m : q["methods"]) {
                const std::string name = m.is_string() ? m.get<std::string>() : "";
                if (name == "closed_form") {
                    c.qfi_methods.push_back(qfi::Method::closed_form);
                } else if (name == "bloch_form") {
                    c.qfi_methods.push_back(qfi::Method::bloch_form);
                } else if (name == "spectral_form") {
                    c.qfi_methods.push_back(qfi::Method::spectral_form);
                } else {
                    fail("unknown qfi method '" + name + "'");
                }
            }
        }
    }

    if (j.contains("freq_opt")) {
        const auto& f = j["freq_opt"];
        if (!f.is_object()) fail("freq_opt must be an object");
        const std::string mode = get_string(f, "mode", "single");
        if (mode == "single") {
            c.freq_opt_mode = FreqOptMode::single;
        } else if (mode == "ramsey") {
            c.freq_opt_mode = FreqOptMode::ramsey;
        } else {
            fail("freq_opt.mode must be 'single' or 'ramsey'");
        }
        if (f.contains("total_time")) c.total_time = get_number(f, "total_time", 0.0);
    }

    // SI block overrides the dimensionless fields it can derive.
    if (j.contains("si")) {
        const auto& si = j["si"];
        if (!si.is_object()) fail("si must be an object");
        const double omega0 = get_number(si, "omega0_rad_per_s", 0.0);
        if (!(omega0 > 0.0)) fail("si.omega0_rad_per_s must be positive");
        if (si.contains("gamma0_rad_per_s")) {
            const double gamma0 = get_number(si, "gamma0_rad_per_s", 0.0);
            if (!(gamma0 > 0.0)) fail("si.gamma0_rad_per_s must be positive");
            c.gamma0_over_omega0 = gamma0 / omega0;
        }
        if (si.contains("z0_m")) {
            const double z0 = get_number(si, "z0_m", 0.0);
            if (!(z0 > 0.0)) fail("si.z0_m must be positive");
            c.zeta = omega0 * z0 / kSpeedOfLight;
        }
    }

    // Field-level validation.
    if (!(c.gamma0_over_omega0 > 0.0 && c.gamma0_over_omega0 < 1.0)) {
        fail("atom.gamma0_over_omega0 must lie in (0, 1)");
    }
    if (!(c.theta >= 0.0 && c.theta <= std::numbers::pi)) fail("atom.theta must lie in [0, pi]");
    if (!(c.phi >= 0.0 && c.phi < 2.0 * std::numbers::pi)) fail("atom.phi must lie in [0, 2*pi)");
    if (c.zeta && !(*c.zeta > 0.0)) fail("environment.zeta must be positive");
    if (c.alpha[0] < 0.0 || c.alpha[1] < 0.0 || c.alpha[2] < 0.0 ||
        c.alpha[0] + c.alpha[1] + c.alpha[2] <= 0.0) {
        fail("polarization.alpha must be nonnegative with a positive sum");
    }
    if (c.grid) {
        if (c.grid->points < 2) fail("grid.points must be >= 2");
        if (!(c.grid->min < c.grid->max)) fail("grid.min must be < grid.max");
        if (c.grid->spacing == Spacing::log && !(c.grid->min > 0.0)) {
            fail("grid.min must be positive for log spacing");
        }
    }
    if (c.output.precision < 6 || c.output.precision > 17) {
        fail("output.precision must lie in [6, 17]");
    }
    if (c.total_time && !(*c.total_time > 0.0)) fail("freq_opt.total_time must be positive");

    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

void validate_for_command(const RunConfig& c) {
    switch (c.command) {
    case Command::scan_boundary:
        if (!c.grid) fail("scan-boundary requires a grid over zeta");
        if (c.grid->min <= 0.0) fail("scan-boundary grid must have min > 0 (zeta grid)");
        break;
    case Command::evolve:
    case Command::qfi:
        if (!c.grid) fail(to_string(c.command) + " requires a grid over gamma0*tau");
        if (c.grid->min < 0.0) fail("time grid must have min >= 0");
        break;
    case Command::freq_opt:
        if (c.freq_opt_mode == FreqOptMode::ramsey && !c.total_time) {
            fail("freq-opt in ramsey mode requires freq_opt.total_time");
        }
        break;
    }
}

nlohmann::ordered_json dump_config(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["command"] = to_string(c.command);
    j["atom"] = {{"gamma0_over_omega0", c.gamma0_over_omega0},
                 {"theta", c.theta},
                 {"phi", c.phi}};
    if (c.zeta) {
        j["environment"] = {{"type", "boundary"}, {"zeta", *c.zeta}};
    } else {
        j["environment"] = {{"type", "unbounded"}};
    }
    const double alpha_sum = c.alpha[0] + c.alpha[1] + c.alpha[2];
    j["polarization"] = {{"alpha", std::array<double, 3>{c.alpha[0] / alpha_sum,
                                                         c.alpha[1] / alpha_sum,
                                                         c.alpha[2] / alpha_sum}}};
    if (c.grid) {
        j["grid"] = {{"min", c.grid->min},
                     {"max", c.grid->max},
                     {"points", c.grid->points},
                     {"spacing", to_string(c.grid->spacing)}};
    }
    j["output"] = {{"path", c.output.path},
                   {"format", to_string(c.output.format)},
                   {"precision", c.output.precision}};
    nlohmann::ordered_json methods = nlohmann::ordered_json::array();
    for (auto m : c.qfi_methods) methods.push_back(to_string(m));
    j["qfi"] = {{"parameter", to_string(c.qfi_parameter)}, {"methods", methods}};
    nlohmann::ordered_json fo;
    fo["mode"] = to_string(c.freq_opt_mode);
    if (c.total_time) fo["total_time"] = *c.total_time;
    j["freq_opt"] = fo;
    return j;
}

} // namespace qfim::cli
