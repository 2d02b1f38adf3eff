#include "vacbrown/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "plotdata.hpp"
#include "table_io.hpp"
#include "validate.hpp"
#include "vacbrown/asymptotics.hpp"
#include "vacbrown/dispersion.hpp"
#include "vacbrown/sweep.hpp"

namespace vacbrown::cli {

using json = nlohmann::ordered_json;

EnvLookup process_environment() {
    return [](std::string_view name) -> std::optional<std::string> {
        const char* v = std::getenv(std::string(name).c_str());
        if (!v) return std::nullopt;
        return std::string(v);
    };
}

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Values shared by several commands; each is resolved from the flag, then
// VB_<NAME>, then the --config file, then the default.
struct Settings {
    double tol = 1e-8;
    std::string method = "auto";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string regularization = "exact";
};

struct Flags {
    std::optional<double> tol;
    std::optional<std::string> method;
    std::optional<unsigned> threads;
    std::optional<std::string> regularization;
    std::string config;
};

double parse_positive(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
        throw UsageError(key + " must be a positive number, got '" + text + "'");
    }
    return v;
}

unsigned parse_threads(const std::string& key, const std::string& text) {
    const double v = parse_positive(key, text);
    if (v != std::floor(v) || v > 4096) throw UsageError(key + " must be a positive integer, got '" + text + "'");
    return static_cast<unsigned>(v);
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        if (key != "tol" && key != "method" && key != "threads" && key != "regularization") {
            throw UsageError(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings resolve(const Flags& flags, const EnvLookup& env) {
    std::map<std::string, std::string> config;
    if (!flags.config.empty()) config = read_config(flags.config);
    auto layered = [&](const char* key, const char* var) -> std::optional<std::pair<std::string, std::string>> {
        if (auto v = env(var)) return std::pair{std::string(var), *v};
        if (auto it = config.find(key); it != config.end()) return std::pair{"config " + it->first, it->second};
        return std::nullopt;
    };
    Settings s;
    if (flags.tol) {
        s.tol = *flags.tol;
    } else if (auto v = layered("tol", "VB_TOL")) {
        s.tol = parse_positive(v->first, v->second);
    }
    if (flags.method) {
        s.method = *flags.method;
    } else if (auto v = layered("method", "VB_METHOD")) {
        s.method = v->second;
    }
    if (flags.threads) {
        s.threads = *flags.threads;
    } else if (auto v = layered("threads", "VB_THREADS")) {
        s.threads = parse_threads(v->first, v->second);
    }
    if (flags.regularization) {
        s.regularization = *flags.regularization;
    } else if (auto it = config.find("regularization"); it != config.end()) {
        s.regularization = it->second;
    }
    if (!(s.tol > 0.0) || s.tol >= 1.0) throw UsageError("tol must lie in (0, 1)");
    if (s.regularization != "exact" && s.regularization != "ladder") {
        throw UsageError("regularization must be exact or ladder, got '" + s.regularization + "'");
    }
    return s;
}

DispersionOptions dispersion_options(const Settings& s) {
    DispersionOptions o;
    o.tol = s.tol;
    o.inner_tol = std::min(1e-10, 1e-2 * s.tol);
    o.regularization = s.regularization == "ladder" ? Regularization::regulator_ladder : Regularization::exact_limit;
    return o;
}

MethodChoice numerical_method(const std::string& text) {
    try {
        return parse_method_choice(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("method must be kernel, spectral or auto, got '" + text + "'");
    }
}

Axis axis_flag(const std::string& text) {
    try {
        return parse_axis(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("axis must be z, x or y, got '" + text + "'");
    }
}

std::vector<double> grid_flag(const char* name, const std::string& text) {
    try {
        return parse_grid(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
}

json number(double x) { return std::isfinite(x) ? json(round_to_printed(x)) : json(nullptr); }

// ---- compute -------------------------------------------------------------

struct ComputeArgs {
    std::string axis;
    double chi = 0.0;
    double tau = 0.0;
    bool physical = false;
    std::optional<double> z_meters;
    std::string particle = "electron";
};

int cmd_compute(const ComputeArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
    const Axis axis = axis_flag(a.axis);
    if (!(a.chi >= 0.0) || !std::isfinite(a.chi)) throw UsageError("--chi must be >= 0");
    if (!(a.tau >= 0.0) || !std::isfinite(a.tau)) throw UsageError("--tau must be >= 0");
    if (a.physical) {
        if (!a.z_meters || !(*a.z_meters > 0.0)) throw UsageError("--physical requires --z-meters > 0");
        if (a.particle != "electron") throw UsageError("--particle supports only 'electron'");
    }
    const Scenario scenario = Scenario::reduced(a.tau, a.chi);
    const DispersionOptions options = dispersion_options(s);

    ReducedDispersion r;
    if (s.method == "asymptotic") {
        using asymptotics::AsymptoticRegime;
        check_singular_band(scenario, options.band);
        std::optional<AsymptoticRegime> regime;
        if (asymptotics::regime_applies(AsymptoticRegime::small_chi, scenario, options.band)) {
            regime = AsymptoticRegime::small_chi;
        } else if (asymptotics::regime_applies(AsymptoticRegime::large_chi_late_time, scenario, options.band)) {
            regime = AsymptoticRegime::large_chi_late_time;
        }
        if (!regime) {
            throw UsageError("no asymptotic regime applies (need chi <= 1e-2, or chi >= 1 and tau >= 10)");
        }
        r = asymptotics::closed_form(axis, *regime, scenario);
    } else {
        r = velocity_dispersion(axis, scenario, numerical_method(s.method), options);
    }

    json j;
    j["axis"] = std::string(to_string(axis));
    j["chi"] = number(a.chi);
    j["tau"] = number(a.tau);
    j["rho"] = number(r.rho);
    j["abs_error"] = number(r.abs_error);
    j["method"] = std::string(to_string(r.method));
    json trace = json::array();
    for (const auto& sample : r.regulator_trace) {
        trace.push_back({{"regulator", number(sample.regulator)}, {"value", number(sample.value)}});
    }
    j["regulator_trace"] = trace;
    if (a.physical) {
        const ParticleProperties particle = ParticleProperties::electron();
        const double z_nat = metres_to_natural(*a.z_meters);
        const Scenario phys(z_nat, a.tau * z_nat, a.chi);
        json p;
        p["particle"] = a.particle;
        p["z_meters"] = number(*a.z_meters);
        p["t_seconds"] = number(a.tau * *a.z_meters / 299792458.0);
        p["velocity_dispersion"] = number(to_physical(r.rho, phys, particle));
        p["velocity_dispersion_error"] = number(to_physical(r.abs_error, phys, particle));
        p["units"] = "c^2";
        j["physical"] = p;
    }
    out << j.dump() << '\n';
    if (!r.converged || !std::isfinite(r.rho)) {
        err << "error: quadrature did not reach the requested tolerance\n";
        return exit_failure;
    }
    return exit_ok;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
    std::string axes = "z,x";
    std::string chi_grid;
    std::string tau_grid;
    std::string out_path;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << content;
    f.flush();
    if (!f) throw IoError("cannot write '" + path + "'");
}

int cmd_sweep(const SweepArgs& a, const Settings& s, std::ostream& out, std::ostream& err) {
    if (s.method == "asymptotic") throw UsageError("sweep supports kernel, spectral or auto");
    SweepSpec spec;
    std::stringstream axes(a.axes);
    for (std::string item; std::getline(axes, item, ',');) spec.axes.push_back(axis_flag(trim(item)));
    spec.chi_grid = grid_flag("--chi-grid", a.chi_grid);
    spec.tau_grid = grid_flag("--tau-grid", a.tau_grid);
    spec.method = numerical_method(s.method);
    spec.options = dispersion_options(s);
    spec.threads = s.threads;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    // Fail on an unwritable path before doing the work.
    write_file(a.out_path, "");

    const SweepTable table = dispersion_sweep(spec);
    std::ostringstream csv;
    write_csv(csv, to_rows(table, s.method));
    write_file(a.out_path, csv.str());

    std::size_t ok = 0, skipped = 0, failed = 0;
    for (const SweepRow& r : table.rows) {
        if (r.status == CellStatus::ok) ++ok;
        if (r.status == CellStatus::skipped_singular) ++skipped;
        if (r.status == CellStatus::failed) {
            ++failed;
            err << "failed: " << to_string(r.axis) << " chi=" << format_number(r.chi)
                << " tau=" << format_number(r.tau) << ": " << r.message << '\n';
        }
    }
    out << "wrote " << table.rows.size() << " rows to " << a.out_path << " (" << ok << " ok, " << skipped
        << " skipped_singular, " << failed << " failed)\n";
    return failed == 0 ? exit_ok : exit_failure;
}

// ---- validate ------------------------------------------------------------

int cmd_validate(const std::string& suite, const Settings& s, std::ostream& out) {
    if (suite != "fast" && suite != "full") throw UsageError("--suite must be fast or full");
    const auto results = run_validation(suite == "full", dispersion_options(s));
    std::vector<std::string> failed;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        if (!r.passed) failed.push_back(r.name);
    }
    if (failed.empty()) {
        out << "all " << results.size() << " checks passed\n";
        return exit_ok;
    }
    out << failed.size() << " of " << results.size() << " checks failed:";
    for (const auto& n : failed) out << ' ' << n;
    out << '\n';
    return exit_failure;
}

// ---- thresholds ----------------------------------------------------------

int cmd_thresholds(const std::string& fractions, std::ostream& out) {
    std::vector<double> values;
    try {
        values = parse_grid(fractions);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--fractions: ") + e.what());
    }
    json list = json::array();
    for (double f : values) {
        if (!(f > 0.0 && f < 1.0)) throw UsageError("fractions must lie in (0, 1), got " + format_number(f));
        list.push_back({{"fraction", number(f)}, {"chi", number(asymptotics::chi_threshold(f))}});
    }
    out << list.dump() << '\n';
    return exit_ok;
}

// ---- plotdata ------------------------------------------------------------

struct PlotArgs {
    std::string sweep_path;
    std::string out_path;
    bool overlay = false;
    std::string x = "auto";
};

int cmd_plotdata(const PlotArgs& a, std::ostream& out) {
    PlotOptions options;
    options.overlay_asymptotics = a.overlay;
    if (a.x == "tau") {
        options.x = PlotAxis::tau;
    } else if (a.x == "chi") {
        options.x = PlotAxis::chi;
    } else if (a.x != "auto") {
        throw UsageError("--x must be tau, chi or auto");
    }
    std::ifstream in(a.sweep_path);
    if (!in) throw IoError("cannot read '" + a.sweep_path + "'");
    const auto rows = read_csv(in);
    const json plot = build_plot(rows, options);
    write_file(a.out_path, plot.dump(2) + "\n");
    out << "wrote " << plot["series"].size() << " series to " << a.out_path << '\n';
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    CLI::App app{"Velocity dispersion of a charged particle near a dielectric half-space"};
    app.name("vacbrown");
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    app.add_option("--config", flags.config, "key=value file with tol, method, threads, regularization");

    auto add_common = [&](CLI::App* sub, bool with_method, const std::string& methods = "kernel | spectral | auto") {
        sub->add_option("--tol", flags.tol, "relative tolerance (env VB_TOL)");
        if (with_method) {
            sub->add_option("--method", flags.method, methods + " (env VB_METHOD)");
            sub->add_option("--regularization", flags.regularization, "exact | ladder");
        }
    };

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "evaluate rho for one (axis, chi, tau)");
    c->add_option("--axis", compute.axis, "z | x | y")->required();
    c->add_option("--chi", compute.chi, "susceptibility chi >= 0")->required();
    c->add_option("--tau", compute.tau, "t/z >= 0")->required();
    add_common(c, true, "kernel | spectral | auto | asymptotic");
    c->add_flag("--physical", compute.physical, "also report the dispersion in units of c^2");
    c->add_option("--z-meters", compute.z_meters, "distance to the interface in metres");
    c->add_option("--particle", compute.particle, "particle for --physical (electron)");

    SweepArgs sweep;
    auto* s = app.add_subcommand("sweep", "evaluate a grid and write a CSV table");
    s->add_option("--axes", sweep.axes, "comma list of axes");
    s->add_option("--chi-grid", sweep.chi_grid, "comma list or start:stop:count (log spaced)")->required();
    s->add_option("--tau-grid", sweep.tau_grid, "comma list or start:stop:count (log spaced)")->required();
    s->add_option("--out", sweep.out_path, "output CSV path")->required();
    s->add_option("--threads", flags.threads, "worker threads (env VB_THREADS)");
    add_common(s, true);

    std::string suite = "fast";
    auto* v = app.add_subcommand("validate", "run the invariant checks");
    v->add_option("--suite", suite, "fast | full");
    add_common(v, false);

    std::string fractions;
    auto* t = app.add_subcommand("thresholds", "chi at which the late-time correction equals a fraction");
    t->add_option("--fractions", fractions, "comma list of fractions in (0, 1)")->required();

    PlotArgs plot;
    auto* p = app.add_subcommand("plotdata", "convert a sweep CSV into plot-data JSON");
    p->add_option("--sweep", plot.sweep_path, "sweep CSV")->required();
    p->add_option("--out", plot.out_path, "output JSON path")->required();
    p->add_flag("--overlay-asymptotics", plot.overlay, "add closed-form curves where they apply");
    p->add_option("--x", plot.x, "tau | chi | auto");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (c->parsed()) return cmd_compute(compute, resolve(flags, env), out, err);
        if (s->parsed()) return cmd_sweep(sweep, resolve(flags, env), out, err);
        if (v->parsed()) return cmd_validate(suite, resolve(flags, env), out);
        if (t->parsed()) return cmd_thresholds(fractions, out);
        if (p->parsed()) return cmd_plotdata(plot, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SingularBandError& e) {
        err << "error: " << e.what() << '\n';
        return exit_singular;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const MalformedTable& e) {
        err << "error: malformed sweep CSV: " << e.what() << '\n';
        return exit_bad_data;
    } catch (const std::invalid_argument& e) {
        // Includes MethodSelectionError and rejected parameter values.
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}

}  // namespace vacbrown::cli
