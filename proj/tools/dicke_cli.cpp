// dicke: command-line front end over the C interface of libdicke.
//
// Exit codes: 0 success, 1 runtime failure, 2 configuration error,
// 3 completed with failed rows (singular or non-converged).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dicke/dicke.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitFailedRows = 3;

struct Options {
    std::string config_file;
    std::string out_file;
    std::vector<double> lambdas;
    std::vector<double> phis;
    std::string format;
    std::string target;
    std::string table;
    double omega = 0, omega0 = 0, lambda_min = 0, lambda_max = 0, exclusion = 0, extent = 0;
    int points = 0, n_atoms = 0, grid_points = 0, n_max = 0;
    long long samples = 0;
};

class CliFailure {
public:
    CliFailure(int code, std::string msg) : code(code), msg(std::move(msg)) {}
    int code;
    std::string msg;
};

void check(dicke_status s, const std::string& context) {
    if (s == DICKE_OK) return;
    const int code = s == DICKE_CONFIG || s == DICKE_INVALID_ARGUMENT ? kExitConfig : kExitRuntime;
    throw CliFailure(code, context + ": " + dicke_status_string(s) + " (" + dicke_last_error() + ")");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliFailure(kExitConfig, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw CliFailure(kExitRuntime, "cannot write '" + path + "'");
    out << text;
}

struct ConfigHandle {
    dicke_config* ptr = nullptr;
    ConfigHandle() { check(dicke_config_create(&ptr), "config"); }
    ~ConfigHandle() { dicke_config_destroy(ptr); }
    ConfigHandle(const ConfigHandle&) = delete;
    ConfigHandle& operator=(const ConfigHandle&) = delete;
};

struct TableHandle {
    dicke_table* ptr = nullptr;
    ~TableHandle() { dicke_table_destroy(ptr); }
};

struct Flags {
    CLI::Option* omega;
    CLI::Option* omega0;
    CLI::Option* n_atoms;
    CLI::Option* lambda;
    CLI::Option* lambda_min;
    CLI::Option* lambda_max;
    CLI::Option* points;
    CLI::Option* exclusion;
    CLI::Option* phi;
    CLI::Option* format;
    CLI::Option* target;
    CLI::Option* samples;
    CLI::Option* extent;
    CLI::Option* grid_points;
    CLI::Option* table;
    CLI::Option* n_max;
};

Flags add_flags(CLI::App* sub, Options& o) {
    Flags f{};
    sub->add_option("--config", o.config_file, "JSON configuration file; flags override its keys")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", o.out_file, "Write output to this file instead of stdout");
    f.omega = sub->add_option("--omega", o.omega, "Radiation frequency");
    f.omega0 = sub->add_option("--omega0", o.omega0, "Atomic transition frequency");
    f.n_atoms = sub->add_option("--n-atoms", o.n_atoms, "Number of atoms N");
    f.lambda = sub->add_option("--lambda", o.lambdas, "Explicit coupling (repeatable); replaces the grid");
    f.lambda_min = sub->add_option("--lambda-min", o.lambda_min, "Grid start");
    f.lambda_max = sub->add_option("--lambda-max", o.lambda_max, "Grid end");
    f.points = sub->add_option("--points", o.points, "Number of grid points");
    f.exclusion = sub->add_option("--exclusion", o.exclusion, "Drop grid points closer than this to lambda_c");
    f.phi = sub->add_option("--phi", o.phis, "Homodyne angle (repeatable)");
    f.format = sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    f.target = sub->add_option("--target", o.target, "Homodyne subsystem")
                   ->check(CLI::IsMember({"radiation", "atoms"}));
    f.samples = sub->add_option("--samples", o.samples, "Repetitions m for the Cramer-Rao variance column");
    f.extent = sub->add_option("--extent", o.extent, "Half-width of the Wigner grid");
    f.grid_points = sub->add_option("--grid-points", o.grid_points, "Wigner grid points per axis");
    f.table = sub->add_option("--table", o.table, "Photon table: mean decomposition or distribution")
                  ->check(CLI::IsMember({"mean", "distribution"}));
    f.n_max = sub->add_option("--n-max", o.n_max, "Fixed photon-number cutoff for the distribution table");
    return f;
}

void apply(const Flags& f, const Options& o, dicke_config* cfg) {
    if (!o.config_file.empty()) check(dicke_config_merge_json(cfg, read_file(o.config_file).c_str()), "config file");
    auto num = [&](CLI::Option* opt, const char* key, double v) {
        if (opt->count()) check(dicke_config_set_number(cfg, key, v), key);
    };
    auto str = [&](CLI::Option* opt, const char* key, const std::string& v) {
        if (opt->count()) check(dicke_config_set_string(cfg, key, v.c_str()), key);
    };
    num(f.omega, "omega", o.omega);
    num(f.omega0, "omega0", o.omega0);
    num(f.n_atoms, "n_atoms", o.n_atoms);
    num(f.lambda_min, "lambda_min", o.lambda_min);
    num(f.lambda_max, "lambda_max", o.lambda_max);
    num(f.points, "points", o.points);
    num(f.exclusion, "exclusion", o.exclusion);
    num(f.samples, "measurements", static_cast<double>(o.samples));
    num(f.extent, "wigner_extent", o.extent);
    num(f.grid_points, "wigner_points", o.grid_points);
    num(f.n_max, "photon_n_max", o.n_max);
    str(f.format, "format", o.format);
    str(f.target, "target", o.target);
    str(f.table, "photon_table", o.table);
    if (f.lambda->count()) check(dicke_config_set_lambdas(cfg, o.lambdas.data(), o.lambdas.size()), "lambda");
    if (f.phi->count()) check(dicke_config_set_phis(cfg, o.phis.data(), o.phis.size()), "phi");
    check(dicke_config_validate(cfg), "config");
}

int run_sweep(const std::string& name, const Flags& f, const Options& o) {
    ConfigHandle cfg;
    apply(f, o, cfg.ptr);
    dicke_command cmd;
    check(dicke_parse_command(name.c_str(), &cmd), "command");
    dicke_format format;
    check(dicke_config_format(cfg.ptr, &format), "format");
    TableHandle table;
    check(dicke_run(cfg.ptr, cmd, &table.ptr), name);
    char* text = nullptr;
    check(dicke_table_render(table.ptr, format, &text), "render");
    std::string out(text);
    dicke_string_free(text);
    write_output(out, o.out_file);
    const size_t failed = dicke_table_failed_rows(table.ptr);
    if (failed > 0) {
        std::cerr << "dicke: " << failed << " row(s) failed (singular or nonconverged)\n";
        return kExitFailedRows;
    }
    return 0;
}

int run_state(const Options& o, bool lambda_given) {
    if (!lambda_given || o.lambdas.size() != 1) throw CliFailure(kExitConfig, "state requires exactly one --lambda");
    dicke_params p;
    dicke_params_default(&p);
    p.omega = o.omega;
    p.omega0 = o.omega0;
    p.n_atoms = o.n_atoms;
    p.lambda = o.lambdas.front();
    char* text = nullptr;
    check(dicke_state_json(&p, &text), "state");
    std::string out(text);
    dicke_string_free(text);
    write_output(out, o.out_file);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dicke-model ground states, quantum Fisher information and local-probe Fisher information"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dicke_version()));

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"entanglement", "Logarithmic negativity and smallest PPT symplectic eigenvalue"},
        {"qfi", "Quantum Fisher information for the coupling"},
        {"wigner", "Wigner function of the radiation mode on a grid"},
        {"fi-homodyne", "Homodyne Fisher information and its ratio to the QFI"},
        {"photon", "Photon-number statistics of the radiation mode"},
        {"fi-photon", "Photon-counting Fisher information and its ratio to the QFI"},
    };
    std::vector<Options> options(commands.size() + 1);
    std::vector<Flags> flags;
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, commands[i].second);
        flags.push_back(add_flags(sub, options[i]));
        subs.push_back(sub);
    }
    Options& state_opts = options.back();
    {
        dicke_params defaults;
        dicke_params_default(&defaults);
        state_opts.omega = defaults.omega;
        state_opts.omega0 = defaults.omega0;
        state_opts.n_atoms = defaults.n_atoms;
    }
    CLI::App* state = app.add_subcommand("state", "Ground-state moments and model constants as JSON");
    CLI::Option* state_lambda = state->add_option("--lambda", state_opts.lambdas, "Coupling")->required();
    state->add_option("--omega", state_opts.omega, "Radiation frequency");
    state->add_option("--omega0", state_opts.omega0, "Atomic transition frequency");
    state->add_option("--n-atoms", state_opts.n_atoms, "Number of atoms N");
    state->add_option("-o,--out", state_opts.out_file, "Write output to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (state->parsed()) return run_state(state_opts, state_lambda->count() > 0);
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return run_sweep(commands[i].first, flags[i], options[i]);
    } catch (const CliFailure& f) {
        std::cerr << "dicke: " << f.msg << "\n";
        return f.code;
    }
    return kExitRuntime;
}
