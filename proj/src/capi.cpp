#include "dicke/dicke.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "dicke/serialization.hpp"
#include "dicke/sweep.hpp"

struct dicke_config {
    dicke::SweepConfig cfg;
};

struct dicke_table {
    dicke::Table table;
};

namespace {

thread_local std::string last_error;

dicke_status map_code(dicke::ErrorCode code) {
    using dicke::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::InsufficientSamples:
            return DICKE_INVALID_ARGUMENT;
        case ErrorCode::Config: return DICKE_CONFIG;
        case ErrorCode::CriticalPointSingularity: return DICKE_CRITICAL_POINT;
        case ErrorCode::StepCrossesCriticalPoint: return DICKE_STEP_CROSSES_CRITICAL;
        case ErrorCode::SingularCovariance: return DICKE_SINGULAR;
        case ErrorCode::Unphysical:
        case ErrorCode::NonPureState:
            return DICKE_UNPHYSICAL;
        case ErrorCode::NonConvergedSeries:
        case ErrorCode::CutoffOverflow:
        case ErrorCode::TruncationInsufficient:
            return DICKE_NOT_CONVERGED;
        case ErrorCode::NumericalBreakdown:
        case ErrorCode::NonNormalizedDensity:
            return DICKE_NUMERICAL;
    }
    return DICKE_INTERNAL;
}

template <class F>
dicke_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return DICKE_OK;
    } catch (const dicke::Error& e) {
        last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return DICKE_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return DICKE_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return DICKE_INTERNAL;
    }
}

void need(const void* ptr, const char* name) {
    dicke::require(ptr != nullptr, dicke::ErrorCode::InvalidArgument, std::string(name) + " must not be null");
}

dicke::DickeParams to_params(const dicke_params* p) {
    need(p, "params");
    dicke::DickeParams out;
    out.omega = p->omega;
    out.omega0 = p->omega0;
    out.lam = p->lambda;
    out.n_atoms = p->n_atoms;
    if (p->singularity_window > 0.0) out.singularity_window = p->singularity_window;
    out.validate();
    return out;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int to_int(double v, const char* key) {
    dicke::require(v == static_cast<double>(static_cast<long long>(v)) && v >= -2147483648.0 && v <= 2147483647.0,
                   dicke::ErrorCode::Config, std::string(key) + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

extern "C" {

const char* dicke_version(void) { return "1.0.0"; }

const char* dicke_status_string(dicke_status status) {
    switch (status) {
        case DICKE_OK: return "ok";
        case DICKE_INVALID_ARGUMENT: return "invalid argument";
        case DICKE_CONFIG: return "configuration error";
        case DICKE_CRITICAL_POINT: return "coupling inside the critical-point window";
        case DICKE_STEP_CROSSES_CRITICAL: return "finite-difference step crosses the critical point";
        case DICKE_SINGULAR: return "singular covariance";
        case DICKE_UNPHYSICAL: return "unphysical state";
        case DICKE_NOT_CONVERGED: return "series did not converge";
        case DICKE_NUMERICAL: return "numerical breakdown";
        case DICKE_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* dicke_last_error(void) { return last_error.c_str(); }

void dicke_string_free(char* s) { std::free(s); }

void dicke_params_default(dicke_params* p) {
    if (!p) return;
    const dicke::DickeParams d;
    p->omega = d.omega;
    p->omega0 = d.omega0;
    p->lambda = d.lam;
    p->n_atoms = d.n_atoms;
    p->singularity_window = d.singularity_window;
}

dicke_status dicke_critical_coupling(const dicke_params* p, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = to_params(p).lambda_c();
    });
}

dicke_status dicke_ground_state(const dicke_params* p, double* mean, double* cov) {
    return guarded([&] {
        need(mean, "mean");
        need(cov, "cov");
        const dicke::GaussianState s = dicke::ground_state(to_params(p));
        for (int i = 0; i < 4; ++i) {
            mean[i] = s.mean()(i);
            for (int j = 0; j < 4; ++j) cov[4 * i + j] = s.cov()(i, j);
        }
    });
}

dicke_status dicke_state_json(const dicke_params* p, char** out) {
    return guarded([&] {
        need(out, "out");
        const dicke::DickeParams params = to_params(p);
        const std::string doc = "{\"model\": " + dicke::derived_to_json(dicke::derive(params)) +
                                ", \"state\": " + dicke::state_to_json(dicke::ground_state(params)) + "}\n";
        *out = copy_string(doc);
    });
}

dicke_status dicke_log_negativity(const dicke_params* p, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = dicke::log_negativity(dicke::ground_state(to_params(p)).cov());
    });
}

dicke_status dicke_qfi(const dicke_params* p, dicke_qfi_result* out) {
    return guarded([&] {
        need(out, "out");
        const dicke::EstimationResult r = dicke::qfi(to_params(p));
        out->qfi = r.qfi;
        out->quadratic_term = r.quadratic_term;
        out->displacement_term = r.displacement_term;
    });
}

dicke_status dicke_fi_homodyne(const dicke_params* p, double phi, dicke_target target, double* out) {
    return guarded([&] {
        need(out, "out");
        dicke::require(target == DICKE_TARGET_RADIATION || target == DICKE_TARGET_ATOMS,
                       dicke::ErrorCode::InvalidArgument, "unknown target");
        const dicke::Target t = target == DICKE_TARGET_ATOMS ? dicke::Target::Atoms : dicke::Target::Radiation;
        *out = dicke::fi_homodyne(to_params(p), {phi, t});
    });
}

dicke_status dicke_fi_photon_counting(const dicke_params* p, double* fi, int* n_max) {
    return guarded([&] {
        need(fi, "fi");
        const dicke::PhotonCountingResult r = dicke::fi_photon_counting(to_params(p));
        *fi = r.fi;
        if (n_max) *n_max = r.n_max;
    });
}

dicke_status dicke_config_create(dicke_config** out) {
    return guarded([&] {
        need(out, "out");
        *out = new dicke_config{};
    });
}

void dicke_config_destroy(dicke_config* cfg) { delete cfg; }

dicke_status dicke_config_merge_json(dicke_config* cfg, const char* json) {
    return guarded([&] {
        need(cfg, "config");
        need(json, "json");
        dicke::merge_json(cfg->cfg, json);
    });
}

dicke_status dicke_config_set_number(dicke_config* cfg, const char* key, double value) {
    return guarded([&] {
        need(cfg, "config");
        need(key, "key");
        dicke::SweepConfig& c = cfg->cfg;
        const std::string k = key;
        if (k == "omega") c.omega = value;
        else if (k == "omega0") c.omega0 = value;
        else if (k == "n_atoms") c.n_atoms = to_int(value, key);
        else if (k == "lambda_min") c.lambda_min = value;
        else if (k == "lambda_max") c.lambda_max = value;
        else if (k == "points") c.points = to_int(value, key);
        else if (k == "exclusion") c.exclusion = value;
        else if (k == "singularity_window") c.singularity_window = value;
        else if (k == "measurements") {
            dicke::require(value >= 1.0 && value == static_cast<double>(static_cast<long long>(value)),
                           dicke::ErrorCode::Config, "measurements must be a positive integer");
            c.measurements = static_cast<long long>(value);
        }
        else if (k == "wigner_extent") c.wigner_extent = value;
        else if (k == "wigner_points") c.wigner_points = to_int(value, key);
        else if (k == "photon_n_max") c.photon_n_max = to_int(value, key);
        else dicke::fail(dicke::ErrorCode::Config, "unknown numeric option '" + k + "'");
    });
}

dicke_status dicke_config_set_string(dicke_config* cfg, const char* key, const char* value) {
    return guarded([&] {
        need(cfg, "config");
        need(key, "key");
        need(value, "value");
        const std::string k = key;
        if (k == "format") cfg->cfg.format = dicke::parse_format(value);
        else if (k == "target") cfg->cfg.target = dicke::parse_target(value);
        else if (k == "photon_table") cfg->cfg.photon_table = dicke::parse_photon_table(value);
        else dicke::fail(dicke::ErrorCode::Config, "unknown string option '" + k + "'");
    });
}

dicke_status dicke_config_set_lambdas(dicke_config* cfg, const double* values, size_t n) {
    return guarded([&] {
        need(cfg, "config");
        if (n > 0) need(values, "values");
        cfg->cfg.lambdas.assign(values, values + n);
    });
}

dicke_status dicke_config_set_phis(dicke_config* cfg, const double* values, size_t n) {
    return guarded([&] {
        need(cfg, "config");
        if (n > 0) need(values, "values");
        cfg->cfg.phis.assign(values, values + n);
    });
}

dicke_status dicke_config_validate(const dicke_config* cfg) {
    return guarded([&] {
        need(cfg, "config");
        cfg->cfg.validate();
    });
}

dicke_status dicke_config_format(const dicke_config* cfg, dicke_format* out) {
    return guarded([&] {
        need(cfg, "config");
        need(out, "out");
        *out = cfg->cfg.format == dicke::OutputFormat::Json ? DICKE_FORMAT_JSON : DICKE_FORMAT_CSV;
    });
}

dicke_status dicke_parse_command(const char* name, dicke_command* out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        *out = static_cast<dicke_command>(dicke::parse_command(name));
    });
}

dicke_status dicke_run(const dicke_config* cfg, dicke_command cmd, dicke_table** out) {
    return guarded([&] {
        need(cfg, "config");
        need(out, "out");
        dicke::require(cmd >= DICKE_CMD_ENTANGLEMENT && cmd <= DICKE_CMD_FI_PHOTON, dicke::ErrorCode::Config,
                       "unknown command");
        auto table = std::make_unique<dicke_table>();
        table->table = dicke::run(static_cast<dicke::Command>(cmd), cfg->cfg);
        *out = table.release();
    });
}

void dicke_table_destroy(dicke_table* t) { delete t; }

size_t dicke_table_rows(const dicke_table* t) { return t ? t->table.rows.size() : 0; }

size_t dicke_table_columns(const dicke_table* t) { return t ? t->table.columns.size() : 0; }

size_t dicke_table_failed_rows(const dicke_table* t) { return t ? t->table.failed_rows() : 0; }

dicke_status dicke_table_value(const dicke_table* t, size_t row, size_t col, double* out) {
    return guarded([&] {
        need(t, "table");
        need(out, "out");
        dicke::require(row < t->table.rows.size() && col < t->table.columns.size(),
                       dicke::ErrorCode::InvalidArgument, "table index out of range");
        *out = t->table.rows[row][col];
    });
}

dicke_status dicke_table_render(const dicke_table* t, dicke_format format, char** out) {
    return guarded([&] {
        need(t, "table");
        need(out, "out");
        const auto f = format == DICKE_FORMAT_JSON ? dicke::OutputFormat::Json : dicke::OutputFormat::Csv;
        *out = copy_string(t->table.render(f));
    });
}

}  // extern "C"
