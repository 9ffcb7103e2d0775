#include "dicke/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include <json.hpp>

#include "dicke/numeric.hpp"

namespace dicke {

namespace {

using Row = std::vector<double>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RowStatus status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::CriticalPointSingularity:
        case ErrorCode::StepCrossesCriticalPoint:
        case ErrorCode::SingularCovariance:
            return RowStatus::Singular;
        default:
            return RowStatus::NonConverged;
    }
}

struct Block {
    std::vector<Row> rows;
    std::vector<RowStatus> status;
};

// Evaluates compute(lam) for every coupling in parallel and concatenates the
// resulting rows in grid order. A failing coupling contributes the rows of
// placeholder(lam), each tagged with the mapped status.
Table sweep(std::vector<std::string> columns, const std::vector<double>& lambdas,
            const std::function<std::vector<Row>(double)>& compute,
            const std::function<std::vector<Row>(double)>& placeholder) {
    std::vector<Block> blocks(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        Block& b = blocks[i];
        try {
            b.rows = compute(lambdas[i]);
            b.status.assign(b.rows.size(), RowStatus::Ok);
        } catch (const Error& e) {
            b.rows = placeholder(lambdas[i]);
            b.status.assign(b.rows.size(), status_for(e.code()));
        }
    });
    Table t;
    t.columns = std::move(columns);
    for (Block& b : blocks) {
        for (Row& r : b.rows) t.rows.push_back(std::move(r));
        t.status.insert(t.status.end(), b.status.begin(), b.status.end());
    }
    return t;
}

std::function<std::vector<Row>(double)> nan_row(std::size_t width) {
    return [width](double lam) {
        Row r(width, kNaN);
        r[0] = lam;
        return std::vector<Row>{r};
    };
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Entanglement: return "entanglement";
        case Command::Qfi: return "qfi";
        case Command::Wigner: return "wigner";
        case Command::FiHomodyne: return "fi-homodyne";
        case Command::Photon: return "photon";
        case Command::FiPhoton: return "fi-photon";
    }
    return "?";
}

std::string_view to_string(RowStatus s) noexcept {
    switch (s) {
        case RowStatus::Ok: return "ok";
        case RowStatus::Singular: return "singular";
        case RowStatus::NonConverged: return "nonconverged";
    }
    return "?";
}

Command parse_command(std::string_view name) {
    for (Command c : {Command::Entanglement, Command::Qfi, Command::Wigner, Command::FiHomodyne, Command::Photon,
                      Command::FiPhoton})
        if (to_string(c) == name) return c;
    fail(ErrorCode::Config, "unknown command '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    fail(ErrorCode::Config, "unknown format '" + std::string(name) + "' (expected csv or json)");
}

Target parse_target(std::string_view name) {
    if (name == "radiation") return Target::Radiation;
    if (name == "atoms") return Target::Atoms;
    fail(ErrorCode::Config, "unknown target '" + std::string(name) + "' (expected radiation or atoms)");
}

PhotonTable parse_photon_table(std::string_view name) {
    if (name == "mean") return PhotonTable::Mean;
    if (name == "distribution") return PhotonTable::Distribution;
    fail(ErrorCode::Config, "unknown photon table '" + std::string(name) + "' (expected mean or distribution)");
}

void SweepConfig::validate() const {
    auto check = [](bool cond, const std::string& what) { require(cond, ErrorCode::Config, what); };
    check(std::isfinite(omega) && omega > 0.0, "omega must be > 0");
    check(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be > 0");
    check(n_atoms >= 1, "n_atoms must be >= 1");
    check(std::isfinite(singularity_window) && singularity_window >= 0.0, "singularity_window must be >= 0");
    check(std::isfinite(exclusion) && exclusion >= singularity_window,
          "exclusion must be at least the singularity window");
    if (lambdas.empty()) {
        check(points >= 2, "points must be >= 2");
        check(std::isfinite(lambda_min) && lambda_min >= 0.0, "lambda_min must be >= 0");
        check(std::isfinite(lambda_max) && lambda_max > lambda_min, "lambda_max must exceed lambda_min");
    }
    for (double l : lambdas) check(std::isfinite(l) && l >= 0.0, "lambda values must be finite and >= 0");
    check(!phis.empty(), "at least one phi is required");
    for (double p : phis) check(std::isfinite(p), "phi values must be finite");
    check(!measurements || *measurements >= 1, "measurements must be >= 1");
    check(std::isfinite(wigner_extent) && wigner_extent > 0.0, "wigner_extent must be > 0");
    check(wigner_points >= 2, "wigner_points must be >= 2");
    check(!photon_n_max || *photon_n_max >= 0, "photon_n_max must be >= 0");
}

std::vector<double> SweepConfig::lambda_grid() const {
    if (!lambdas.empty()) return lambdas;
    const double lc = 0.5 * std::sqrt(omega * omega0);
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) {
        const double lam = lambda_min + (lambda_max - lambda_min) * i / (points - 1);
        if (std::abs(lam - lc) >= exclusion) grid.push_back(lam);
    }
    return grid;
}

DickeParams SweepConfig::params(double lam) const {
    DickeParams p;
    p.omega = omega;
    p.omega0 = omega0;
    p.lam = lam;
    p.n_atoms = n_atoms;
    p.singularity_window = singularity_window;
    return p;
}

void merge_json(SweepConfig& cfg, std::string_view text) {
    static const char* const known[] = {
        "omega",         "omega0",        "n_atoms",       "lambda_min",   "lambda_max", "points",
        "exclusion",     "lambdas",       "lambda",        "phis",         "phi",        "target",
        "format",        "singularity_window", "measurements", "wigner_extent", "wigner_points",
        "photon_table",  "photon_n_max"};
    try {
        const auto j = nlohmann::json::parse(text);
        require(j.is_object(), ErrorCode::Config, "configuration must be a JSON object");
        for (const auto& item : j.items()) {
            bool ok = false;
            for (const char* k : known) ok = ok || item.key() == k;
            require(ok, ErrorCode::Config, "unknown configuration key '" + item.key() + "'");
        }
        read_key(j, "omega", cfg.omega);
        read_key(j, "omega0", cfg.omega0);
        read_key(j, "n_atoms", cfg.n_atoms);
        read_key(j, "lambda_min", cfg.lambda_min);
        read_key(j, "lambda_max", cfg.lambda_max);
        read_key(j, "points", cfg.points);
        read_key(j, "exclusion", cfg.exclusion);
        read_key(j, "lambdas", cfg.lambdas);
        if (j.contains("lambda")) cfg.lambdas = {j.at("lambda").get<double>()};
        read_key(j, "phis", cfg.phis);
        if (j.contains("phi")) cfg.phis = {j.at("phi").get<double>()};
        read_key(j, "singularity_window", cfg.singularity_window);
        read_key(j, "wigner_extent", cfg.wigner_extent);
        read_key(j, "wigner_points", cfg.wigner_points);
        if (j.contains("target")) cfg.target = parse_target(j.at("target").get<std::string>());
        if (j.contains("format")) cfg.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("photon_table")) cfg.photon_table = parse_photon_table(j.at("photon_table").get<std::string>());
        if (j.contains("measurements")) cfg.measurements = j.at("measurements").get<long long>();
        if (j.contains("photon_n_max")) cfg.photon_n_max = j.at("photon_n_max").get<int>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Config, std::string("invalid configuration: ") + e.what());
    }
}

std::size_t Table::failed_rows() const {
    std::size_t n = 0;
    for (RowStatus s : status) n += s != RowStatus::Ok;
    return n;
}

std::string Table::render(OutputFormat format) const {
    if (format == OutputFormat::Csv) {
        std::string out;
        for (const auto& c : columns) out += c + ",";
        out += "status\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (double v : rows[i]) out += format_number(v) + ",";
            out += std::string(to_string(status[i])) + "\n";
        }
        return out;
    }
    nlohmann::ordered_json doc;
    auto cols = columns;
    cols.emplace_back("status");
    doc["columns"] = cols;
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        nlohmann::ordered_json row;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const double v = rows[i][c];
            if (std::isfinite(v))
                row[columns[c]] = v;
            else
                row[columns[c]] = nullptr;
        }
        row["status"] = std::string(to_string(status[i]));
        arr.push_back(std::move(row));
    }
    doc["rows"] = std::move(arr);
    return doc.dump(1) + "\n";
}

Table run_entanglement(const SweepConfig& cfg) {
    cfg.validate();
    return sweep(
        {"lambda", "E_N", "d_tilde_minus"}, cfg.lambda_grid(),
        [&](double lam) {
            const GaussianState s = ground_state(cfg.params(lam));
            const SymplecticSpectrum spec = symplectic_spectrum(s.cov());
            return std::vector<Row>{{lam, log_negativity(s.cov()), spec.ppt_d_minus}};
        },
        nan_row(3));
}

Table run_qfi(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<std::string> cols{"lambda", "H", "quadratic_term", "displacement_term"};
    if (cfg.measurements) cols.emplace_back("qcrb_variance");
    const std::size_t width = cols.size();
    return sweep(
        std::move(cols), cfg.lambda_grid(),
        [&](double lam) {
            const EstimationResult r = qfi(cfg.params(lam));
            Row row{lam, r.qfi, r.quadratic_term, r.displacement_term};
            if (cfg.measurements) row.push_back(cramer_rao_bound(r.qfi, *cfg.measurements));
            return std::vector<Row>{row};
        },
        nan_row(width));
}

Table run_wigner(const SweepConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = cfg.lambda_grid();
    require(!grid.empty(), ErrorCode::Config, "wigner: the coupling grid is empty");
    const double lam = grid.front();
    const int n = cfg.wigner_points;
    return sweep(
        {"x", "p", "W"}, {lam},
        [&](double l) {
            const GaussianState s = reduced_radiation_state(cfg.params(l));
            std::vector<Row> rows;
            rows.reserve(static_cast<std::size_t>(n) * n);
            Vector point(2);
            for (int i = 0; i < n; ++i) {
                const double x = s.mean()(0) - cfg.wigner_extent + 2.0 * cfg.wigner_extent * i / (n - 1);
                for (int k = 0; k < n; ++k) {
                    const double p = s.mean()(1) - cfg.wigner_extent + 2.0 * cfg.wigner_extent * k / (n - 1);
                    point << x, p;
                    rows.push_back({x, p, wigner_at(s, point)});
                }
            }
            return rows;
        },
        [](double) { return std::vector<Row>{{kNaN, kNaN, kNaN}}; });
}

Table run_fi_homodyne(const SweepConfig& cfg) {
    cfg.validate();
    return sweep(
        {"lambda", "phi", "FI", "H", "ratio"}, cfg.lambda_grid(),
        [&](double lam) {
            const DickeParams p = cfg.params(lam);
            const GaussianState ground = ground_state(p);
            const StateDerivative der = state_derivative(p);
            const double h = pure_state_qfi(ground, der).qfi;
            std::vector<Row> rows;
            for (double phi : cfg.phis) {
                const double fi = fi_homodyne(ground, der, {phi, cfg.target});
                rows.push_back({lam, phi, fi, h, fi / h});
            }
            return rows;
        },
        [&](double lam) {
            std::vector<Row> rows;
            for (double phi : cfg.phis) rows.push_back({lam, phi, kNaN, kNaN, kNaN});
            return rows;
        });
}

Table run_photon(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.photon_table == PhotonTable::Mean) {
        return sweep(
            {"lambda", "n_s", "thermal", "coherent", "total"}, cfg.lambda_grid(),
            [&](double lam) {
                const MeanPhotonDecomposition m = mean_photon_decomposition(reduced_radiation_state(cfg.params(lam)));
                return std::vector<Row>{{lam, m.squeezed, m.thermal, m.coherent, m.total}};
            },
            nan_row(5));
    }
    return sweep(
        {"lambda", "n", "p"}, cfg.lambda_grid(),
        [&](double lam) {
            PhotonOptions opts;
            opts.n_max = cfg.photon_n_max;
            const PhotonDistribution d = photon_distribution(reduced_radiation_state(cfg.params(lam)), opts);
            std::vector<Row> rows;
            rows.reserve(d.probs.size());
            for (std::size_t n = 0; n < d.probs.size(); ++n) rows.push_back({lam, static_cast<double>(n), d.probs[n]});
            return rows;
        },
        nan_row(3));
}

Table run_fi_photon(const SweepConfig& cfg) {
    cfg.validate();
    return sweep(
        {"lambda", "FI", "H", "ratio", "n_max"}, cfg.lambda_grid(),
        [&](double lam) {
            const DickeParams p = cfg.params(lam);
            const PhotonCountingResult pc = fi_photon_counting(p);
            const double h = qfi(p).qfi;
            return std::vector<Row>{{lam, pc.fi, h, pc.fi / h, static_cast<double>(pc.n_max)}};
        },
        nan_row(5));
}

Table run(Command command, const SweepConfig& cfg) {
    switch (command) {
        case Command::Entanglement: return run_entanglement(cfg);
        case Command::Qfi: return run_qfi(cfg);
        case Command::Wigner: return run_wigner(cfg);
        case Command::FiHomodyne: return run_fi_homodyne(cfg);
        case Command::Photon: return run_photon(cfg);
        case Command::FiPhoton: return run_fi_photon(cfg);
    }
    fail(ErrorCode::Config, "unknown command");
}

}  // namespace dicke
