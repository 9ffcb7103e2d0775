#pragma once

// Deterministic lambda sweeps behind the command-line front end. Each command
// produces a Table whose rows carry a status instead of silent NaNs.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/measurements.hpp"

namespace dicke {

enum class Command { Entanglement, Qfi, Wigner, FiHomodyne, Photon, FiPhoton };
enum class OutputFormat { Csv, Json };
enum class PhotonTable { Mean, Distribution };
enum class RowStatus { Ok, Singular, NonConverged };

std::string_view to_string(Command c) noexcept;
std::string_view to_string(RowStatus s) noexcept;
/// Throws Config for unknown names.
Command parse_command(std::string_view name);
OutputFormat parse_format(std::string_view name);
Target parse_target(std::string_view name);
PhotonTable parse_photon_table(std::string_view name);

struct SweepConfig {
    double omega = 1.0;
    double omega0 = 1.0;
    int n_atoms = 100;

    double lambda_min = 0.01;
    double lambda_max = 1.0;
    int points = 100;
    /// Grid points with |lam - lambda_c| below this are dropped.
    double exclusion = 1e-3;
    /// Explicit couplings; when non-empty they replace the linear grid.
    std::vector<double> lambdas;

    std::vector<double> phis{0.0};
    Target target = Target::Radiation;
    OutputFormat format = OutputFormat::Csv;
    double singularity_window = kDefaultSingularityWindow;

    /// Repetition count m for the Cramer-Rao variance column of the qfi table.
    std::optional<long long> measurements;

    double wigner_extent = 5.0;
    int wigner_points = 101;

    PhotonTable photon_table = PhotonTable::Mean;
    std::optional<int> photon_n_max;

    /// Throws Config on invalid combinations.
    void validate() const;
    std::vector<double> lambda_grid() const;
    DickeParams params(double lam) const;
};

/// Overlays the keys present in a JSON object onto cfg. Keys mirror the
/// member names ("omega", "lambda_min", "phis", "target", "format", ...).
void merge_json(SweepConfig& cfg, std::string_view text);

struct Table {
    std::vector<std::string> columns;  // numeric columns; status is appended on output
    std::vector<std::vector<double>> rows;
    std::vector<RowStatus> status;

    std::size_t failed_rows() const;
    /// CSV with 17 significant digits, or {"columns": [...], "rows": [{...}]}.
    std::string render(OutputFormat format) const;
};

Table run_entanglement(const SweepConfig& cfg);
Table run_qfi(const SweepConfig& cfg);
/// Wigner function of the radiation mode on a square grid centred on its mean,
/// at the first coupling of the sweep.
Table run_wigner(const SweepConfig& cfg);
Table run_fi_homodyne(const SweepConfig& cfg);
Table run_photon(const SweepConfig& cfg);
Table run_fi_photon(const SweepConfig& cfg);

Table run(Command command, const SweepConfig& cfg);

}  // namespace dicke
