// experiments.hpp — Studies: sweeps, windows, maps, random optimization, entropy scans

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qar/config.hpp"
#include "qar/csv.hpp"
#include "qar/observables.hpp"

namespace qar {

enum class Study { SweepCoupling, CoolingWindow, PerformanceMap, RandomOpt, Entropy, Steady, Evolve };

// Default parameters and grids for each study; config files and CLI flags are applied on top.
ExperimentConfig default_config(Study study);

// Worker count: hardware concurrency, capped by QARBENCH_THREADS when set.
unsigned worker_count();
// Runs body(i) for i in [0, n). Results must be written to index-addressed storage.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

inline constexpr const char* kStatusOk = "ok";

// Stationary-state checks carried alongside study rows; not part of the CSV schemas.
struct StateDiagnostics {
    double min_eigenvalue{std::numeric_limits<double>::quiet_NaN()};
    double negativity_h_cw{std::numeric_limits<double>::quiet_NaN()};
    double negativity_c_hw{std::numeric_limits<double>::quiet_NaN()};
    double power_balance{std::numeric_limits<double>::quiet_NaN()}; // |sum_j P_j| / max_j |P_j|
};

// --- coupling sweep -------------------------------------------------------------------------

struct SweepRow {
    double g{0.0};
    ModelKind model{ModelKind::CoarseGrained};
    CouplingKind hamiltonian{CouplingKind::XXX};
    double P_c{0.0}, P_h{0.0}, P_w{0.0};
    double eta{0.0};
    double entropy_rate{0.0};
    double negativity_h_cw{0.0}, negativity_c_hw{0.0};
    double coherence_100_011{0.0};
    double residual{0.0};
    double min_eigenvalue{0.0};
    std::string status{kStatusOk};
};

// Rows sorted by (model, hamiltonian, g).
std::vector<SweepRow> sweep_coupling(const ExperimentConfig& cfg);
CsvTable sweep_coupling_table(const std::vector<SweepRow>& rows);

// --- cooling window -------------------------------------------------------------------------

struct WindowRow {
    double g{0.0};
    double T_h{0.0};
    double T_w{0.0};
    double P_c{0.0};
    bool cooling{false};
    std::string status{kStatusOk};
    StateDiagnostics diagnostics{};
};

struct WindowResult {
    std::vector<WindowRow> grid;     // sorted by (g, T_h, T_w)
    std::vector<WindowRow> boundary; // P_c = 0 crossings refined in T_w at fixed T_h
};

inline constexpr double kBoundaryTolerance = 1e-8;

WindowResult cooling_window_scan(const ExperimentConfig& cfg);
CsvTable cooling_window_table(const std::vector<WindowRow>& rows);

// --- performance map ------------------------------------------------------------------------

struct MapRow {
    double g{0.0};
    double chi{0.0};
    double kappa_eff{0.0};
    double P_c{0.0};
    double eta{0.0};
    double eta_over_eta_opt{0.0};
    std::string status{kStatusOk};
    StateDiagnostics diagnostics{};
};

struct RidgeRow {
    double g{0.0};
    double kappa_eff_at_max{0.0};
    double P_c_max{0.0};
    std::string status{kStatusOk};
};

struct MapResult {
    std::vector<MapRow> rows;  // sorted by (g, chi)
    std::vector<RidgeRow> ridge;
    MapRow best;               // global maximum of P_c
};

MapResult performance_map(const ExperimentConfig& cfg);
CsvTable performance_map_table(const std::vector<MapRow>& rows);
CsvTable ridge_table(const std::vector<RidgeRow>& rows);
// key = value summary of the map maximum, including both readings of the efficiency there.
std::string performance_report(const MapResult& result);

// --- random-temperature optimization --------------------------------------------------------

struct Temperatures {
    double T_h{0.0};
    double T_c{0.0};
    double T_w{0.0};
};

// Cold temperature uniform in [1, 10] omega_c; T_h/T_c - 1 uniform in [0, 0.9 omega_w/omega_c];
// (omega_h/T_h - omega_c/T_c) T_w/omega_w uniform in [1, 10].
struct SampleLaw {
    double omega_h{5.0};
    double omega_c{1.0};
    double omega_w{4.0};

    // u are three independent uniforms in [0, 1).
    Temperatures draw(double u_c, double u_h, double u_w) const;
};

// Counter-based stream: the draw depends only on (seed, panel, sample).
std::array<double, 3> sample_uniforms(std::uint64_t seed, std::uint64_t panel, std::uint64_t sample);

struct CoolingOptimum {
    double g{0.0};
    double chi{0.0};
    double P_c{-std::numeric_limits<double>::infinity()};
    double coarse_best{-std::numeric_limits<double>::infinity()};
    int evaluations{0};
};

// Coarse log grid over (g, chi) followed by three rounds of 5x5 zoom around the incumbent.
CoolingOptimum optimize_cooling_power(const SystemParams& p, const BathParams& b, const GridSpec& g_grid,
                                      const GridSpec& chi_grid);

struct RandomOptOptions {
    std::vector<double> panels{1.5, 2.0, 3.0, 4.0, 6.0, 8.0}; // omega_w / omega_c
    int samples{500};
    bool resonant{true}; // omega_h = omega_c + omega_w per panel, else omega_h from the config
};

struct RandomOptRow {
    int panel{0};
    double omega_w{0.0};
    double T_c{0.0}, T_h{0.0}, T_w{0.0};
    double g_opt{0.0};
    double chi_opt{0.0};
    double kappa_eff_opt{0.0};
    double P_c_max{0.0};
    bool cooling{false};
    std::string status{kStatusOk};
};

std::vector<RandomOptRow> random_temperature_optimization(const ExperimentConfig& cfg, const RandomOptOptions& opt);
CsvTable random_opt_table(const std::vector<RandomOptRow>& rows);

// --- entropy scan ---------------------------------------------------------------------------

struct EntropyRow {
    double g{0.0};
    ModelKind model{ModelKind::CoarseGrained};
    double entropy_rate{0.0};
    std::string status{kStatusOk};
    StateDiagnostics diagnostics{};
};

std::vector<EntropyRow> entropy_scan(const ExperimentConfig& cfg);
CsvTable entropy_scan_table(const std::vector<EntropyRow>& rows);

// --- single point and trajectory ------------------------------------------------------------

std::string performance_record_text(const PerformanceRecord& rec);

struct TrajectoryRow {
    double t{0.0};
    double P_c_instantaneous{0.0};
    double trace{0.0};
    double min_eigenvalue{0.0};
};

// Starts from the product of qubit thermal states at the bath temperatures.
std::vector<TrajectoryRow> evolve_trajectory(const ExperimentConfig& cfg);
CsvTable trajectory_table(const std::vector<TrajectoryRow>& rows);

} // namespace qar
