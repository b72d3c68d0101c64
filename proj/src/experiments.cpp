// experiments.cpp — Studies: sweeps, windows, maps, random optimization, entropy scans

#include "qar/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <tuple>

#include "qar/error.hpp"

namespace qar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

GridSpec log_grid(double min, double max, int count) { return {min, max, count, GridScale::Log}; }
GridSpec linear_grid(double min, double max, int count) { return {min, max, count, GridScale::Linear}; }

ExperimentConfig reference_defaults() {
    ExperimentConfig cfg;
    cfg.system = SystemParams{5.0, 1.0, 4.0, 0.25, CouplingKind::XXX};
    cfg.baths.temperature = {2.0, 1.0, 8.0};
    cfg.baths.chi = 1e-2;
    return cfg;
}

std::string status_of(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->code()));
    return "Failure";
}

double ratio_or_nan(double num, double den) { return std::abs(den) < 1e-14 ? kNaN : num / den; }

struct PointPowers {
    HeatPowers powers;
    double residual{0.0};
    StateDiagnostics diagnostics;
};

PointPowers solve_powers(const Liouvillian& L) {
    const SteadyStateResult ss = steady_state(L);
    PointPowers out{stationary_heat_powers(L, ss.rho_inf), ss.residual, {}};
    out.diagnostics.min_eigenvalue = ss.min_eigenvalue;
    out.diagnostics.negativity_h_cw = negativity(ss.rho_inf, Bipartition::H_CW);
    out.diagnostics.negativity_c_hw = negativity(ss.rho_inf, Bipartition::C_HW);
    const double scale = out.powers.max_abs();
    out.diagnostics.power_balance = scale > 0.0 ? std::abs(out.powers.sum()) / scale : 0.0;
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string bool_cell(bool b) { return b ? "1" : "0"; }

} // namespace

ExperimentConfig default_config(Study study) {
    ExperimentConfig cfg = reference_defaults();
    switch (study) {
    case Study::SweepCoupling:
        cfg.models = {ModelKind::CoarseGrained, ModelKind::Local, ModelKind::Global};
        cfg.hamiltonians = {CouplingKind::XXX, CouplingKind::Resonant};
        cfg.grids["g"] = log_grid(1e-3, 1.0, 61);
        break;
    case Study::CoolingWindow:
        cfg.grids["g"] = linear_grid(0.1, 0.7, 4);
        cfg.grids["T_h"] = linear_grid(1.0, 2.2, 40);
        cfg.grids["T_w"] = log_grid(1.0, 50.0, 40);
        break;
    case Study::PerformanceMap:
        cfg.grids["g"] = log_grid(1e-3, 1.0, 50);
        cfg.grids["kappa"] = log_grid(1e-3, 1.0, 50);
        break;
    case Study::RandomOpt:
        cfg.grids["g"] = log_grid(1e-3, 1.0, 12);
        cfg.grids["chi"] = log_grid(1e-4, 0.1, 12);
        break;
    case Study::Entropy:
        cfg.baths.temperature = {2.0, 1.0, 2.0};
        cfg.models = {ModelKind::CoarseGrained, ModelKind::Local, ModelKind::Global};
        cfg.grids["g"] = log_grid(1e-3, 1.0, 61);
        break;
    case Study::Steady:
        break;
    case Study::Evolve:
        cfg.grids["t"] = linear_grid(0.0, 40.0, 801);
        break;
    }
    return cfg;
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QARBENCH_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// --- coupling sweep -------------------------------------------------------------------------

std::vector<SweepRow> sweep_coupling(const ExperimentConfig& cfg) {
    const auto gs = cfg.grid("g").points();
    std::vector<SweepRow> rows;
    for (ModelKind m : cfg.models)
        for (CouplingKind h : cfg.hamiltonians)
            for (double g : gs) rows.push_back(SweepRow{.g = g, .model = m, .hamiltonian = h});
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tuple(a.model, a.hamiltonian, a.g) < std::tuple(b.model, b.hamiltonian, b.g);
    });

    parallel_for(rows.size(), [&](std::size_t i) {
        SweepRow& row = rows[i];
        SystemParams p = cfg.system;
        p.g = row.g;
        p.coupling = row.hamiltonian;
        try {
            const PerformanceRecord rec = evaluate_performance(p, cfg.baths, row.model);
            row.P_c = rec.powers.cold;
            row.P_h = rec.powers.hot;
            row.P_w = rec.powers.work;
            row.eta = rec.eta;
            row.entropy_rate = rec.entropy_rate;
            row.negativity_h_cw = rec.negativity_h_cw;
            row.negativity_c_hw = rec.negativity_c_hw;
            row.coherence_100_011 = rec.coherence_100_011;
            row.residual = rec.residual;
            row.min_eigenvalue = rec.min_eigenvalue;
        } catch (const std::exception& e) {
            row.P_c = row.P_h = row.P_w = row.eta = row.entropy_rate = kNaN;
            row.negativity_h_cw = row.negativity_c_hw = row.coherence_100_011 = row.residual = kNaN;
            row.min_eigenvalue = kNaN;
            row.status = status_of(e);
        }
    });
    return rows;
}

CsvTable sweep_coupling_table(const std::vector<SweepRow>& rows) {
    CsvTable t({"g", "model", "hamiltonian", "P_c", "P_h", "P_w", "eta", "entropy_rate", "negativity_h_cw",
                "negativity_c_hw", "coherence_100_011", "residual", "status"});
    for (const auto& r : rows) {
        t.add_row({format_number(r.g), std::string(to_string(r.model)), std::string(to_string(r.hamiltonian)),
                   format_number(r.P_c), format_number(r.P_h), format_number(r.P_w), format_number(r.eta),
                   format_number(r.entropy_rate), format_number(r.negativity_h_cw),
                   format_number(r.negativity_c_hw), format_number(r.coherence_100_011), format_number(r.residual),
                   r.status});
    }
    return t;
}

// --- cooling window -------------------------------------------------------------------------

namespace {

PointPowers window_point(const ExperimentConfig& cfg, double g, double T_h, double T_w) {
    SystemParams p = cfg.system;
    p.g = g;
    p.coupling = cfg.hamiltonians.front();
    BathParams b = cfg.baths;
    b.temperature[site_index(Site::Hot)] = T_h;
    b.temperature[site_index(Site::Work)] = T_w;
    return solve_powers(build_liouvillian(p, b, cfg.models.front()));
}

double cold_power(const ExperimentConfig& cfg, double g, double T_h, double T_w) {
    return window_point(cfg, g, T_h, T_w).powers.cold;
}

// Bisection in log T_w between a cooling and a non-cooling grid cell.
WindowRow refine_boundary(const ExperimentConfig& cfg, const WindowRow& a, const WindowRow& b) {
    double lo = std::log(a.T_w), hi = std::log(b.T_w);
    double p_lo = a.P_c;
    WindowRow out{.g = a.g, .T_h = a.T_h};
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        out.T_w = std::exp(mid);
        out.P_c = cold_power(cfg, a.g, a.T_h, out.T_w);
        out.cooling = out.P_c > 0.0;
        if (std::abs(out.P_c) <= kBoundaryTolerance) return out;
        if ((out.P_c > 0.0) == (p_lo > 0.0)) {
            lo = mid;
            p_lo = out.P_c;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    out.status = "BisectionStalled";
    return out;
}

} // namespace

WindowResult cooling_window_scan(const ExperimentConfig& cfg) {
    const auto gs = cfg.grid("g").points();
    const auto ths = cfg.grid("T_h").points();
    const auto tws = cfg.grid("T_w").points();

    WindowResult result;
    for (double g : gs)
        for (double th : ths)
            for (double tw : tws) result.grid.push_back(WindowRow{.g = g, .T_h = th, .T_w = tw});

    parallel_for(result.grid.size(), [&](std::size_t i) {
        WindowRow& row = result.grid[i];
        try {
            const PointPowers pp = window_point(cfg, row.g, row.T_h, row.T_w);
            row.P_c = pp.powers.cold;
            row.cooling = row.P_c > 0.0;
            row.diagnostics = pp.diagnostics;
        } catch (const std::exception& e) {
            row.P_c = kNaN;
            row.status = status_of(e);
        }
    });

    std::vector<std::pair<std::size_t, std::size_t>> crossings;
    for (std::size_t i = 0; i + 1 < result.grid.size(); ++i) {
        const auto& a = result.grid[i];
        const auto& b = result.grid[i + 1];
        if (a.g != b.g || a.T_h != b.T_h) continue;
        if (a.status != kStatusOk || b.status != kStatusOk) continue;
        if ((a.P_c > 0.0) != (b.P_c > 0.0)) crossings.emplace_back(i, i + 1);
    }
    result.boundary.resize(crossings.size());
    parallel_for(crossings.size(), [&](std::size_t k) {
        const auto& a = result.grid[crossings[k].first];
        const auto& b = result.grid[crossings[k].second];
        try {
            result.boundary[k] = refine_boundary(cfg, a, b);
        } catch (const std::exception& e) {
            result.boundary[k] = WindowRow{.g = a.g, .T_h = a.T_h, .T_w = kNaN, .P_c = kNaN, .status = status_of(e)};
        }
    });
    return result;
}

CsvTable cooling_window_table(const std::vector<WindowRow>& rows) {
    CsvTable t({"g", "T_h", "T_w", "P_c", "cooling", "status"});
    for (const auto& r : rows)
        t.add_row({format_number(r.g), format_number(r.T_h), format_number(r.T_w), format_number(r.P_c),
                   bool_cell(r.cooling), r.status});
    return t;
}

// --- performance map ------------------------------------------------------------------------

MapResult performance_map(const ExperimentConfig& cfg) {
    const auto gs = cfg.grid("g").points();
    const auto kappas = cfg.grid("kappa").points();
    const ModelKind kind = cfg.models.front();

    BathParams unit = cfg.baths;
    unit.chi = 1.0;
    const double kappa_per_chi = kappa_eff(cfg.system, unit);
    const double eta_optimal = eta_opt(cfg.system, cfg.baths.T(Site::Hot), cfg.baths.T(Site::Cold)).value;

    MapResult result;
    result.rows.resize(gs.size() * kappas.size());
    parallel_for(gs.size(), [&](std::size_t ig) {
        SystemParams p = cfg.system;
        p.g = gs[ig];
        p.coupling = cfg.hamiltonians.front();
        std::optional<GeneratorParts> parts;
        std::string parts_error;
        try {
            parts = build_generator_parts(p, cfg.baths, kind);
        } catch (const std::exception& e) {
            parts_error = status_of(e);
        }
        for (std::size_t ik = 0; ik < kappas.size(); ++ik) {
            MapRow& row = result.rows[ig * kappas.size() + ik];
            row.g = gs[ig];
            row.chi = kappas[ik] / kappa_per_chi;
            BathParams b = cfg.baths;
            b.chi = row.chi;
            row.kappa_eff = kappa_eff(p, b);
            if (!parts) {
                row.P_c = row.eta = row.eta_over_eta_opt = kNaN;
                row.status = parts_error;
                continue;
            }
            try {
                const PointPowers pp = solve_powers(assemble_liouvillian(*parts, p, b, kind));
                row.P_c = pp.powers.cold;
                row.eta = ratio_or_nan(pp.powers.cold, pp.powers.work);
                row.eta_over_eta_opt = row.eta / eta_optimal;
                row.diagnostics = pp.diagnostics;
            } catch (const std::exception& e) {
                row.P_c = row.eta = row.eta_over_eta_opt = kNaN;
                row.status = status_of(e);
            }
        }
    });

    result.best.P_c = -std::numeric_limits<double>::infinity();
    for (std::size_t ig = 0; ig < gs.size(); ++ig) {
        RidgeRow ridge{.g = gs[ig], .kappa_eff_at_max = kNaN, .P_c_max = -std::numeric_limits<double>::infinity()};
        for (std::size_t ik = 0; ik < kappas.size(); ++ik) {
            const MapRow& row = result.rows[ig * kappas.size() + ik];
            if (row.status != kStatusOk) continue;
            if (row.P_c > ridge.P_c_max) {
                ridge.P_c_max = row.P_c;
                ridge.kappa_eff_at_max = row.kappa_eff;
            }
            if (row.P_c > result.best.P_c) result.best = row;
        }
        if (std::isnan(ridge.kappa_eff_at_max)) {
            ridge.P_c_max = kNaN;
            ridge.status = "NoValidPoint";
        }
        result.ridge.push_back(ridge);
    }
    return result;
}

CsvTable performance_map_table(const std::vector<MapRow>& rows) {
    CsvTable t({"g", "chi", "kappa_eff", "P_c", "eta", "eta_over_eta_opt", "status"});
    for (const auto& r : rows)
        t.add_row({format_number(r.g), format_number(r.chi), format_number(r.kappa_eff), format_number(r.P_c),
                   format_number(r.eta), format_number(r.eta_over_eta_opt), r.status});
    return t;
}

CsvTable ridge_table(const std::vector<RidgeRow>& rows) {
    CsvTable t({"g", "kappa_eff_at_max", "P_c_max", "status"});
    for (const auto& r : rows)
        t.add_row({format_number(r.g), format_number(r.kappa_eff_at_max), format_number(r.P_c_max), r.status});
    return t;
}

std::string performance_report(const MapResult& result) {
    const MapRow& b = result.best;
    // The efficiency at maximum power is quoted as 9%; report which reading matches.
    const double target = 0.09;
    const bool absolute_closer = std::abs(b.eta - target) <= std::abs(b.eta_over_eta_opt - target);
    std::string out;
    auto line = [&out](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
    line("P_c_max", format_number(b.P_c));
    line("g_at_max", format_number(b.g));
    line("chi_at_max", format_number(b.chi));
    line("kappa_eff_at_max", format_number(b.kappa_eff));
    line("P_c_over_g_at_max", format_number(b.P_c / b.g));
    line("eta_at_max", format_number(b.eta));
    line("eta_over_eta_opt_at_max", format_number(b.eta_over_eta_opt));
    line("nine_percent_reading", absolute_closer ? "eta" : "eta_over_eta_opt");
    return out;
}

// --- random-temperature optimization --------------------------------------------------------

Temperatures SampleLaw::draw(double u_c, double u_h, double u_w) const {
    Temperatures t;
    t.T_c = omega_c * (1.0 + 9.0 * u_c);
    t.T_h = t.T_c * (1.0 + 0.9 * (omega_w / omega_c) * u_h);
    const double gap = omega_h / t.T_h - omega_c / t.T_c;
    if (!(gap > 0.0))
        throw Error(ErrorCode::InvalidArgument, "sample law requires omega_h/T_h > omega_c/T_c");
    t.T_w = (1.0 + 9.0 * u_w) * omega_w / gap;
    return t;
}

std::array<double, 3> sample_uniforms(std::uint64_t seed, std::uint64_t panel, std::uint64_t sample) {
    std::mt19937_64 engine(splitmix64(seed ^ splitmix64(panel ^ splitmix64(sample))));
    std::array<double, 3> u{};
    for (double& x : u) x = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return u;
}

namespace {

class CoolingObjective {
public:
    CoolingObjective(const SystemParams& p, const BathParams& b) : p_(p), b_(b) {}

    double operator()(double g, double chi) {
        ++evaluations;
        try {
            const GeneratorParts& parts = parts_for(g);
            SuperOp L = parts.coherent;
            for (const auto& d : parts.unit_dissipators) L += chi * d;
            const DensityMatrix rho = steady_state_lu(L);
            return chi * heat_flow(parts.hamiltonian, parts.unit_dissipators[site_index(Site::Cold)], rho).real();
        } catch (const Error&) {
            return -std::numeric_limits<double>::infinity();
        }
    }

    int evaluations{0};

private:
    const GeneratorParts& parts_for(double g) {
        if (!cached_g_ || *cached_g_ != g) {
            SystemParams p = p_;
            p.g = g;
            cached_g_.reset();
            parts_ = build_generator_parts(p, b_, ModelKind::CoarseGrained);
            cached_g_ = g;
        }
        return parts_;
    }

    SystemParams p_;
    BathParams b_;
    std::optional<double> cached_g_;
    GeneratorParts parts_;
};

} // namespace

CoolingOptimum optimize_cooling_power(const SystemParams& p, const BathParams& b, const GridSpec& g_grid,
                                      const GridSpec& chi_grid) {
    if (g_grid.scale != GridScale::Log || chi_grid.scale != GridScale::Log)
        throw Error(ErrorCode::InvalidArgument, "optimizer grids must be logarithmic");
    CoolingObjective objective(p, b);
    CoolingOptimum best;

    const auto gs = g_grid.points();
    const auto chis = chi_grid.points();
    for (double g : gs) {
        for (double chi : chis) {
            const double v = objective(g, chi);
            if (v > best.P_c) best = CoolingOptimum{.g = g, .chi = chi, .P_c = v};
        }
    }
    best.coarse_best = best.P_c;

    const double lg_min = std::log(g_grid.min), lg_max = std::log(g_grid.max);
    const double lc_min = std::log(chi_grid.min), lc_max = std::log(chi_grid.max);
    double half_g = (lg_max - lg_min) / (g_grid.count - 1);
    double half_c = (lc_max - lc_min) / (chi_grid.count - 1);
    for (int round = 0; round < 3; ++round) {
        const double lg0 = std::log(best.g), lc0 = std::log(best.chi);
        CoolingOptimum incumbent = best;
        for (int i = -2; i <= 2; ++i) {
            const double g = std::exp(std::clamp(lg0 + 0.5 * i * half_g, lg_min, lg_max));
            for (int j = -2; j <= 2; ++j) {
                if (i == 0 && j == 0) continue;
                const double chi = std::exp(std::clamp(lc0 + 0.5 * j * half_c, lc_min, lc_max));
                const double v = objective(g, chi);
                if (v > incumbent.P_c) {
                    incumbent.g = g;
                    incumbent.chi = chi;
                    incumbent.P_c = v;
                }
            }
        }
        best = incumbent;
        half_g *= 0.5;
        half_c *= 0.5;
    }
    best.evaluations = objective.evaluations;
    return best;
}

std::vector<RandomOptRow> random_temperature_optimization(const ExperimentConfig& cfg, const RandomOptOptions& opt) {
    if (opt.samples < 1) throw Error(ErrorCode::Config, "samples per panel must be positive");
    const GridSpec& g_grid = cfg.grid("g");
    const GridSpec& chi_grid = cfg.grid("chi");

    std::vector<RandomOptRow> rows(opt.panels.size() * static_cast<std::size_t>(opt.samples));
    parallel_for(rows.size(), [&](std::size_t i) {
        const std::size_t panel = i / static_cast<std::size_t>(opt.samples);
        const std::size_t sample = i % static_cast<std::size_t>(opt.samples);
        RandomOptRow& row = rows[i];
        row.panel = static_cast<int>(panel);

        SystemParams p = cfg.system;
        p.coupling = CouplingKind::XXX;
        p.omega_w = opt.panels[panel] * p.omega_c;
        if (opt.resonant) p.omega_h = p.omega_c + p.omega_w;
        row.omega_w = p.omega_w;
        try {
            const auto u = sample_uniforms(cfg.seed, panel, sample);
            const Temperatures t = SampleLaw{p.omega_h, p.omega_c, p.omega_w}.draw(u[0], u[1], u[2]);
            row.T_c = t.T_c;
            row.T_h = t.T_h;
            row.T_w = t.T_w;

            BathParams b = cfg.baths;
            b.temperature = {t.T_h, t.T_c, t.T_w};
            const CoolingOptimum best = optimize_cooling_power(p, b, g_grid, chi_grid);
            if (!std::isfinite(best.P_c)) throw Error(ErrorCode::NullSpaceDegenerate, "no valid grid point");
            row.g_opt = best.g;
            row.chi_opt = best.chi;
            b.chi = best.chi;
            p.g = best.g;
            row.kappa_eff_opt = kappa_eff(p, b);
            row.P_c_max = solve_powers(build_liouvillian(p, b, ModelKind::CoarseGrained)).powers.cold;
            row.cooling = row.P_c_max > 0.0;
        } catch (const std::exception& e) {
            row.g_opt = row.chi_opt = row.kappa_eff_opt = row.P_c_max = kNaN;
            row.cooling = false;
            row.status = status_of(e);
        }
    });
    return rows;
}

CsvTable random_opt_table(const std::vector<RandomOptRow>& rows) {
    CsvTable t({"panel", "omega_w", "T_c", "T_h", "T_w", "g_opt", "chi_opt", "kappa_eff_opt", "P_c_max", "cooling",
                "status"});
    for (const auto& r : rows)
        t.add_row({std::to_string(r.panel), format_number(r.omega_w), format_number(r.T_c), format_number(r.T_h),
                   format_number(r.T_w), format_number(r.g_opt), format_number(r.chi_opt),
                   format_number(r.kappa_eff_opt), format_number(r.P_c_max), bool_cell(r.cooling), r.status});
    return t;
}

// --- entropy scan ---------------------------------------------------------------------------

std::vector<EntropyRow> entropy_scan(const ExperimentConfig& cfg) {
    const auto gs = cfg.grid("g").points();
    std::vector<EntropyRow> rows;
    for (ModelKind m : cfg.models)
        for (double g : gs) rows.push_back(EntropyRow{.g = g, .model = m});
    std::stable_sort(rows.begin(), rows.end(),
                     [](const EntropyRow& a, const EntropyRow& b) { return std::tuple(a.model, a.g) < std::tuple(b.model, b.g); });

    parallel_for(rows.size(), [&](std::size_t i) {
        EntropyRow& row = rows[i];
        SystemParams p = cfg.system;
        p.g = row.g;
        p.coupling = cfg.hamiltonians.front();
        try {
            const PointPowers pp = solve_powers(build_liouvillian(p, cfg.baths, row.model));
            row.entropy_rate = entropy_rate(pp.powers, cfg.baths.temperature);
            row.diagnostics = pp.diagnostics;
        } catch (const std::exception& e) {
            row.entropy_rate = kNaN;
            row.status = status_of(e);
        }
    });
    return rows;
}

CsvTable entropy_scan_table(const std::vector<EntropyRow>& rows) {
    CsvTable t({"g", "model", "entropy_rate", "status"});
    for (const auto& r : rows)
        t.add_row({format_number(r.g), std::string(to_string(r.model)), format_number(r.entropy_rate), r.status});
    return t;
}

// --- single point and trajectory ------------------------------------------------------------

std::string performance_record_text(const PerformanceRecord& rec) {
    std::string out;
    auto line = [&out](const std::string& k, double v) { out += k + " = " + format_number(v) + "\n"; };
    line("P_h", rec.powers.hot);
    line("P_c", rec.powers.cold);
    line("P_w", rec.powers.work);
    line("power_balance", rec.powers.sum());
    line("eta", rec.eta);
    line("eta_opt", rec.eta_opt);
    line("entropy_rate", rec.entropy_rate);
    line("kappa_eff", rec.kappa_eff);
    line("T_v", rec.T_v);
    out += std::string("cooling = ") + (rec.cooling ? "1" : "0") + "\n";
    line("negativity_h_cw", rec.negativity_h_cw);
    line("negativity_c_hw", rec.negativity_c_hw);
    line("coherence_100_011", rec.coherence_100_011);
    line("residual", rec.residual);
    line("min_eigenvalue", rec.min_eigenvalue);
    return out;
}

std::vector<TrajectoryRow> evolve_trajectory(const ExperimentConfig& cfg) {
    SystemParams p = cfg.system;
    p.coupling = cfg.hamiltonians.front();
    const Liouvillian L = build_liouvillian(p, cfg.baths, cfg.models.front());
    const auto times = cfg.grid("t").points();
    const DensityMatrix rho0 = thermal_qubit_product(p, cfg.baths.temperature);
    const auto states = evolve(L, rho0, times);

    std::vector<TrajectoryRow> rows;
    rows.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        rows.push_back({times[k], heat_flow(L.hamiltonian, L.dissipators[site_index(Site::Cold)], states[k]).real(),
                        states[k].trace(), states[k].min_eigenvalue()});
    }
    return rows;
}

CsvTable trajectory_table(const std::vector<TrajectoryRow>& rows) {
    CsvTable t({"t", "P_c_instantaneous", "trace", "min_eigenvalue"});
    for (const auto& r : rows)
        t.add_row({format_number(r.t), format_number(r.P_c_instantaneous), format_number(r.trace),
                   format_number(r.min_eigenvalue)});
    return t;
}

} // namespace qar
