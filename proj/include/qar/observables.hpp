// observables.hpp — Steady-state figures of merit of the refrigerator

#pragma once

#include <array>

#include "qar/baths.hpp"
#include "qar/dynamics.hpp"
#include "qar/model.hpp"

namespace qar {

// P_j > 0 means heat flows from bath j into the system.
struct HeatPowers {
    double hot{0.0};
    double cold{0.0};
    double work{0.0};

    double operator[](Site s) const { return s == Site::Hot ? hot : (s == Site::Cold ? cold : work); }
    double sum() const { return hot + cold + work; }
    double max_abs() const;
};

HeatPowers heat_powers(const Mat8& H, const std::array<SuperOp, 3>& dissipators, const DensityMatrix& rho);
// Powers at the stationary state of L. rho_inf is refined against the exact sum of the generator parts in
// extended precision first, so that the balance sum_j P_j = 0 holds well below double rounding of rho.
HeatPowers stationary_heat_powers(const Liouvillian& L, const DensityMatrix& rho_inf);
// tr(H D_j(rho)) for a single bath, without the imaginary-part check.
cplx heat_flow(const Mat8& H, const SuperOp& dissipator, const DensityMatrix& rho);

double efficiency(double P_c, double P_w);

struct OptimalEfficiency {
    double value{0.0};  // omega_c / omega_w
    double carnot{0.0}; // T_c / (T_h - T_c), infinite when T_h <= T_c
};
OptimalEfficiency eta_opt(const SystemParams& p, double T_h, double T_c);

double entropy_rate(const HeatPowers& powers, const std::array<double, 3>& temperatures);

double kappa_eff(const SystemParams& p, const BathParams& b);

struct VirtualTemperature {
    double value{0.0};
    bool cooling_predicted{false};
    bool inverted{false}; // negative virtual temperature, outside the weak-coupling cooling logic
};
VirtualTemperature virtual_temperature(const SystemParams& p, double T_h, double T_w, double T_c);

enum class Bipartition { H_CW, C_HW, W_HC };
double negativity(const DensityMatrix& rho, Bipartition cut);

double coherence_100_011(const DensityMatrix& rho);

struct PerformanceRecord {
    HeatPowers powers;
    double eta{0.0};
    double eta_opt{0.0};
    double entropy_rate{0.0};
    double kappa_eff{0.0};
    double T_v{0.0};
    bool cooling{false};
    double negativity_h_cw{0.0};
    double negativity_c_hw{0.0};
    double coherence_100_011{0.0};
    double residual{0.0};
    double min_eigenvalue{0.0};
    DensityMatrix rho_inf;
};

// Builds the generator, solves for the steady state and evaluates every observable.
PerformanceRecord evaluate_performance(const SystemParams& p, const BathParams& b, ModelKind kind);
PerformanceRecord evaluate_performance(const Liouvillian& L);

} // namespace qar
