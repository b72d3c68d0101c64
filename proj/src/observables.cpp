// observables.cpp — Steady-state figures of merit of the refrigerator

#include "qar/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qar/error.hpp"

namespace qar {

double HeatPowers::max_abs() const { return std::max({std::abs(hot), std::abs(cold), std::abs(work)}); }

cplx heat_flow(const Mat8& H, const SuperOp& dissipator, const DensityMatrix& rho) {
    const Mat8 d_rho = unvectorize(dissipator * vectorize(rho.value));
    return (H * d_rho).trace();
}

HeatPowers heat_powers(const Mat8& H, const std::array<SuperOp, 3>& dissipators, const DensityMatrix& rho) {
    std::array<double, 3> p{};
    for (int j = 0; j < 3; ++j) {
        const cplx v = heat_flow(H, dissipators[j], rho);
        if (std::abs(v.imag()) > 1e-10)
            throw Error(ErrorCode::ImaginaryLeak, "heat power has imaginary part " + std::to_string(v.imag()));
        p[j] = v.real();
    }
    return {p[0], p[1], p[2]};
}

namespace {

using xcplx = std::complex<long double>;
using XVec = Eigen::Matrix<xcplx, Eigen::Dynamic, 1>;

XVec times(const SuperOp& A, const XVec& x) {
    XVec y = XVec::Zero(x.size());
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
        const xcplx xc = x(c);
        for (Eigen::Index r = 0; r < A.rows(); ++r) y(r) += xcplx(A(r, c)) * xc;
    }
    return y;
}

xcplx trace_with(const Mat8& H, const XVec& vec_x) {
    xcplx t = 0.0L;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) t += xcplx(H(b, a)) * vec_x(b * kDim + a);
    return t;
}

} // namespace

HeatPowers stationary_heat_powers(const Liouvillian& L, const DensityMatrix& rho_inf) {
    const SuperOp coherent = coherent_superoperator(L.hamiltonian);
    SuperOp bordered = L.matrix;
    bordered.row(0).setZero();
    for (int i = 0; i < kDim; ++i) bordered(0, i * kDim + i) = 1.0;
    const Eigen::PartialPivLU<SuperOp> lu(bordered);

    XVec x = vectorize(rho_inf.value).cast<xcplx>();
    for (int iter = 0; iter < 3; ++iter) {
        XVec r = times(coherent, x);
        for (const SuperOp& d : L.dissipators) r += times(d, x);
        r = -r;
        xcplx tr = 0.0L;
        for (int i = 0; i < kDim; ++i) tr += x(i * kDim + i);
        r(0) = 1.0L - tr;
        const Eigen::VectorXcd step = lu.solve(r.cast<cplx>());
        x += step.cast<xcplx>();
    }

    std::array<double, 3> p{};
    for (int j = 0; j < 3; ++j) {
        const xcplx v = trace_with(L.hamiltonian, times(L.dissipators[j], x));
        if (std::abs(v.imag()) > 1e-10L)
            throw Error(ErrorCode::ImaginaryLeak,
                        "heat power has imaginary part " + std::to_string(static_cast<double>(v.imag())));
        p[j] = static_cast<double>(v.real());
    }
    return {p[0], p[1], p[2]};
}

double efficiency(double P_c, double P_w) {
    if (std::abs(P_w) < 1e-14) throw Error(ErrorCode::WorkFlowZero, "work-bath heat flow vanishes");
    return P_c / P_w;
}

OptimalEfficiency eta_opt(const SystemParams& p, double T_h, double T_c) {
    const double carnot = T_h > T_c ? T_c / (T_h - T_c) : std::numeric_limits<double>::infinity();
    return {p.omega_c / p.omega_w, carnot};
}

double entropy_rate(const HeatPowers& powers, const std::array<double, 3>& temperatures) {
    double s = 0.0;
    for (Site site : kSites) s -= powers[site] / temperatures[site_index(site)];
    return s;
}

double kappa_eff(const SystemParams& p, const BathParams& b) {
    double sum = 0.0;
    for (Site s : kSites) {
        const double w = p.omega(s);
        sum += b.chi * w * (2.0 * bose_occupation(w, b.T(s)) + 1.0) / 2.0;
    }
    return sum / 3.0;
}

VirtualTemperature virtual_temperature(const SystemParams& p, double T_h, double T_w, double T_c) {
    const double denom = p.omega_h / T_h - p.omega_w / T_w;
    if (std::abs(denom) < 1e-12)
        throw Error(ErrorCode::VirtualDivergence, "omega_h/T_h equals omega_w/T_w");
    VirtualTemperature out;
    out.value = p.omega_c / denom;
    out.inverted = out.value < 0.0;
    out.cooling_predicted = !out.inverted && out.value < T_c;
    return out;
}

double negativity(const DensityMatrix& rho, Bipartition cut) {
    const int bit = cut == Bipartition::H_CW ? 2 : (cut == Bipartition::C_HW ? 1 : 0);
    const int mask = 1 << bit;
    Mat8 pt;
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            // Swap the singleton's row and column bits.
            const int r2 = (r & ~mask) | (c & mask);
            const int c2 = (c & ~mask) | (r & mask);
            pt(r2, c2) = rho.value(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat8> solver(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int i = 0; i < kDim; ++i) neg += std::max(0.0, -solver.eigenvalues()(i));
    return neg;
}

double coherence_100_011(const DensityMatrix& rho) {
    return std::abs(rho.value(basis_index(1, 0, 0), basis_index(0, 1, 1)));
}

PerformanceRecord evaluate_performance(const SystemParams& p, const BathParams& b, ModelKind kind) {
    return evaluate_performance(build_liouvillian(p, b, kind));
}

PerformanceRecord evaluate_performance(const Liouvillian& L) {
    const SystemParams& p = L.system;
    const BathParams& b = L.baths;
    const SteadyStateResult ss = steady_state(L);

    PerformanceRecord rec;
    rec.rho_inf = ss.rho_inf;
    rec.residual = ss.residual;
    rec.min_eigenvalue = ss.min_eigenvalue;
    rec.powers = stationary_heat_powers(L, ss.rho_inf);
    rec.eta = std::abs(rec.powers.work) < 1e-14 ? std::numeric_limits<double>::quiet_NaN()
                                                : efficiency(rec.powers.cold, rec.powers.work);
    rec.eta_opt = eta_opt(p, b.T(Site::Hot), b.T(Site::Cold)).value;
    rec.entropy_rate = entropy_rate(rec.powers, b.temperature);
    rec.kappa_eff = kappa_eff(p, b);
    const double denom = p.omega_h / b.T(Site::Hot) - p.omega_w / b.T(Site::Work);
    rec.T_v = std::abs(denom) < 1e-12 ? std::numeric_limits<double>::quiet_NaN()
                                      : virtual_temperature(p, b.T(Site::Hot), b.T(Site::Work), b.T(Site::Cold)).value;
    rec.cooling = rec.powers.cold > 0.0;
    rec.negativity_h_cw = negativity(ss.rho_inf, Bipartition::H_CW);
    rec.negativity_c_hw = negativity(ss.rho_inf, Bipartition::C_HW);
    rec.coherence_100_011 = coherence_100_011(ss.rho_inf);
    return rec;
}

} // namespace qar
