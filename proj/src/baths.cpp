// baths.cpp — Spectral decomposition of the bath couplings and ohmic coarse-grained rate matrices

#include "qar/baths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qar/error.hpp"

namespace qar {

namespace {

// Matrix elements below this magnitude are numerical zeros of sigma^x in the eigenbasis.
constexpr double kAmplitudeFloor = 1e-13;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

struct Transition {
    int to;
    int from;
    double gap;
};

} // namespace

double BathParams::coarse_graining_time(const SystemParams& p) const {
    if (delta_t) return *delta_t;
    return 1.0 / std::min({p.omega_h, p.omega_c, p.omega_w});
}

void BathParams::validate() const {
    for (Site s : kSites) {
        if (!(T(s) > 0.0))
            throw Error(ErrorCode::InvalidArgument, "temperature T_" + std::string(to_string(s)) + " must be positive");
    }
    if (!(chi > 0.0)) throw Error(ErrorCode::InvalidArgument, "chi must be positive");
    if (delta_t && !(*delta_t > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta_t must be positive");
}

std::vector<std::string> BathParams::warnings() const {
    std::vector<std::string> out;
    if (chi >= 0.1) out.push_back("chi = " + std::to_string(chi) + " is outside the Born-Markov regime (chi < 0.1)");
    return out;
}

double bose_occupation(double omega, double T) {
    if (!(omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "bose_occupation requires omega > 0");
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "bose_occupation requires T > 0");
    return 1.0 / std::expm1(omega / T);
}

std::vector<JumpOperator> extract_jump_operators(const Eigensystem& es, Site site, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "grouping tolerance must be positive");

    const Mat8 coupling = es.basis.adjoint() * pauli(site, PauliAxis::X) * es.basis;
    const double reference =
        std::accumulate(es.energies.begin(), es.energies.end(), 0.0) / static_cast<double>(kDim);
    const double abs_tol = tol * std::max(std::abs(reference), 1.0);

    std::vector<Transition> up;
    for (int a = 0; a < kDim; ++a) {
        for (int b = 0; b < kDim; ++b) {
            if (std::abs(coupling(a, b)) <= kAmplitudeFloor) continue;
            const double gap = es.energies[a] - es.energies[b];
            if (std::abs(gap) < abs_tol)
                throw Error(ErrorCode::ZeroFrequency, "coupling of site " + std::string(to_string(site)) +
                                                          " has a zero-frequency component");
            if (gap > 0.0) up.push_back({a, b, gap});
        }
    }
    std::sort(up.begin(), up.end(), [](const Transition& x, const Transition& y) { return x.gap > y.gap; });

    std::vector<std::vector<Transition>> classes;
    for (const auto& t : up) {
        if (classes.empty() || classes.back().back().gap - t.gap > abs_tol) classes.emplace_back();
        classes.back().push_back(t);
    }

    std::vector<JumpOperator> ops;
    for (const auto& cls : classes) {
        const double span = cls.front().gap - cls.back().gap;
        if (span > abs_tol)
            throw Error(ErrorCode::GroupingMismatch, "transition class spans " + std::to_string(span) +
                                                         " which exceeds the grouping tolerance");
        JumpOperator op;
        double sum = 0.0;
        for (const auto& t : cls) {
            op.matrix(t.to, t.from) = coupling(t.to, t.from);
            sum += t.gap;
        }
        op.frequency = sum / static_cast<double>(cls.size());
        op.index = static_cast<int>(ops.size()) + 1;
        ops.push_back(std::move(op));
    }
    const std::size_t n_up = ops.size();
    for (std::size_t k = 0; k < n_up; ++k) {
        JumpOperator down;
        down.frequency = -ops[k].frequency;
        down.matrix = ops[k].matrix.adjoint();
        down.index = -ops[k].index;
        ops.push_back(std::move(down));
    }
    return ops;
}

Eigen::MatrixXcd rate_matrix(std::span<const JumpOperator> ops, double T, double chi, double delta_t) {
    const auto n = static_cast<Eigen::Index>(ops.size());
    Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = m; k < n; ++k) {
            const double om = ops[m].frequency;
            const double ok = ops[k].frequency;
            if ((om > 0.0) != (ok > 0.0)) continue;
            const double nu = 0.5 * (om + ok);
            if (nu == 0.0) continue;
            const double diff = om - ok;
            const double heaviside = nu < 0.0 ? 1.0 : 0.0;
            const double magnitude = chi * std::abs(nu) * (bose_occupation(std::abs(nu), T) + heaviside);
            const double x = 0.5 * diff * delta_t;
            const cplx value = magnitude * sinc(x) * std::polar(1.0, x);
            gamma(m, k) = value;
            gamma(k, m) = std::conj(value);
        }
    }
    return gamma;
}

RateSpectrum rate_matrix_spectrum_report(const Eigen::MatrixXcd& gamma) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gamma, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

BathChannel build_channel(const Eigensystem& es, const SystemParams& p, const BathParams& b, Site site,
                          double tol) {
    BathChannel ch;
    ch.site = site;
    ch.bare_frequency = p.omega(site);
    ch.temperature = b.T(site);
    ch.chi = b.chi;
    ch.delta_t = b.coarse_graining_time(p);
    ch.frame = es.basis;
    ch.jumps = extract_jump_operators(es, site, tol);
    ch.gamma = rate_matrix(ch.jumps, ch.temperature, ch.chi, ch.delta_t);
    return ch;
}

} // namespace qar
