// test_observables.cpp — Heat powers, efficiency, entropy and entanglement diagnostics

#include "doctest.h"

#include <cmath>
#include <random>

#include "qar/error.hpp"
#include "qar/observables.hpp"
#include "random_params.hpp"

using namespace qar;

namespace {

SystemParams ref_point(double g, CouplingKind k = CouplingKind::XXX) { return SystemParams{5.0, 1.0, 4.0, g, k}; }

BathParams equal_hot_work_baths() {
    BathParams b;
    b.temperature = {2.0, 1.0, 2.0};
    return b;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Config;
}

// Oracle: partial transpose on the hot qubit by explicit (x_h, rest) index arithmetic.
double negativity_h_oracle(const Mat8& rho) {
    Mat8 pt;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 4; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 4; ++b2) pt(4 * a + b, 4 * a2 + b2) = rho(4 * a2 + b, 4 * a + b2);
    Eigen::SelfAdjointEigenSolver<Mat8> s(pt);
    return (s.eigenvalues().cwiseAbs().sum() - s.eigenvalues().sum()) / 2.0;
}

DensityMatrix pure(const Vec8& v) { return DensityMatrix{v * v.adjoint() / v.squaredNorm()}; }

} // namespace

TEST_CASE("heat powers vanish in uncoupled equilibrium") {
    const PerformanceRecord r = evaluate_performance(ref_point(0.0), BathParams{}, ModelKind::Local);
    CHECK(r.powers.max_abs() <= 1e-14);
    CHECK(r.entropy_rate == doctest::Approx(0.0));
}

TEST_CASE("power balance at steady state") {
    for (ModelKind kind : kModelKinds)
        for (auto hk : {CouplingKind::XXX, CouplingKind::Resonant})
            for (double g : {1e-3, 1e-2, 0.1, 0.25, 0.5, 0.9}) {
                const PerformanceRecord r = evaluate_performance(ref_point(g, hk), BathParams{}, kind);
                CHECK(std::abs(r.powers.sum()) <= 1e-10 * r.powers.max_abs());
            }
}

TEST_CASE("cooling power peaks at strong coupling") {
    double best = 0.0, best_g = 0.0;
    for (int k = 0; k <= 30; ++k) {
        const double g = std::pow(10.0, -3.0 + 0.1 * k);
        const double pc = evaluate_performance(ref_point(g), BathParams{}, ModelKind::CoarseGrained).powers.cold;
        if (pc > best) best = pc, best_g = g;
    }
    CHECK(best_g >= 0.1);
}

TEST_CASE("efficiency and its optimum") {
    const OptimalEfficiency opt = eta_opt(ref_point(0.1), 2.0, 1.0);
    CHECK(opt.value == 0.25);
    CHECK(opt.carnot == 1.0);
    CHECK(opt.value <= opt.carnot);
    CHECK(std::isinf(eta_opt(ref_point(0.1), 1.0, 1.0).carnot));
    CHECK(efficiency(1.0, 4.0) == 0.25);
    CHECK(code_of([] { efficiency(1e-3, 1e-15); }) == ErrorCode::WorkFlowZero);

    const PerformanceRecord r = evaluate_performance(ref_point(1e-2), BathParams{}, ModelKind::CoarseGrained);
    REQUIRE(r.cooling);
    CHECK(std::abs(r.eta - 0.25) / 0.25 <= 0.05);
}

TEST_CASE("efficiency never exceeds its optimum while cooling") {
    std::mt19937_64 rng(11);
    int cooling_points = 0;
    for (int k = 0; k < 60; ++k) {
        const auto d = testing::draw_working_point(rng);
        // local heat currents are not thermodynamically consistent
        for (ModelKind kind : {ModelKind::CoarseGrained, ModelKind::Global}) {
            const PerformanceRecord r = evaluate_performance(d.system, d.baths, kind);
            if (!r.cooling) continue;
            ++cooling_points;
            CHECK(r.eta <= r.eta_opt * (1.0 + 1e-9));
        }
    }
    for (ModelKind kind : kModelKinds)
        for (double g : {1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0}) {
            const PerformanceRecord r = evaluate_performance(ref_point(g), BathParams{}, kind);
            if (!r.cooling) continue;
            ++cooling_points;
            CHECK(r.eta <= r.eta_opt * (1.0 + 1e-9));
        }
    CHECK(cooling_points > 20);
}

TEST_CASE("entropy production") {
    CHECK(entropy_rate(HeatPowers{}, {2.0, 1.0, 8.0}) == 0.0);
    CHECK(entropy_rate(HeatPowers{1.0, -0.5, -0.5}, {2.0, 1.0, 8.0}) == doctest::Approx(-0.5 + 0.5 + 0.0625));

    double local_min = 0.0;
    for (int k = 0; k <= 15; ++k) {
        const double g = std::pow(10.0, -3.0 + 0.2 * k);
        for (ModelKind kind : {ModelKind::CoarseGrained, ModelKind::Global})
            CHECK(evaluate_performance(ref_point(g), equal_hot_work_baths(), kind).entropy_rate >= -1e-10);
        local_min = std::min(local_min, evaluate_performance(ref_point(g), equal_hot_work_baths(), ModelKind::Local).entropy_rate);
    }
    CHECK(local_min < 0.0);
}

TEST_CASE("property: second law for coarse-grained and global models") {
    std::mt19937_64 rng(20181017);
    for (int k = 0; k < 200; ++k) {
        const auto d = testing::draw_working_point(rng);
        for (ModelKind kind : {ModelKind::CoarseGrained, ModelKind::Global}) {
            const PerformanceRecord r = evaluate_performance(d.system, d.baths, kind);
            CHECK(r.entropy_rate >= -1e-10);
            CHECK(std::abs(r.powers.sum()) <= 1e-10 * r.powers.max_abs());
        }
    }
}

TEST_CASE("effective decoherence rate") {
    const SystemParams p = ref_point(0.25);
    BathParams b;
    CHECK(kappa_eff(p, b) == doctest::Approx(0.040650268287285934).epsilon(1e-12));
    const double k1 = kappa_eff(p, b);
    b.chi *= 2.0;
    CHECK(kappa_eff(p, b) == 2.0 * k1);
    b.temperature = {1e-3, 1e-3, 1e-3};
    CHECK(kappa_eff(p, b) == doctest::Approx(b.chi * 10.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("virtual temperature") {
    const SystemParams p = ref_point(0.0);
    const VirtualTemperature v = virtual_temperature(p, 2.0, 8.0, 1.0);
    CHECK(v.value == doctest::Approx(0.5));
    CHECK(v.cooling_predicted);
    CHECK_FALSE(v.inverted);
    CHECK(virtual_temperature(p, 2.0, 1e12, 1.0).value == doctest::Approx(0.4));
    CHECK(code_of([&] { virtual_temperature(p, 2.5, 2.0, 1.0); }) == ErrorCode::VirtualDivergence);
    const VirtualTemperature inv = virtual_temperature(p, 5.0, 2.0, 1.0);
    CHECK(inv.inverted);
    CHECK_FALSE(inv.cooling_predicted);
    CHECK_FALSE(virtual_temperature(p, 2.0, 2.0, 1.0).cooling_predicted);
}

TEST_CASE("weak-coupling cooling matches the virtual-temperature predicate") {
    const int n = 20;
    const SystemParams p = ref_point(1e-3);
    std::vector<std::vector<int>> predicate(n, std::vector<int>(n)), computed(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            BathParams b;
            b.temperature = {1.03 + 1.17 * i / (n - 1.0), 1.0, 1.1 * std::pow(50.0 / 1.1, j / (n - 1.0))};
            predicate[i][j] = virtual_temperature(p, b.T(Site::Hot), b.T(Site::Work), 1.0).cooling_predicted;
            computed[i][j] = evaluate_performance(p, b, ModelKind::CoarseGrained).powers.cold > 0.0;
        }
    int mismatches = 0, band = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (predicate[i][j] == computed[i][j]) continue;
            ++mismatches;
            bool near_boundary = false;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, c = j + dj;
                    if (a >= 0 && a < n && c >= 0 && c < n && predicate[a][c] != predicate[i][j]) near_boundary = true;
                }
            if (near_boundary) ++band;
        }
    MESSAGE("predicate mismatches: " << mismatches << " (all within boundary band: " << band << ")");
    CHECK(mismatches == band);
}

TEST_CASE("negativity") {
    const Vec8 bell = [] {
        Vec8 v = Vec8::Zero();
        v(basis_index(0, 0, 0)) = v(basis_index(1, 1, 1)) = 1.0 / std::sqrt(2.0);
        return v;
    }();
    CHECK(negativity(pure(bell), Bipartition::H_CW) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(negativity(pure(bell), Bipartition::C_HW) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(negativity(pure(bell), Bipartition::W_HC) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    auto qubit = [&] {
        Eigen::Matrix2cd m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = cplx(n(rng), n(rng));
        Eigen::Matrix2cd r = m * m.adjoint();
        return Eigen::Matrix2cd(r / r.trace());
    };
    for (int k = 0; k < 20; ++k) {
        const Eigen::Matrix2cd a = qubit(), b = qubit(), c = qubit();
        Mat8 rho;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                rho(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
        for (auto cut : {Bipartition::H_CW, Bipartition::C_HW, Bipartition::W_HC})
            CHECK(negativity(DensityMatrix{rho}, cut) <= 1e-12);
    }
    for (int k = 0; k < 20; ++k) {
        Vec8 v;
        for (int i = 0; i < 8; ++i) v(i) = cplx(n(rng), n(rng));
        const DensityMatrix rho = pure(v);
        CHECK(negativity(rho, Bipartition::H_CW) == doctest::Approx(negativity_h_oracle(rho.value)).epsilon(1e-10));
    }
}

TEST_CASE("no steady-state entanglement at the working temperatures") {
    std::vector<std::pair<SystemParams, BathParams>> sets;
    for (double g : {1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0}) sets.emplace_back(ref_point(g), BathParams{});
    for (double g : {1e-2, 0.1, 0.25, 1.0})
        for (double chi : {1e-3, 1e-2, 0.1}) {
            BathParams b;
            b.chi = chi;
            sets.emplace_back(ref_point(g), b);
        }
    for (double g : {0.1, 0.3})
        for (double th : {1.2, 1.6, 2.0})
            for (double tw : {2.0, 8.0, 40.0}) {
                BathParams b;
                b.temperature = {th, 1.0, tw};
                sets.emplace_back(ref_point(g), b);
            }
    for (const auto& [p, b] : sets) {
        const PerformanceRecord r = evaluate_performance(p, b, ModelKind::CoarseGrained);
        CHECK(r.negativity_h_cw <= 1e-8);
        CHECK(r.negativity_c_hw <= 1e-8);
        CHECK(r.min_eigenvalue >= -1e-8);
    }
}

TEST_CASE("strong coupling at low temperature entangles like the Gibbs state") {
    // Oracle: the Gibbs state of H_XXX at a common temperature, which the global model approaches when all
    // baths share that temperature.
    const SystemParams p = ref_point(0.7);
    const double T = 1.2;
    const Eigensystem es = numeric_eigensystem(build_hamiltonian(p), p);
    Mat8 gibbs = Mat8::Zero();
    for (int i = 0; i < 8; ++i) gibbs += std::exp(-(es.energies[i] - es.energies[0]) / T) * es.basis.col(i) * es.basis.col(i).adjoint();
    gibbs /= gibbs.trace();
    const double oracle = negativity_h_oracle(gibbs);
    CHECK(oracle > 1e-2);

    BathParams b;
    b.temperature = {T, T, T};
    const PerformanceRecord r = evaluate_performance(p, b, ModelKind::Global);
    CHECK(r.powers.max_abs() <= 1e-12);
    CHECK(r.negativity_h_cw == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("coherence between 100 and 011") {
    CHECK(coherence_100_011(thermal_qubit_product(ref_point(0.0), {2.0, 1.0, 8.0})) == 0.0);
    Vec8 v = Vec8::Zero();
    v(basis_index(1, 0, 0)) = v(basis_index(0, 1, 1)) = 1.0;
    CHECK(coherence_100_011(pure(v)) == doctest::Approx(0.5));
    CHECK(evaluate_performance(ref_point(0.25), BathParams{}, ModelKind::CoarseGrained).coherence_100_011 > 1e-6);
}
