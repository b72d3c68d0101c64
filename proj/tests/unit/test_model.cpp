// test_model.cpp — Hamiltonians and eigensystems

#include "doctest.h"

#include <cmath>
#include <random>

#include "qar/error.hpp"
#include "qar/model.hpp"

using namespace qar;

namespace {

Vec8 ket(int x_h, int y_c, int z_w) {
    Vec8 v = Vec8::Zero();
    v(basis_index(x_h, y_c, z_w)) = 1.0;
    return v;
}

// Oracle: energy of a product state by counting excitations.
double occupation_oracle(const SystemParams& p, int x_h, int y_c, int z_w) {
    return x_h * p.omega_h + y_c * p.omega_c + z_w * p.omega_w;
}

SystemParams ref_point(double g, CouplingKind k = CouplingKind::XXX) { return SystemParams{5.0, 1.0, 4.0, g, k}; }

} // namespace

TEST_CASE("pauli embedding conventions") {
    CHECK((pauli(Site::Hot, PauliAxis::Z) * ket(1, 0, 0) + ket(1, 0, 0)).norm() == doctest::Approx(0.0));
    CHECK((pauli(Site::Hot, PauliAxis::Plus) * ket(0, 1, 1) - ket(1, 1, 1)).norm() == doctest::Approx(0.0));
    CHECK((pauli(Site::Work, PauliAxis::Minus) * ket(0, 0, 1) - ket(0, 0, 0)).norm() == doctest::Approx(0.0));

    const Mat8 xc = pauli(Site::Cold, PauliAxis::X);
    CHECK((xc * xc - Mat8::Identity()).norm() < 1e-15);

    const Mat8 xh = pauli(Site::Hot, PauliAxis::X);
    const Mat8 xw = pauli(Site::Work, PauliAxis::X);
    CHECK((xh * xw - xw * xh).norm() < 1e-15);
}

TEST_CASE("bare Hamiltonian matches occupation enumeration") {
    for (auto kind : {CouplingKind::XXX, CouplingKind::Resonant}) {
        const Mat8 H = build_hamiltonian(ref_point(0.0, kind));
        const SystemParams p = ref_point(0.0);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) {
                    const int i = basis_index(x, y, z);
                    CHECK(H(i, i).real() == doctest::Approx(occupation_oracle(p, x, y, z)));
                }
        CHECK((H - Mat8(H.diagonal().asDiagonal())).norm() == 0.0);
    }
    const std::array<double, 8> expected{0, 4, 1, 5, 5, 9, 6, 10};
    const Mat8 H = build_hamiltonian(ref_point(0.0));
    for (int i = 0; i < 8; ++i) CHECK(H(i, i).real() == expected[i]);
}

TEST_CASE("interaction terms") {
    const Mat8 hx = build_hamiltonian(ref_point(0.25));
    CHECK(hx(basis_index(0, 0, 0), basis_index(1, 1, 1)).real() == doctest::Approx(0.25));
    CHECK((hx - hx.adjoint()).norm() < 1e-14);

    const Mat8 hr = build_hamiltonian(ref_point(0.25, CouplingKind::Resonant));
    CHECK(std::abs(hr(basis_index(0, 0, 0), basis_index(1, 1, 1))) == 0.0);
    CHECK(hr(basis_index(1, 0, 0), basis_index(0, 1, 1)).real() == doctest::Approx(0.25));
    CHECK((hr - hr.adjoint()).norm() < 1e-14);
}

TEST_CASE("analytic eigensystem reproduces the closed-form spectrum") {
    const Eigensystem es = analytic_eigensystem(ref_point(0.25));
    const std::array<std::pair<EigenLabel, double>, 8> expected{{
        {{0, -1}, 4.75}, {{0, +1}, 5.25},
        {{1, -1}, 3.969224}, {{1, +1}, 6.030776},
        {{2, -1}, 0.992195}, {{2, +1}, 9.007805},
        {{3, -1}, -0.006246}, {{3, +1}, 10.006246},
    }};
    for (const auto& [label, e] : expected) CHECK(es.energy(label) == doctest::Approx(e).epsilon(1e-6));

    // Oracle: numeric diagonalization.
    const Eigensystem num = numeric_eigensystem(build_hamiltonian(ref_point(0.25)), ref_point(0.25));
    for (const auto& [label, e] : expected) {
        CHECK(std::abs(num.energy(label) - es.energy(label)) <= 1e-10);
        CHECK(std::abs(num.vector(label).dot(es.vector(label))) >= 1.0 - 1e-10);
    }
}

TEST_CASE("analytic eigensystem invariants") {
    for (double g : {1e-3, 0.05, 0.25, 1.0}) {
        const SystemParams p = ref_point(g);
        const Eigensystem es = analytic_eigensystem(p);
        const Mat8 H = build_hamiltonian(p);
        Mat8 diag = Mat8::Zero();
        for (int i = 0; i < 8; ++i) diag(i, i) = es.energies[i];
        CHECK((H * es.basis - es.basis * diag).norm() / H.norm() <= 1e-12);
        CHECK((es.basis.adjoint() * es.basis - Mat8::Identity()).norm() <= 1e-12);
        double total = 0.0;
        for (int a = 0; a < 4; ++a) {
            CHECK(std::abs(es.energy({a, +1}) + es.energy({a, -1}) - 2.0 * p.omega_h) <= 1e-12);
            total += es.energy({a, +1}) + es.energy({a, -1});
        }
        CHECK(std::abs(total - 8.0 * p.omega_h) <= 1e-12);
    }
}

TEST_CASE("block-0 eigenvectors are independent of g") {
    const Vec8 plus = (ket(1, 0, 0) + ket(0, 1, 1)) / std::sqrt(2.0);
    const Vec8 minus = (ket(1, 0, 0) - ket(0, 1, 1)) / std::sqrt(2.0);
    for (double g : {1e-4, 0.25, 0.9}) {
        const Eigensystem es = analytic_eigensystem(ref_point(g));
        CHECK((es.vector({0, +1}) - plus).norm() < 1e-15);
        CHECK((es.vector({0, -1}) - minus).norm() < 1e-15);
    }
}

TEST_CASE("weak-coupling limit of the outer block") {
    for (double g : {1e-9, 0.0}) {
        const Eigensystem es = analytic_eigensystem(ref_point(g));
        CHECK((es.vector({3, +1}) - ket(1, 1, 1)).norm() < 1e-9);
        CHECK((es.vector({3, -1}) + ket(0, 0, 0)).norm() < 1e-9);
    }
}

TEST_CASE("normalizers match the closed-form coefficients") {
    const double g = 0.25, w = 5.0;
    const double c_plus = (-w + std::sqrt(g * g + w * w)) / g;
    const double c_minus = (-w - std::sqrt(g * g + w * w)) / g;
    CHECK(eigen_normalizer(w, g, +1) == doctest::Approx(std::sqrt(1 + c_plus * c_plus)).epsilon(1e-12));
    CHECK(eigen_normalizer(w, g, -1) == doctest::Approx(std::sqrt(1 + c_minus * c_minus)).epsilon(1e-12));
    CHECK_THROWS_AS(eigen_normalizer(w, 0.0, +1), Error);
}

TEST_CASE("analytic eigensystem rejects unsupported inputs") {
    CHECK_THROWS_AS(analytic_eigensystem(ref_point(0.25, CouplingKind::Resonant)), Error);
    CHECK_THROWS_AS(analytic_eigensystem(SystemParams{5.0, 1.0, 3.0, 0.25}), Error);
    CHECK_THROWS_AS(build_hamiltonian(SystemParams{5.0, -1.0, 4.0, 0.25}), Error);
    CHECK_THROWS_AS(build_hamiltonian(SystemParams{5.0, 1.0, 4.0, -0.1}), Error);
    CHECK(ref_point(0.1).resonant_energies());
    CHECK_FALSE(SystemParams{5.0, 1.0, 3.0}.resonant_energies());
}

TEST_CASE("numeric eigensystem edge cases") {
    SUBCASE("diagonal Hamiltonian gives permuted identity columns") {
        const Eigensystem es = numeric_eigensystem(build_hamiltonian(ref_point(0.0)));
        Mat8 abs_basis = es.basis.cwiseAbs().cast<cplx>();
        CHECK((abs_basis.real().colwise().sum().array() - 1.0).abs().maxCoeff() < 1e-15);
        CHECK((abs_basis.real().rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-15);
        CHECK((es.basis.cwiseAbs2().real() - es.basis.cwiseAbs().real()).norm() < 1e-15);
    }
    SUBCASE("spectrum symmetric about omega_h at strong coupling") {
        const Eigensystem es = numeric_eigensystem(build_hamiltonian(ref_point(1.0)), ref_point(1.0));
        for (int i = 0; i < 8; ++i) CHECK(std::abs(es.energies[i] + es.energies[7 - i] - 10.0) < 1e-12);
    }
    SUBCASE("largest component is real positive") {
        const Eigensystem es = numeric_eigensystem(build_hamiltonian(ref_point(0.4)), ref_point(0.4));
        for (int c = 0; c < 8; ++c) {
            Eigen::Index k;
            es.basis.col(c).cwiseAbs().maxCoeff(&k);
            CHECK(std::abs(es.basis(k, c).imag()) < 1e-15);
            CHECK(es.basis(k, c).real() > 0.0);
        }
    }
    SUBCASE("non-Hermitian input fails the residual check") {
        Mat8 h = build_hamiltonian(ref_point(0.25));
        h(0, 5) = 3.0;
        CHECK_THROWS_AS(numeric_eigensystem(h), Error);
    }
}

TEST_CASE("property: analytic and numeric eigensystems agree") {
    std::mt19937_64 rng(20181015);
    std::uniform_real_distribution<double> omega_c(0.5, 2.0), ratio(1.2, 8.0);
    for (double g : {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            SystemParams p;
            p.omega_c = omega_c(rng);
            p.omega_w = p.omega_c * ratio(rng);
            p.omega_h = p.omega_c + p.omega_w;
            p.g = g;
            const Eigensystem ana = analytic_eigensystem(p);
            const Eigensystem num = numeric_eigensystem(build_hamiltonian(p), p);
            for (int i = 0; i < 8; ++i) {
                const EigenLabel l = ana.labels[i];
                CHECK(std::abs(num.energy(l) - ana.energy(l)) <= 1e-10);
                CHECK(std::norm(num.vector(l).dot(ana.vector(l))) >= 1.0 - 1e-9);
            }
        }
    }
}

TEST_CASE("XXX spectrum reduces to the resonant one at weak coupling") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> omega_c(0.5, 2.0), ratio(1.2, 8.0);
    for (int trial = 0; trial < 20; ++trial) {
        SystemParams p;
        p.omega_c = omega_c(rng);
        p.omega_w = p.omega_c * ratio(rng);
        p.omega_h = p.omega_c + p.omega_w;
        const double wmin = std::min({p.omega_h, p.omega_c, p.omega_w});
        p.g = 1e-3 * wmin;
        const Eigensystem xxx = numeric_eigensystem(build_hamiltonian(p));
        p.coupling = CouplingKind::Resonant;
        const Eigensystem res = numeric_eigensystem(build_hamiltonian(p));
        for (int i = 0; i < 8; ++i) CHECK(std::abs(xxx.energies[i] - res.energies[i]) <= 10.0 * p.g * p.g / wmin);
    }
}
