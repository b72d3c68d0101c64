// dynamics.cpp — Generators of the coarse-grained, local and global master equations

#include "qar/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qar/error.hpp"

namespace qar {

std::string_view to_string(ModelKind k) {
    switch (k) {
    case ModelKind::CoarseGrained: return "coarse";
    case ModelKind::Local: return "local";
    case ModelKind::Global: return "global";
    }
    return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
    if (s == "coarse" || s == "coarse-grained") return ModelKind::CoarseGrained;
    if (s == "local") return ModelKind::Local;
    if (s == "global") return ModelKind::Global;
    return std::nullopt;
}

double DensityMatrix::min_eigenvalue() const {
    const Mat8 herm = 0.5 * (value + value.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat8> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

void DensityMatrix::validate() const {
    if (hermiticity_error() > 1e-12) throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
    if (std::abs(trace() - 1.0) > 1e-10) throw Error(ErrorCode::InvalidArgument, "density matrix trace is not 1");
    if (min_eigenvalue() < -1e-8) throw Error(ErrorCode::InvalidArgument, "density matrix is not positive");
}

DensityMatrix thermal_qubit_product(const SystemParams& p, const std::array<double, 3>& temperatures) {
    DensityMatrix rho;
    for (int i = 0; i < kDim; ++i) {
        double weight = 1.0;
        for (Site s : kSites) {
            const int bit = (i >> (2 - site_index(s))) & 1;
            const double boltz = std::exp(-p.omega(s) / temperatures[site_index(s)]);
            weight *= (bit ? boltz : 1.0) / (1.0 + boltz);
        }
        rho.value(i, i) = weight;
    }
    return rho;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const Mat8 diff = a.value - b.value;
    Eigen::SelfAdjointEigenSolver<Mat8> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Eigen::VectorXcd vectorize(const Mat8& m) {
    Eigen::VectorXcd v(kSuperDim);
    for (int c = 0; c < kDim; ++c)
        for (int r = 0; r < kDim; ++r) v(c * kDim + r) = m(r, c);
    return v;
}

Mat8 unvectorize(const Eigen::VectorXcd& v) {
    Mat8 m;
    for (int c = 0; c < kDim; ++c)
        for (int r = 0; r < kDim; ++r) m(r, c) = v(c * kDim + r);
    return m;
}

SuperOp kron(const Mat8& a, const Mat8& b) {
    SuperOp out(kSuperDim, kSuperDim);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) out.block(i * kDim, j * kDim, kDim, kDim) = a(i, j) * b;
    return out;
}

SuperOp coherent_superoperator(const Mat8& H) {
    const Mat8 id = Mat8::Identity();
    return cplx(0.0, -1.0) * (kron(id, H) - kron(H.transpose(), id));
}

SuperOp lindblad_superoperator(std::span<const Mat8> ops, const Eigen::MatrixXcd& gamma) {
    const auto n = static_cast<Eigen::Index>(ops.size());
    SuperOp out = SuperOp::Zero(kSuperDim, kSuperDim);
    if (n == 0) return out;

    // gamma = U diag(lambda) U^dag turns the double sum into sum_k lambda_k A_k . A_k^dag.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gamma);
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const Eigen::MatrixXcd& U = solver.eigenvectors();

    Mat8 anti = Mat8::Zero();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (lambda(k) == 0.0) continue;
        Mat8 a = Mat8::Zero();
        for (Eigen::Index m = 0; m < n; ++m) a += U(m, k) * ops[m];
        out += lambda(k) * kron(a.conjugate(), a);
        anti += lambda(k) * (a.adjoint() * a);
    }
    const Mat8 id = Mat8::Identity();
    out -= 0.5 * (kron(id, anti) + kron(anti.transpose(), id));
    return out;
}

SuperOp local_dissipator(Site site, double omega, double T, double chi) {
    const std::array<Mat8, 2> ops{pauli(site, PauliAxis::Minus), pauli(site, PauliAxis::Plus)};
    const double n = bose_occupation(omega, T);
    Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(2, 2);
    gamma(0, 0) = chi * omega * (n + 1.0);
    gamma(1, 1) = chi * omega * n;
    return lindblad_superoperator(ops, gamma);
}

SuperOp build_dissipator(const BathChannel& channel, ModelKind kind) {
    if (kind == ModelKind::Local)
        return local_dissipator(channel.site, channel.bare_frequency, channel.temperature, channel.chi);

    std::vector<Mat8> ops;
    ops.reserve(channel.jumps.size());
    for (std::size_t k = 0; k < channel.jumps.size(); ++k) ops.push_back(channel.lab_operator(k));
    if (kind == ModelKind::Global) {
        const Eigen::MatrixXcd diag = channel.gamma.diagonal().asDiagonal();
        return lindblad_superoperator(ops, diag);
    }
    return lindblad_superoperator(ops, channel.gamma);
}

double Liouvillian::trace_defect() const {
    double worst = 0.0;
    for (int j = 0; j < kSuperDim; ++j) {
        cplx s = 0.0;
        for (int i = 0; i < kDim; ++i) s += matrix(i * kDim + i, j);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

GeneratorParts build_generator_parts(const SystemParams& p, const BathParams& b, ModelKind kind) {
    p.validate();
    BathParams unit = b;
    unit.chi = 1.0;
    unit.validate();

    GeneratorParts parts;
    parts.hamiltonian = build_hamiltonian(p);
    parts.coherent = coherent_superoperator(parts.hamiltonian);
    if (kind == ModelKind::Local) {
        for (Site s : kSites)
            parts.unit_dissipators[site_index(s)] = local_dissipator(s, p.omega(s), unit.T(s), 1.0);
        return parts;
    }
    const Eigensystem es = numeric_eigensystem(parts.hamiltonian, p);
    for (Site s : kSites)
        parts.unit_dissipators[site_index(s)] = build_dissipator(build_channel(es, p, unit, s), kind);
    return parts;
}

Liouvillian assemble_liouvillian(const GeneratorParts& parts, const SystemParams& p, const BathParams& b,
                                 ModelKind kind) {
    if (!(b.chi >= 0.0)) throw Error(ErrorCode::InvalidArgument, "chi must be non-negative");
    Liouvillian L;
    L.kind = kind;
    L.hamiltonian_kind = p.coupling;
    L.system = p;
    L.baths = b;
    L.hamiltonian = parts.hamiltonian;
    L.matrix = parts.coherent;
    for (int j = 0; j < 3; ++j) {
        L.dissipators[j] = b.chi * parts.unit_dissipators[j];
        L.matrix += L.dissipators[j];
    }
    return L;
}

Liouvillian build_liouvillian(const SystemParams& p, const BathParams& b, ModelKind kind) {
    if (!(b.chi >= 0.0)) throw Error(ErrorCode::InvalidArgument, "chi must be non-negative");
    return assemble_liouvillian(build_generator_parts(p, b, kind), p, b, kind);
}

namespace {

DensityMatrix normalize_state(const Eigen::VectorXcd& v) {
    Mat8 rho = unvectorize(v);
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-8) throw Error(ErrorCode::TraceVanishing, "null vector has vanishing trace");
    rho /= tr; // removes the arbitrary global phase of the singular vector
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return DensityMatrix{rho};
}

} // namespace

SteadyStateResult steady_state(const Liouvillian& L) {
    if (!(L.baths.chi > 0.0)) throw Error(ErrorCode::InvalidArgument, "steady state requires chi > 0");

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(L.matrix, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smallest = sv(kSuperDim - 1);
    const double second = sv(kSuperDim - 2);

    SteadyStateResult out;
    out.generator_norm = sv(0);
    out.smallest_singular = smallest;
    // Singular values below the rounding floor are indistinguishable from each other.
    const double floor = std::numeric_limits<double>::epsilon() * sv(0);
    out.spectral_gap_hint = second / std::max(smallest, floor);
    if (out.spectral_gap_hint < 1e3)
        throw Error(ErrorCode::NullSpaceDegenerate,
                    "two smallest singular values are within 1e3 (ratio " + std::to_string(out.spectral_gap_hint) + ")");

    out.rho_inf = normalize_state(svd.matrixV().col(kSuperDim - 1));
    out.residual = (L.matrix * vectorize(out.rho_inf.value)).norm();
    if (out.residual > 1e-10 * out.generator_norm)
        throw Error(ErrorCode::ResidualTooLarge, "steady-state residual " + std::to_string(out.residual));
    out.min_eigenvalue = out.rho_inf.min_eigenvalue();
    return out;
}

DensityMatrix steady_state_lu(const SuperOp& generator) {
    SuperOp bordered = generator;
    bordered.row(0).setZero();
    for (int i = 0; i < kDim; ++i) bordered(0, i * kDim + i) = 1.0;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(kSuperDim);
    rhs(0) = 1.0;
    return normalize_state(bordered.partialPivLu().solve(rhs));
}

std::vector<DensityMatrix> evolve(const Liouvillian& L, const DensityMatrix& rho0, std::span<const double> t_grid) {
    if (t_grid.empty()) return {};
    if (t_grid.front() < 0.0) throw Error(ErrorCode::InvalidArgument, "time grid must start at t >= 0");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (t_grid[k] < t_grid[k - 1]) throw Error(ErrorCode::InvalidArgument, "time grid must be ascending");

    const double h_max = 2.0 * M_PI / (100.0 * L.system.omega_h);
    const double trace0 = rho0.trace();
    Eigen::VectorXcd y = vectorize(rho0.value);
    double t = 0.0;

    std::vector<DensityMatrix> out;
    out.reserve(t_grid.size());
    for (double target : t_grid) {
        const double span = target - t;
        const auto steps = static_cast<long>(std::ceil(span / h_max - 1e-12));
        if (steps > 0) {
            const double h = span / static_cast<double>(steps);
            for (long s = 0; s < steps; ++s) {
                const Eigen::VectorXcd k1 = L.matrix * y;
                const Eigen::VectorXcd k2 = L.matrix * (y + 0.5 * h * k1);
                const Eigen::VectorXcd k3 = L.matrix * (y + 0.5 * h * k2);
                const Eigen::VectorXcd k4 = L.matrix * (y + h * k3);
                y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        t = target;
        DensityMatrix rho{unvectorize(y)};
        const double drift = std::abs(rho.value.trace() - cplx(trace0, 0.0));
        if (drift > 1e-6 || rho.hermiticity_error() > 1e-6)
            throw Error(ErrorCode::StepRejected, "trace or hermiticity drift at t = " + std::to_string(target));
        out.push_back(std::move(rho));
    }
    return out;
}

} // namespace qar
