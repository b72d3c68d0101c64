// dynamics.hpp — Generators of the coarse-grained, local and global master equations

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qar/baths.hpp"
#include "qar/model.hpp"

namespace qar {

// Superoperators act on column-stacked density matrices: vec(A X B) = (B^T (x) A) vec(X).
using SuperOp = Eigen::MatrixXcd;
inline constexpr int kSuperDim = kDim * kDim;

enum class ModelKind { CoarseGrained, Local, Global };
inline constexpr std::array<ModelKind, 3> kModelKinds{ModelKind::CoarseGrained, ModelKind::Local, ModelKind::Global};
std::string_view to_string(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view s);

struct DensityMatrix {
    Mat8 value = Mat8::Zero();

    double trace() const { return value.trace().real(); }
    double hermiticity_error() const { return (value - value.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
    // Hermitian to 1e-12, unit trace to 1e-10, no eigenvalue below -1e-8.
    void validate() const;
};

DensityMatrix thermal_qubit_product(const SystemParams& p, const std::array<double, 3>& temperatures);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

Eigen::VectorXcd vectorize(const Mat8& m);
Mat8 unvectorize(const Eigen::VectorXcd& v);

SuperOp kron(const Mat8& a, const Mat8& b);
SuperOp coherent_superoperator(const Mat8& H);
// sum_mn gamma_mn [L_m . L_n^dag - 1/2 {L_n^dag L_m, .}] with operators in the product basis.
SuperOp lindblad_superoperator(std::span<const Mat8> ops, const Eigen::MatrixXcd& gamma);

SuperOp local_dissipator(Site site, double omega, double T, double chi);
SuperOp build_dissipator(const BathChannel& channel, ModelKind kind);

struct Liouvillian {
    SuperOp matrix;
    std::array<SuperOp, 3> dissipators; // per bath, indexed by site
    Mat8 hamiltonian = Mat8::Zero();
    ModelKind kind{ModelKind::CoarseGrained};
    CouplingKind hamiltonian_kind{CouplingKind::XXX};
    SystemParams system;
    BathParams baths;

    // Left trace annihilation: max_j |sum_i L(ii, j)|.
    double trace_defect() const;
};

// Generator split as coherent + chi * unit_dissipators, for sweeps over chi at fixed g.
struct GeneratorParts {
    SuperOp coherent;
    std::array<SuperOp, 3> unit_dissipators;
    Mat8 hamiltonian = Mat8::Zero();
};
GeneratorParts build_generator_parts(const SystemParams& p, const BathParams& b, ModelKind kind);

// chi is taken from `b`.
Liouvillian assemble_liouvillian(const GeneratorParts& parts, const SystemParams& p, const BathParams& b,
                                 ModelKind kind);
Liouvillian build_liouvillian(const SystemParams& p, const BathParams& b, ModelKind kind);

struct SteadyStateResult {
    DensityMatrix rho_inf;
    double residual{0.0};          // ||L vec(rho_inf)||_2
    double spectral_gap_hint{0.0}; // sigma_{n-1} / sigma_n
    double min_eigenvalue{0.0};
    double generator_norm{0.0};    // largest singular value
    double smallest_singular{0.0};
};

SteadyStateResult steady_state(const Liouvillian& L);

// Bordered LU solve (trace row replaces the first equation). No uniqueness diagnostics; meant for
// optimizer inner loops whose results are confirmed with steady_state().
DensityMatrix steady_state_lu(const SuperOp& generator);

// Fixed-step RK4 from t = 0; returns the states at each time in `t_grid`.
std::vector<DensityMatrix> evolve(const Liouvillian& L, const DensityMatrix& rho0, std::span<const double> t_grid);

} // namespace qar
