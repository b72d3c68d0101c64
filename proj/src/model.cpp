// model.cpp — Three-qubit operators, system Hamiltonians and their eigensystems

#include "qar/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qar/error.hpp"

namespace qar {

namespace {

using Mat2 = Eigen::Matrix<cplx, 2, 2>;

Mat2 single_qubit(PauliAxis axis) {
    Mat2 m = Mat2::Zero();
    switch (axis) {
    case PauliAxis::Plus: m(1, 0) = 1.0; break;
    case PauliAxis::Minus: m(0, 1) = 1.0; break;
    case PauliAxis::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case PauliAxis::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

// One two-dimensional block of the XXX Hamiltonian: |hi> and |lo> differ by flipping all three bits.
struct Block {
    int hi;
    int lo;
    double omega; // the frequency entering sqrt(g^2 + omega^2) in the resonant closed form
};

std::array<Block, 4> xxx_blocks(const SystemParams& p) {
    return {{{basis_index(1, 0, 0), basis_index(0, 1, 1), 0.0},
             {basis_index(1, 1, 0), basis_index(0, 0, 1), p.omega_c},
             {basis_index(1, 0, 1), basis_index(0, 1, 0), p.omega_w},
             {basis_index(1, 1, 1), basis_index(0, 0, 0), p.omega_h}}};
}

double occupation_energy(const SystemParams& p, int idx) {
    return p.omega_h * ((idx >> 2) & 1) + p.omega_c * ((idx >> 1) & 1) + p.omega_w * (idx & 1);
}

// Block eigenvalues of H_0 + g sx sx sx without assuming resonance; used only for labeling.
std::array<std::pair<double, EigenLabel>, kDim> xxx_pattern(const SystemParams& p) {
    std::array<std::pair<double, EigenLabel>, kDim> out;
    const auto blocks = xxx_blocks(p);
    for (int a = 0; a < 4; ++a) {
        const double e_hi = occupation_energy(p, blocks[a].hi);
        const double e_lo = occupation_energy(p, blocks[a].lo);
        const double mean = 0.5 * (e_hi + e_lo);
        const double half = 0.5 * (e_hi - e_lo);
        const double r = std::hypot(p.g, half);
        out[2 * a] = {mean - r, EigenLabel{a, -1}};
        out[2 * a + 1] = {mean + r, EigenLabel{a, +1}};
    }
    return out;
}

void fix_phase(Vec8& v) {
    double vmax = v.cwiseAbs().maxCoeff();
    int k = 0;
    for (int i = 0; i < kDim; ++i) {
        if (std::abs(v(i)) >= vmax * (1.0 - 1e-12)) {
            k = i;
            break;
        }
    }
    v *= std::conj(v(k)) / std::abs(v(k));
}

} // namespace

std::string_view to_string(Site s) {
    switch (s) {
    case Site::Hot: return "h";
    case Site::Cold: return "c";
    case Site::Work: return "w";
    }
    return "?";
}

std::string_view to_string(CouplingKind k) { return k == CouplingKind::XXX ? "xxx" : "resonant"; }

std::optional<CouplingKind> parse_coupling_kind(std::string_view s) {
    if (s == "xxx" || s == "XXX") return CouplingKind::XXX;
    if (s == "resonant" || s == "res") return CouplingKind::Resonant;
    return std::nullopt;
}

double SystemParams::omega(Site s) const {
    switch (s) {
    case Site::Hot: return omega_h;
    case Site::Cold: return omega_c;
    case Site::Work: return omega_w;
    }
    return 0.0;
}

bool SystemParams::resonant_energies() const { return std::abs(omega_h - omega_c - omega_w) < 1e-12; }

void SystemParams::validate() const {
    if (!(omega_h > 0.0 && omega_c > 0.0 && omega_w > 0.0))
        throw Error(ErrorCode::InvalidArgument, "qubit frequencies must be strictly positive");
    if (!(g >= 0.0)) throw Error(ErrorCode::InvalidArgument, "coupling g must be non-negative");
}

std::string EigenLabel::str() const { return std::to_string(block) + (sign > 0 ? "+" : "-"); }

int Eigensystem::column(const EigenLabel& label) const {
    for (int i = 0; i < kDim; ++i)
        if (labels[i] == label) return i;
    throw Error(ErrorCode::InvalidArgument, "no eigenvector labelled " + label.str());
}

Vec8 Eigensystem::vector(const EigenLabel& label) const { return basis.col(column(label)); }

double Eigensystem::energy(const EigenLabel& label) const { return energies[column(label)]; }

Mat8 pauli(Site site, PauliAxis axis) {
    const Mat2 id = Mat2::Identity();
    std::array<Mat2, 3> factors{id, id, id};
    factors[site_index(site)] = single_qubit(axis);
    Mat8 out;
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            out(r, c) = factors[0]((r >> 2) & 1, (c >> 2) & 1) * factors[1]((r >> 1) & 1, (c >> 1) & 1) *
                        factors[2](r & 1, c & 1);
        }
    }
    return out;
}

Mat8 bare_hamiltonian(const SystemParams& p) {
    Mat8 h = Mat8::Zero();
    for (int i = 0; i < kDim; ++i) h(i, i) = occupation_energy(p, i);
    return h;
}

Mat8 build_hamiltonian(const SystemParams& p) {
    p.validate();
    Mat8 h = bare_hamiltonian(p);
    if (p.coupling == CouplingKind::XXX) {
        h += p.g * pauli(Site::Hot, PauliAxis::X) * pauli(Site::Cold, PauliAxis::X) * pauli(Site::Work, PauliAxis::X);
    } else {
        const Mat8 up = pauli(Site::Hot, PauliAxis::Plus) * pauli(Site::Cold, PauliAxis::Minus) *
                        pauli(Site::Work, PauliAxis::Minus);
        h += p.g * (up + up.adjoint());
    }
    return h;
}

double eigen_normalizer(double omega, double g, int sign) {
    if (!(g > 0.0)) throw Error(ErrorCode::InvalidArgument, "normalizer requires g > 0");
    const double r = std::hypot(g, omega);
    const double c = sign > 0 ? g / (omega + r) : -(omega + r) / g;
    return std::sqrt(1.0 + c * c);
}

Eigensystem analytic_eigensystem(const SystemParams& p) {
    p.validate();
    if (p.coupling != CouplingKind::XXX)
        throw Error(ErrorCode::InvalidArgument, "closed-form eigensystem exists only for the XXX coupling");
    if (!p.resonant_energies())
        throw Error(ErrorCode::InvalidArgument, "closed-form eigensystem requires omega_h = omega_c + omega_w");

    struct Entry {
        double energy;
        Vec8 vec;
        EigenLabel label;
    };
    std::vector<Entry> entries;
    const auto blocks = xxx_blocks(p);

    // Block 0 does not depend on g.
    {
        Vec8 plus = Vec8::Zero(), minus = Vec8::Zero();
        plus(blocks[0].hi) = plus(blocks[0].lo) = M_SQRT1_2;
        minus(blocks[0].hi) = M_SQRT1_2;
        minus(blocks[0].lo) = -M_SQRT1_2;
        entries.push_back({p.omega_h - p.g, minus, {0, -1}});
        entries.push_back({p.omega_h + p.g, plus, {0, +1}});
    }
    for (int a = 1; a < 4; ++a) {
        const double w = blocks[a].omega;
        const double r = std::hypot(p.g, w);
        Vec8 plus = Vec8::Zero(), minus = Vec8::Zero();
        if (p.g > 0.0) {
            // |hi> + c|lo> with c = (-w +- r)/g, scaled by N_a^{+-}.
            const double c_plus = p.g / (w + r); // rationalized (-w + r)/g
            const double c_minus = -(w + r) / p.g;
            const double n_plus = eigen_normalizer(w, p.g, +1);
            const double n_minus = eigen_normalizer(w, p.g, -1);
            plus(blocks[a].hi) = 1.0 / n_plus;
            plus(blocks[a].lo) = c_plus / n_plus;
            minus(blocks[a].hi) = 1.0 / n_minus;
            minus(blocks[a].lo) = c_minus / n_minus;
        } else {
            plus(blocks[a].hi) = 1.0;
            minus(blocks[a].lo) = -1.0;
        }
        entries.push_back({p.omega_h - r, minus, {a, -1}});
        entries.push_back({p.omega_h + r, plus, {a, +1}});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.energy < y.energy; });

    Eigensystem es;
    for (int i = 0; i < kDim; ++i) {
        es.energies[i] = entries[i].energy;
        es.basis.col(i) = entries[i].vec;
        es.labels[i] = entries[i].label;
    }
    return es;
}

Eigensystem numeric_eigensystem(const Mat8& H, const std::optional<SystemParams>& labeling) {
    Eigen::SelfAdjointEigenSolver<Mat8> solver(H);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::ResidualTooLarge, "eigensolver did not converge");

    Eigensystem es;
    for (int i = 0; i < kDim; ++i) {
        es.energies[i] = solver.eigenvalues()(i);
        Vec8 v = solver.eigenvectors().col(i);
        fix_phase(v);
        es.basis.col(i) = v;
    }

    Mat8 diag = Mat8::Zero();
    for (int i = 0; i < kDim; ++i) diag(i, i) = es.energies[i];
    const double scale = std::max(1.0, H.norm());
    const double residual = (H * es.basis - es.basis * diag).norm() / scale;
    if (residual > 1e-10)
        throw Error(ErrorCode::ResidualTooLarge, "eigenvalue residual " + std::to_string(residual));

    if (labeling && labeling->coupling == CouplingKind::XXX) {
        auto pattern = xxx_pattern(*labeling);
        std::stable_sort(pattern.begin(), pattern.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        for (int i = 0; i < kDim; ++i) es.labels[i] = pattern[i].second;
    } else {
        static constexpr std::array<EigenLabel, kDim> rank_order{
            {{3, -1}, {2, -1}, {1, -1}, {0, -1}, {0, +1}, {1, +1}, {2, +1}, {3, +1}}};
        es.labels = rank_order;
    }
    return es;
}

Eigensystem eigensystem(const SystemParams& p) { return numeric_eigensystem(build_hamiltonian(p), p); }

} // namespace qar
