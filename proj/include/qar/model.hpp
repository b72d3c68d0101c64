// model.hpp — Three-qubit operators, system Hamiltonians and their eigensystems

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qar {

using cplx = std::complex<double>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;

inline constexpr int kDim = 8;

// Product basis |x_h y_c z_w> with the hot qubit as the most significant bit.
inline constexpr int basis_index(int x_h, int y_c, int z_w) { return 4 * x_h + 2 * y_c + z_w; }

enum class Site { Hot = 0, Cold = 1, Work = 2 };
inline constexpr std::array<Site, 3> kSites{Site::Hot, Site::Cold, Site::Work};
inline constexpr int site_index(Site s) { return static_cast<int>(s); }
std::string_view to_string(Site s);

enum class PauliAxis { X, Plus, Minus, Z };

enum class CouplingKind { XXX, Resonant };
std::string_view to_string(CouplingKind k);
std::optional<CouplingKind> parse_coupling_kind(std::string_view s);

// Frequencies in units of omega_c, so omega_c = 1 by convention.
struct SystemParams {
    double omega_h{5.0};
    double omega_c{1.0};
    double omega_w{4.0};
    double g{0.0};
    CouplingKind coupling{CouplingKind::XXX};

    double omega(Site s) const;
    bool resonant_energies() const;
    void validate() const;
};

// Tag of an eigenvector in the epsilon_{a,+-} naming of the XXX closed form.
struct EigenLabel {
    int block{0}; // a in 0..3
    int sign{+1}; // +1 or -1
    std::string str() const;
    friend bool operator==(const EigenLabel&, const EigenLabel&) = default;
};

struct Eigensystem {
    std::array<double, kDim> energies{};
    Mat8 basis = Mat8::Identity(); // columns are eigenvectors in the product basis
    std::array<EigenLabel, kDim> labels{};

    Vec8 vector(const EigenLabel& label) const;
    double energy(const EigenLabel& label) const;
    int column(const EigenLabel& label) const;
};

// Single-site operator embedded as h (x) c (x) w. Convention: sigma^+|0> = |1>, sigma^z|1> = -|1>.
Mat8 pauli(Site site, PauliAxis axis);

Mat8 bare_hamiltonian(const SystemParams& p);
Mat8 build_hamiltonian(const SystemParams& p);

// Normalizer N_a^{+-} of |hi> + c|lo>, c = (-omega +- sqrt(g^2 + omega^2)) / g. Requires g > 0.
double eigen_normalizer(double omega, double g, int sign);

// Closed-form eigensystem of H_0 + H_int for resonant energies; columns sorted by ascending energy.
Eigensystem analytic_eigensystem(const SystemParams& p);

// Dense diagonalization; labels follow the XXX pattern of `labeling` when given with the XXX
// kind, otherwise ascending rank in the order 3-,2-,1-,0-,0+,1+,2+,3+.
Eigensystem numeric_eigensystem(const Mat8& H, const std::optional<SystemParams>& labeling = std::nullopt);

Eigensystem eigensystem(const SystemParams& p);

} // namespace qar
