// baths.hpp — Spectral decomposition of the bath couplings and ohmic coarse-grained rate matrices

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qar/model.hpp"

namespace qar {

// Relative frequency-grouping tolerance, in units of the mean level energy (omega_h at resonance).
inline constexpr double kDefaultGroupingTol = 1e-9;

// Temperatures in units of hbar omega_c / k_B; delta_t in units of 1/omega_c.
struct BathParams {
    std::array<double, 3> temperature{2.0, 1.0, 8.0}; // indexed by site: h, c, w
    double chi{1e-2};
    std::optional<double> delta_t; // unset: 1 / min_j omega_j

    double T(Site s) const { return temperature[site_index(s)]; }
    double coarse_graining_time(const SystemParams& p) const;
    void validate() const;
    std::vector<std::string> warnings() const;
};

double bose_occupation(double omega, double T);

struct JumpOperator {
    double frequency{0.0}; // Omega_n; negative for de-excitation components
    Mat8 matrix = Mat8::Zero(); // in the energy eigenbasis
    int index{0}; // +-1 .. +-K
};

struct BathChannel {
    Site site{Site::Hot};
    double bare_frequency{0.0};
    double temperature{1.0};
    double chi{0.0};
    double delta_t{1.0};
    Mat8 frame = Mat8::Identity(); // eigenbasis columns in the product basis
    std::vector<JumpOperator> jumps; // +1..+K (descending frequency), then -1..-K
    Eigen::MatrixXcd gamma;

    // Jump operator of signed index n rotated into the product basis.
    Mat8 lab_operator(std::size_t k) const { return frame * jumps[k].matrix * frame.adjoint(); }
};

// sigma^x of `site` split into eigenbasis components of definite transition frequency.
std::vector<JumpOperator> extract_jump_operators(const Eigensystem& es, Site site,
                                                 double tol = kDefaultGroupingTol);

// Ohmic coarse-grained rate matrix over the signed family `ops`. Excitation and de-excitation
// components are not cross-coupled.
Eigen::MatrixXcd rate_matrix(std::span<const JumpOperator> ops, double T, double chi, double delta_t);

struct RateSpectrum {
    double min{0.0};
    double max{0.0};
};
RateSpectrum rate_matrix_spectrum_report(const Eigen::MatrixXcd& gamma);

BathChannel build_channel(const Eigensystem& es, const SystemParams& p, const BathParams& b, Site site,
                          double tol = kDefaultGroupingTol);

} // namespace qar
