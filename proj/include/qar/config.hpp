// config.hpp — Flat key = value experiment configuration

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qar/baths.hpp"
#include "qar/dynamics.hpp"
#include "qar/model.hpp"

namespace qar {

enum class GridScale { Linear, Log };

struct GridSpec {
    double min{0.0};
    double max{0.0};
    int count{0};
    GridScale scale{GridScale::Linear};

    // Inclusive end points; log grids are geometric.
    std::vector<double> points() const;
    void validate(std::string_view axis) const;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ExperimentConfig {
    SystemParams system;
    BathParams baths;
    std::vector<ModelKind> models{ModelKind::CoarseGrained};
    std::vector<CouplingKind> hamiltonians{CouplingKind::XXX};
    std::map<std::string, GridSpec> grids;
    std::uint64_t seed{0};
    std::filesystem::path output_dir{"."};

    const GridSpec& grid(const std::string& axis) const;
};

// Grid axes understood by the studies.
inline constexpr std::array<std::string_view, 6> kGridAxes{"g", "chi", "kappa", "T_h", "T_w", "t"};

// Applies the key = value lines of `text` on top of `base`. Unknown keys and malformed values
// throw Error(ErrorCode::Config) naming the offending key.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

// Applies one `key = value` assignment.
void apply_config_entry(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Canonical text form: fixed key order, 17 significant digits.
std::string serialize_config(const ExperimentConfig& cfg);

} // namespace qar
