// config.cpp — Flat key = value experiment configuration

#include "qar/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qar/csv.hpp"
#include "qar/error.hpp"

namespace qar {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(std::string_view key, const std::string& message) {
    throw Error(ErrorCode::Config, "key '" + std::string(key) + "': " + message);
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) config_error(key, "expected a number, got '" + std::string(value) + "'");
    return out;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view value) {
    Int out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) config_error(key, "expected an integer, got '" + std::string(value) + "'");
    return out;
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> out;
    while (!value.empty()) {
        const auto comma = value.find(',');
        out.push_back(trim(value.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return out;
}

GridSpec unset_grid() {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return GridSpec{nan, nan, 0, GridScale::Linear};
}

void validate_config(const ExperimentConfig& cfg) {
    try {
        cfg.system.validate();
        cfg.baths.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
    if (cfg.models.empty()) config_error("model", "at least one model kind is required");
    if (cfg.hamiltonians.empty()) config_error("hamiltonian", "at least one Hamiltonian kind is required");
    for (const auto& [axis, spec] : cfg.grids) spec.validate(axis);
}

} // namespace

std::vector<double> GridSpec::points() const {
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
    if (count == 1) {
        out[0] = min;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        if (scale == GridScale::Log)
            out[i] = std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
        else
            out[i] = min + f * (max - min);
    }
    if (count > 1) {
        out.front() = min;
        out.back() = max;
    }
    return out;
}

void GridSpec::validate(std::string_view axis) const {
    const std::string key = "grid." + std::string(axis);
    if (!std::isfinite(min)) config_error(key + ".min", "missing or not finite");
    if (!std::isfinite(max)) config_error(key + ".max", "missing or not finite");
    if (count < 2) config_error(key + ".count", "swept axes need at least 2 points");
    if (!(max > min)) config_error(key + ".max", "must exceed min");
    if (scale == GridScale::Log && !(min > 0.0)) config_error(key + ".min", "log scale requires positive bounds");
}

const GridSpec& ExperimentConfig::grid(const std::string& axis) const {
    const auto it = grids.find(axis);
    if (it == grids.end()) config_error("grid." + axis, "axis is required by this study but not configured");
    return it->second;
}

void apply_config_entry(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "omega_h") cfg.system.omega_h = parse_double(key, value);
    else if (key == "omega_c") cfg.system.omega_c = parse_double(key, value);
    else if (key == "omega_w") cfg.system.omega_w = parse_double(key, value);
    else if (key == "g") cfg.system.g = parse_double(key, value);
    else if (key == "chi") cfg.baths.chi = parse_double(key, value);
    else if (key == "T_h") cfg.baths.temperature[site_index(Site::Hot)] = parse_double(key, value);
    else if (key == "T_c") cfg.baths.temperature[site_index(Site::Cold)] = parse_double(key, value);
    else if (key == "T_w") cfg.baths.temperature[site_index(Site::Work)] = parse_double(key, value);
    else if (key == "delta_t") {
        if (value == "auto") cfg.baths.delta_t.reset();
        else cfg.baths.delta_t = parse_double(key, value);
    } else if (key == "hamiltonian") {
        cfg.hamiltonians.clear();
        for (auto item : split_list(value)) {
            const auto k = parse_coupling_kind(item);
            if (!k) config_error(key, "unknown Hamiltonian kind '" + std::string(item) + "'");
            cfg.hamiltonians.push_back(*k);
        }
        cfg.system.coupling = cfg.hamiltonians.empty() ? CouplingKind::XXX : cfg.hamiltonians.front();
    } else if (key == "model") {
        cfg.models.clear();
        for (auto item : split_list(value)) {
            const auto k = parse_model_kind(item);
            if (!k) config_error(key, "unknown model kind '" + std::string(item) + "'");
            cfg.models.push_back(*k);
        }
    } else if (key == "seed") {
        cfg.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key.starts_with("grid.")) {
        const auto rest = key.substr(5);
        const auto dot = rest.rfind('.');
        if (dot == std::string_view::npos) config_error(key, "unknown key");
        const auto axis = rest.substr(0, dot);
        const auto field = rest.substr(dot + 1);
        if (std::find(kGridAxes.begin(), kGridAxes.end(), axis) == kGridAxes.end())
            config_error(key, "unknown key");
        auto [it, inserted] = cfg.grids.try_emplace(std::string(axis), unset_grid());
        GridSpec& spec = it->second;
        if (field == "min") spec.min = parse_double(key, value);
        else if (field == "max") spec.max = parse_double(key, value);
        else if (field == "count") spec.count = parse_integer<int>(key, value);
        else if (field == "scale") {
            if (value == "linear") spec.scale = GridScale::Linear;
            else if (value == "log") spec.scale = GridScale::Log;
            else config_error(key, "scale must be 'linear' or 'log'");
        } else {
            config_error(key, "unknown key");
        }
    } else {
        config_error(key, "unknown key");
    }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::Config, "line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw Error(ErrorCode::Config, "line " + std::to_string(line_no) + ": empty key");
        apply_config_entry(base, key, line.substr(eq + 1));
    }
    validate_config(base);
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Config, "cannot read config file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    auto line = [&out](std::string_view key, const std::string& value) {
        out.append(key).append(" = ").append(value).append("\n");
    };
    auto join = [](const auto& items) {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += ",";
            s += to_string(items[i]);
        }
        return s;
    };
    line("omega_h", format_number(cfg.system.omega_h));
    line("omega_c", format_number(cfg.system.omega_c));
    line("omega_w", format_number(cfg.system.omega_w));
    line("g", format_number(cfg.system.g));
    line("chi", format_number(cfg.baths.chi));
    line("T_h", format_number(cfg.baths.T(Site::Hot)));
    line("T_c", format_number(cfg.baths.T(Site::Cold)));
    line("T_w", format_number(cfg.baths.T(Site::Work)));
    line("delta_t", cfg.baths.delta_t ? format_number(*cfg.baths.delta_t) : "auto");
    line("hamiltonian", join(cfg.hamiltonians));
    line("model", join(cfg.models));
    line("seed", std::to_string(cfg.seed));
    for (const auto& [axis, spec] : cfg.grids) {
        const std::string prefix = "grid." + axis + ".";
        line(prefix + "min", format_number(spec.min));
        line(prefix + "max", format_number(spec.max));
        line(prefix + "count", std::to_string(spec.count));
        line(prefix + "scale", spec.scale == GridScale::Log ? "log" : "linear");
    }
    return out;
}

} // namespace qar
