#include "seqtest/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace seqtest {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot write '" + path + "'");
    return out;
}

} // namespace

void write_boundaries_csv(const std::string& path, const BoundaryPair& bounds) {
    auto out = open_out(path);
    out << "t,b,B\n";
    for (std::size_t i = 0; i < bounds.times.size(); ++i) {
        out << format_full(bounds.times[i]) << ',' << format_full(bounds.lower[i]) << ','
            << format_full(bounds.upper[i]) << '\n';
    }
}

void write_cdfs_csv(const std::string& path, const StoppedMeasurePair& mu) {
    auto out = open_out(path);
    out << "t,F0,F1\n";
    for (std::size_t i = 0; i < mu.times().size(); ++i) {
        out << format_full(mu.times()[i]) << ',' << format_full(mu.f0()[i]) << ','
            << format_full(mu.f1()[i]) << '\n';
    }
}

void write_value_slice_csv(const std::string& path, const ValueSurface& surface, int time_index) {
    if (time_index < 0 || static_cast<std::size_t>(time_index) >= surface.times.size()) {
        throw std::invalid_argument("io: time index out of range");
    }
    auto out = open_out(path);
    out << "pi,V\n";
    for (std::size_t i = 0; i < surface.probs.size(); ++i) {
        out << format_full(surface.probs[i]) << ','
            << format_full(surface.value(time_index, static_cast<int>(i))) << '\n';
    }
}

void write_surface_csv(const std::string& path, const ValueSurface& surface) {
    auto out = open_out(path);
    out << "t,pi,V,stop\n";
    for (std::size_t k = 0; k < surface.times.size(); ++k) {
        for (std::size_t i = 0; i < surface.probs.size(); ++i) {
            out << format_full(surface.times[k]) << ',' << format_full(surface.probs[i]) << ','
                << format_full(surface.value(static_cast<int>(k), static_cast<int>(i))) << ','
                << (surface.stopped(static_cast<int>(k), static_cast<int>(i)) ? '1' : '0') << '\n';
        }
    }
}

void write_result_json(const std::string& path, const ProblemConfig& cfg,
                       const EquilibriumResult& result) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(config_to_json_string(cfg));
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["distances"] = result.distances;
    j["boundary_steps"] = result.boundary_steps;
    j["eta_min_observed"] = result.eta_min_observed;
    j["vol_lower_documented"] = cfg.signal.min_volatility();
    j["vol_upper_documented"] = cfg.signal.max_volatility();
    const int nt = static_cast<int>(result.surface.times.size()) - 1;
    j["terminal_boundaries"] = {
        {"lower", nt >= 1 ? result.bounds.lower[static_cast<std::size_t>(nt) - 1] : 0.0},
        {"upper", nt >= 1 ? result.bounds.upper[static_cast<std::size_t>(nt) - 1] : 1.0},
    };
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot read '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("io: empty file '" + path + "'");
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) names.push_back(cell);
    }
    if (header) *header = names;
    std::vector<std::vector<double>> cols(names.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t i = 0;
        while (std::getline(ss, cell, ',') && i < cols.size()) {
            cols[i++].push_back(std::stod(cell));
        }
        if (i != cols.size()) throw std::runtime_error("io: ragged row in '" + path + "'");
    }
    return cols;
}

} // namespace seqtest
