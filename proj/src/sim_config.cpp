#include "kse2d/sim_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kse2d {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
    }
    if (pos != v.size()) throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
    return x;
}

} // namespace

SimConfig parse_sim_config(std::istream& is) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "m") cfg.m = static_cast<int>(to_double(key, val));
        else if (key == "dt") cfg.dt = to_double(key, val);
        else if (key == "T") cfg.T = to_double(key, val);
        else if (key == "kappa") cfg.kappa = to_double(key, val);
        else if (key == "mu") cfg.mu = to_double(key, val);
        else if (key == "h") cfg.h = to_double(key, val);
        else if (key == "delta_bar") cfg.delta_bar = to_double(key, val);
        else if (key == "ic") cfg.ic = val;
        else if (key == "ic_amplitude") cfg.ic_amplitude = to_double(key, val);
        else if (key == "p1") cfg.monitor.p1 = to_double(key, val);
        else if (key == "p2") cfg.monitor.p2 = to_double(key, val);
        else if (key == "r") cfg.monitor.r = to_double(key, val);
        else if (key == "delta") cfg.monitor.delta = to_double(key, val);
        else if (key == "output_stride") cfg.output_stride = static_cast<int>(to_double(key, val));
        else if (key == "control_mode") {
            if (val == "continuous") cfg.control_mode = ControlMode::continuous;
            else if (val == "sampled") cfg.control_mode = ControlMode::sampled;
            else throw std::invalid_argument("config: control_mode must be continuous|sampled");
        } else if (key == "meas_mode") {
            if (val == "averaged") cfg.meas_mode = MeasurementMode::averaged;
            else if (val == "point") cfg.meas_mode = MeasurementMode::point;
            else throw std::invalid_argument("config: meas_mode must be averaged|point");
        } else if (key == "snapshot_times") {
            cfg.snapshot_times.clear();
            std::istringstream ss(val);
            std::string tok;
            while (ss >> tok) cfg.snapshot_times.push_back(to_double(key, tok));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    return parse_sim_config(is);
}

} // namespace kse2d
