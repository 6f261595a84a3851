#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace spinforms {

/**
 * Frozen run constants. The volume constant is the empirically determined
 * total measure that renders the printed one-form bases orthonormal; the
 * Haar integral itself is normalized to mass one.
 *
 * Values can be overridden by a key=value file named in the environment
 * variable SPINFORMS_CONFIG (keys: volume_constant, tol_spectrum, tol_norms,
 * tol_haar, grid_start, grid_stop, grid_step, k_metric).
 */
struct RunConstants {
    double volume_constant = 8.0 * 3.14159265358979323846 * 3.14159265358979323846;
    double tol_spectrum = 1e-6;
    double tol_norms = 1e-10;
    double tol_haar = 1e-3;
    double grid_start = 0.5;
    double grid_stop = 10.0;
    double grid_step = 1e-3;
    double k_metric = 1.0;

    static RunConstants from_file(const std::string& path) {
        RunConstants c;
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open constants file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r");
                auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) continue;
            double v = std::stod(value);
            if (key == "volume_constant") c.volume_constant = v;
            else if (key == "tol_spectrum") c.tol_spectrum = v;
            else if (key == "tol_norms") c.tol_norms = v;
            else if (key == "tol_haar") c.tol_haar = v;
            else if (key == "grid_start") c.grid_start = v;
            else if (key == "grid_stop") c.grid_stop = v;
            else if (key == "grid_step") c.grid_step = v;
            else if (key == "k_metric") c.k_metric = v;
            else throw std::runtime_error("unknown constants key: " + key);
        }
        return c;
    }

    static RunConstants load() {
        if (const char* path = std::getenv("SPINFORMS_CONFIG")) return from_file(path);
        return RunConstants{};
    }
};

}  // namespace spinforms
