#pragma once

#include <string>

namespace mbred {

// Every numerical threshold used by the library, in one record. The defaults
// are dimension-independent at desk scale (dim <= 16) and can be overridden
// per run through the CLI (--tol NAME=VALUE).
struct Tolerances {
    double unit_tol = 1e-9;      // ket normalization
    double herm_tol = 1e-9;      // hermiticity of operator inputs
    double psd_tol = 1e-9;       // eigenvalue positivity slack
    double trace_tol = 1e-9;     // unit-trace slack
    double recon_tol = 1e-8;     // spectral reconstruction / completeness
    double point_eq_tol = 1e-9;  // gauge-invariant pure-point equality
    double weight_tol = 1e-9;    // measure normalization slack
    double weight_floor = 1e-15; // support weights below this are pruned
    double purity_tol = 1e-9;    // rank-1 threshold for density -> pure point

    // Named access for CLI overrides; throws ValidationError on unknown name.
    void set(const std::string& name, double value);
    double get(const std::string& name) const;
};

// Process-wide tolerance record. Mutable so a runner can apply overrides
// before any computation starts; all validation reads from here.
Tolerances& tolerances();

}  // namespace mbred
