#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qht/cones.hpp"

namespace qht {

// Solve-run configuration, loaded from a JSON file.  Exactly one of
// datum_expr / datum_file must be set.
struct SolveConfig {
    std::string family = "monge_ampere"; // sigma_k | monge_ampere | nm1_monge_ampere
    int k = 0;                           // required for sigma_k
    int n = 1;
    int points_per_axis = 0;             // 0 = default for n (16 for n=1, 4 for n=2)
    std::string scheme = "central2";
    std::string datum_expr;
    std::string datum_file;
    std::string omega_type = "identity"; // identity | scaled_identity | diag | constant
    double omega_scale = 1.0;                        // scaled_identity
    std::vector<double> omega_diag;                  // diag
    std::vector<std::vector<std::vector<double>>> omega_entries; // constant: n x n x 4
    int continuity_steps = 4;
    double tol = 1e-11;
    int max_iter = 50;
    std::string normalization = "mean_zero"; // mean_zero | sup_zero
    std::string out = "qht_out";
    std::uint64_t seed = 12345;

    static SolveConfig from_json_string(const std::string& text);
    static SolveConfig from_json_file(const std::string& path);
    std::string to_json_string() const;
};

Family family_from_name(const std::string& name);

// Full command-line entry point; returns the process exit code:
// 0 success, 1 verification failure, 2 configuration error, 3 solver failure.
int run_cli(int argc, const char* const* argv);

} // namespace qht
