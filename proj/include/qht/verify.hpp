#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qht/hypmatrix.hpp"

namespace qht {

struct PropertyResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst = 0.0; // worst observed error across trials
    double tol = 0.0;
    std::string note;   // description of the first failure
    bool passed() const { return failures == 0; }
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<PropertyResult> properties;
    bool all_passed() const;
};

// Replaceable real-representation map, for fault-injection tests; the algebra
// suite uses this wherever it references the representation explicitly.
using IotaFn = std::function<Eigen::MatrixXd(const QuatMatrix&)>;

VerifyReport verify_algebra(std::uint64_t seed, int trials, const IotaFn& iota_hook = {});
VerifyReport verify_cones(std::uint64_t seed, int trials);
VerifyReport verify_forms(std::uint64_t seed, int trials);
std::vector<VerifyReport> verify_all(std::uint64_t seed, int trials);

void print_report(std::ostream& os, const VerifyReport& report);

// Feasibility of V w = mu, sum(w) = 1, w >= 0, where the columns of V are
// the permutations of lambda; phase-1 simplex with Bland's rule.  This is the
// independent oracle for the majorization predicate (n <= 6).
bool in_permutation_hull(const std::vector<double>& mu, const std::vector<double>& lambda,
                         double tol = 1e-9);

// shared random generators
QuatMatrix random_quat_matrix(std::mt19937_64& rng, int n, double scale = 1.0);
QuatMatrix random_hyperhermitian(std::mt19937_64& rng, int n, double scale = 1.0);
// Random element of the compact quaternionic unitary group (U* U = I),
// built by Gram-Schmidt over the quaternions.
QuatMatrix random_sp_unitary(std::mt19937_64& rng, int n);
std::vector<double> random_vector(std::mt19937_64& rng, int n, double lo, double hi);

} // namespace qht
