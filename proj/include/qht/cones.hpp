#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qht/errors.hpp"

namespace qht {

// Elementary symmetric polynomials e_0..e_n of lambda via the product
// recurrence (numerically stable for the sizes used here).
std::vector<double> elementary_symmetric(const std::vector<double>& lambda);
double sigma(int r, const std::vector<double>& lambda);
// Subset-enumeration cross-check route, n <= 8.
double sigma_enumerated(int r, const std::vector<double>& lambda);

// Open cone Gamma_k = { sigma_1 > 0, ..., sigma_k > 0 }.
bool in_gamma_k(int k, const std::vector<double>& lambda);

// T(lambda)_k = 1/(n-1) * sum_{i != k} lambda_i, n >= 2.
std::vector<double> nm1_transform(const std::vector<double>& lambda);

enum class Family { hessian_k, monge_ampere, nm1_monge_ampere };

// Operator bundle (Gamma, f): open symmetric cone with vertex 0 containing
// Gamma_n, and f smooth concave increasing on Gamma.  Custom instances can be
// constructed directly by tests.
struct ConeOperator {
    int n = 0;
    std::string name;
    std::function<bool(const std::vector<double>&)> member;
    std::function<double(const std::vector<double>&)> f;
    std::function<std::vector<double>(const std::vector<double>&)> grad;
    std::function<Eigen::MatrixXd(const std::vector<double>&)> hess;
    // sup of f over the cone boundary (-inf for the log-sigma families).
    double boundary_sup = -std::numeric_limits<double>::infinity();
};

// f = log sigma_k on Gamma_k, analytic gradient/Hessian from sigma minors.
ConeOperator hessian_operator(int n, int k);
// Monge-Ampere: k = n.
ConeOperator ma_operator(int n);
// f = log sigma_n(T(lambda)) on T^{-1}(Gamma_n).  For n = 1 the transform
// degenerates; the family is defined with the identity transform there.
ConeOperator nm1_ma_operator(int n);

ConeOperator make_operator(Family family, int n, int k = 0);

// Unique shift s with lambda - s*ones on the cone boundary, by bisection on
// the membership predicate (bracket [min-1, max+1], expanded geometrically;
// at most 200 iterations).  Equals min(lambda) for Gamma_n.  Requires
// lambda in Gamma.
double g0_shift(const ConeOperator& op, const std::vector<double>& lambda);

// Axis-probe surrogate for the C-subsolution condition at a point: for each
// coordinate direction, f at lambda + T*e_j must exceed sigma and still be
// increasing at the probe scale.
bool is_c_subsolution_point(const ConeOperator& op, const std::vector<double>& lambda,
                            double sigma_level, double t_probe = 1e6);

} // namespace qht
