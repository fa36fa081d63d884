#pragma once

#include <vector>

#include "qht/errors.hpp"

namespace qht {

// Exterior algebra over R^dim (dim <= 12) with bitmask-indexed basis blades.
// Used as an independent oracle for the wedge-product identities satisfied by
// diagonalized hyperhermitian forms: an n-tuple of eigenvalues lambda maps to
// the 2-form sum_i lambda_i dz^{2i} ^ dz^{2i+1} and matrix identities become
// coefficient identities in top degree.
class Multivector {
public:
    explicit Multivector(int dim);
    static Multivector one(int dim);

    int dim() const { return dim_; }
    unsigned full_mask() const { return (1u << dim_) - 1u; }
    double operator[](unsigned mask) const { return c_[mask]; }
    double& operator[](unsigned mask) { return c_[mask]; }

    Multivector wedge(const Multivector& o) const;
    Multivector wedge_pow(int k) const;
    Multivector hodge_star() const; // orthonormal metric, standard orientation
    double top() const { return c_[full_mask()]; }

    Multivector& operator+=(const Multivector& o);
    Multivector& operator*=(double s);

private:
    int dim_ = 0;
    std::vector<double> c_;
};

// sign of dz^a ^ dz^b -> dz^(a|b) for disjoint masks (crossing parity)
int wedge_sign(unsigned a, unsigned b);

// sum_i eigs[i] dz^{2i} ^ dz^{2i+1} in dimension 2n
Multivector blade_form(const std::vector<double>& eigs);
// determinant of a 2-form: top coefficient of m^n divided by n!
double form_det(const Multivector& m, int n);
// blade coefficients of a 2-form supported on the standard blades
std::vector<double> two_form_eigs(const Multivector& m, int n);

// coefficient of (lambda^k wedged against the canonical form) relative to the
// canonical top form; equals sigma_k(lambda) / binom(n, k)
double wedge_ratio(const std::vector<double>& lam, int k);

// eigenvalues of (1/(n-1)!) * star(Omega^{n-1}); equal the complement
// products mu_i = prod_{j != i} lambda_j
std::vector<double> hodge_star_eigs(const std::vector<double>& lam);
std::vector<double> complement_products(const std::vector<double>& lam);
// inverse of the complement-product map on positive tuples
std::vector<double> complement_products_inverse(const std::vector<double>& mu);

// residuals of the three Hodge-type identities, relative to the result scale
double hodge_identity1_error(const std::vector<double>& lam);
double hodge_identity2_error(const std::vector<double>& chi, const std::vector<double>& om);
// (1/(n-1)!) * star(M ^ Omega0^{n-2}) has eigenvalues nm1_transform(m)
double hodge_identity3_error(const std::vector<double>& m);

} // namespace qht
