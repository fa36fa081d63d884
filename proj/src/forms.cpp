#include "qht/forms.hpp"

#include <bit>
#include <cmath>

#include "qht/cones.hpp"

namespace qht {

Multivector::Multivector(int dim) : dim_(dim) {
    if (dim < 0 || dim > 12) throw DomainError("Multivector: dimension out of range 0..12");
    c_.assign(1u << dim, 0.0);
}

Multivector Multivector::one(int dim) {
    Multivector m(dim);
    m.c_[0] = 1.0;
    return m;
}

int wedge_sign(unsigned a, unsigned b) {
    // count pairs (i in a, j in b) with i > j
    int crossings = 0;
    unsigned rest = a;
    while (rest) {
        const unsigned bit = rest & (~rest + 1u);
        crossings += std::popcount(b & (bit - 1u));
        rest &= rest - 1u;
    }
    return (crossings % 2 == 0) ? 1 : -1;
}

Multivector Multivector::wedge(const Multivector& o) const {
    if (dim_ != o.dim_) throw DomainError("Multivector: dimension mismatch");
    Multivector out(dim_);
    const unsigned full = full_mask();
    for (unsigned a = 0; a <= full; ++a) {
        if (c_[a] == 0.0) continue;
        for (unsigned b = 0; b <= full; ++b) {
            if (o.c_[b] == 0.0 || (a & b)) continue;
            out.c_[a | b] += wedge_sign(a, b) * c_[a] * o.c_[b];
        }
    }
    return out;
}

Multivector Multivector::wedge_pow(int k) const {
    if (k < 0) throw DomainError("Multivector: negative wedge power");
    Multivector out = one(dim_);
    for (int i = 0; i < k; ++i) out = out.wedge(*this);
    return out;
}

Multivector Multivector::hodge_star() const {
    Multivector out(dim_);
    const unsigned full = full_mask();
    for (unsigned a = 0; a <= full; ++a) {
        if (c_[a] == 0.0) continue;
        const unsigned comp = full & ~a;
        out.c_[comp] += wedge_sign(a, comp) * c_[a];
    }
    return out;
}

Multivector& Multivector::operator+=(const Multivector& o) {
    if (dim_ != o.dim_) throw DomainError("Multivector: dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Multivector& Multivector::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Multivector blade_form(const std::vector<double>& eigs) {
    const int n = static_cast<int>(eigs.size());
    Multivector m(2 * n);
    for (int i = 0; i < n; ++i)
        m[(1u << (2 * i)) | (1u << (2 * i + 1))] = eigs[static_cast<size_t>(i)];
    return m;
}

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

double form_det(const Multivector& m, int n) {
    return m.wedge_pow(n).top() / factorial(n);
}

std::vector<double> two_form_eigs(const Multivector& m, int n) {
    std::vector<double> eigs(static_cast<size_t>(n));
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        eigs[static_cast<size_t>(i)] = m[(1u << (2 * i)) | (1u << (2 * i + 1))];
        scale = std::max(scale, std::abs(eigs[static_cast<size_t>(i)]));
    }
    // the inputs we build are supported on the standard blades; verify that
    const unsigned full = m.full_mask();
    for (unsigned mask = 0; mask <= full; ++mask) {
        if (std::popcount(mask) != 2) {
            if (mask != 0 && std::abs(m[mask]) > 1e-12 * (1.0 + scale))
                throw DomainError("two_form_eigs: not a 2-form");
            continue;
        }
        bool is_blade = false;
        for (int i = 0; i < n; ++i)
            if (mask == ((1u << (2 * i)) | (1u << (2 * i + 1)))) is_blade = true;
        if (!is_blade && std::abs(m[mask]) > 1e-12 * (1.0 + scale))
            throw DomainError("two_form_eigs: off-blade component present");
    }
    return eigs;
}

double wedge_ratio(const std::vector<double>& lam, int k) {
    const int n = static_cast<int>(lam.size());
    if (k < 0 || k > n) throw DomainError("wedge_ratio: k out of range");
    const Multivector om = blade_form(lam);
    const Multivector om0 = blade_form(std::vector<double>(static_cast<size_t>(n), 1.0));
    const double num = om.wedge_pow(k).wedge(om0.wedge_pow(n - k)).top();
    const double den = om0.wedge_pow(n).top();
    return num / den;
}

std::vector<double> hodge_star_eigs(const std::vector<double>& lam) {
    const int n = static_cast<int>(lam.size());
    if (n < 2) throw DomainError("hodge_star_eigs: needs n >= 2");
    Multivector st = blade_form(lam).wedge_pow(n - 1).hodge_star();
    st *= 1.0 / factorial(n - 1);
    return two_form_eigs(st, n);
}

std::vector<double> complement_products(const std::vector<double>& lam) {
    const std::size_t n = lam.size();
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) p *= lam[j];
        mu[i] = p;
    }
    return mu;
}

std::vector<double> complement_products_inverse(const std::vector<double>& mu) {
    const int n = static_cast<int>(mu.size());
    if (n < 2) throw DomainError("complement_products_inverse: needs n >= 2");
    double prod = 1.0;
    for (double m : mu) {
        if (m <= 0.0) throw DomainError("complement_products_inverse: needs positive inputs");
        prod *= m;
    }
    const double P = std::pow(prod, 1.0 / (n - 1));
    std::vector<double> lam(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) lam[static_cast<size_t>(i)] = P / mu[static_cast<size_t>(i)];
    return lam;
}

double hodge_identity1_error(const std::vector<double>& lam) {
    const int n = static_cast<int>(lam.size());
    Multivector st = blade_form(lam).wedge_pow(n - 1).hodge_star();
    st *= 1.0 / factorial(n - 1);
    const double lhs = form_det(st, n);
    double rhs = std::pow(form_det(blade_form(lam), n), n - 1);
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double hodge_identity2_error(const std::vector<double>& chi, const std::vector<double>& om) {
    const int n = static_cast<int>(chi.size());
    const Multivector c = blade_form(chi);
    const Multivector o = blade_form(om);
    const double lhs = c.wedge_pow(n).top() / o.wedge_pow(n).top();
    const double rhs = form_det(c, n) / form_det(o, n);
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double hodge_identity3_error(const std::vector<double>& m) {
    const int n = static_cast<int>(m.size());
    if (n < 2) throw DomainError("hodge_identity3_error: needs n >= 2");
    const Multivector om0 = blade_form(std::vector<double>(static_cast<size_t>(n), 1.0));
    Multivector st = blade_form(m).wedge(om0.wedge_pow(n - 2)).hodge_star();
    st *= 1.0 / factorial(n - 1);
    const std::vector<double> got = two_form_eigs(st, n);
    const std::vector<double> want = nm1_transform(m);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<size_t>(i);
        err = std::max(err, std::abs(got[k] - want[k]) / (1.0 + std::abs(want[k])));
    }
    return err;
}

} // namespace qht
