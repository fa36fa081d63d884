#include "qht/cones.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace qht {

std::vector<double> elementary_symmetric(const std::vector<double>& lambda) {
    const size_t n = lambda.size();
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (size_t m = 0; m < n; ++m)
        for (size_t r = std::min(m + 1, n); r >= 1; --r)
            e[r] += lambda[m] * e[r - 1];
    return e;
}

double sigma(int r, const std::vector<double>& lambda) {
    if (r < 0 || r > static_cast<int>(lambda.size()))
        throw DomainError("sigma: order out of range");
    return elementary_symmetric(lambda)[static_cast<size_t>(r)];
}

double sigma_enumerated(int r, const std::vector<double>& lambda) {
    const int n = static_cast<int>(lambda.size());
    if (n > 8) throw DomainError("sigma_enumerated: n > 8");
    if (r < 0 || r > n) throw DomainError("sigma_enumerated: order out of range");
    double acc = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != r) continue;
        double p = 1.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) p *= lambda[static_cast<size_t>(i)];
        acc += p;
    }
    return acc;
}

bool in_gamma_k(int k, const std::vector<double>& lambda) {
    const auto e = elementary_symmetric(lambda);
    for (int r = 1; r <= k; ++r)
        if (e[static_cast<size_t>(r)] <= 0.0) return false;
    return true;
}

std::vector<double> nm1_transform(const std::vector<double>& lambda) {
    const size_t n = lambda.size();
    if (n < 2) throw DomainError("nm1_transform requires n >= 2");
    double total = 0.0;
    for (double v : lambda) total += v;
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = (total - lambda[i]) / static_cast<double>(n - 1);
    return out;
}

namespace {

using Membership = std::function<bool(const std::vector<double>&)>;

void require_member(const Membership& member, const std::string& name,
                    const std::vector<double>& lambda, const char* who) {
    if (!member(lambda)) {
        std::ostringstream os;
        os << who << ": point outside " << name << " cone";
        throw DomainError(os.str());
    }
}

// sigma_r(lambda with index i removed) for all i.
std::vector<double> sigma_minor(int r, const std::vector<double>& lambda) {
    const size_t n = lambda.size();
    std::vector<double> out(n);
    std::vector<double> rest;
    rest.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        rest.clear();
        for (size_t j = 0; j < n; ++j)
            if (j != i) rest.push_back(lambda[j]);
        out[i] = sigma(r, rest);
    }
    return out;
}

double sigma_minor2(int r, const std::vector<double>& lambda, size_t i, size_t j) {
    std::vector<double> rest;
    rest.reserve(lambda.size());
    for (size_t t = 0; t < lambda.size(); ++t)
        if (t != i && t != j) rest.push_back(lambda[t]);
    return sigma(r, rest);
}

} // namespace

ConeOperator hessian_operator(int n, int k) {
    if (k < 1 || k > n) throw DomainError("hessian_operator: need 1 <= k <= n");
    ConeOperator op;
    op.n = n;
    op.name = "sigma_" + std::to_string(k);
    const Membership member = [k](const std::vector<double>& lam) {
        return in_gamma_k(k, lam);
    };
    const std::string name = op.name;
    op.member = member;
    op.f = [member, name, k](const std::vector<double>& lam) {
        require_member(member, name, lam, "f");
        return std::log(sigma(k, lam));
    };
    op.grad = [member, name, k](const std::vector<double>& lam) {
        require_member(member, name, lam, "grad");
        const double sk = sigma(k, lam);
        auto minors = sigma_minor(k - 1, lam);
        for (auto& v : minors) v /= sk;
        return minors;
    };
    op.hess = [member, name, k](const std::vector<double>& lam) {
        require_member(member, name, lam, "hess");
        const int n_ = static_cast<int>(lam.size());
        const double sk = sigma(k, lam);
        const auto g = sigma_minor(k - 1, lam);
        Eigen::MatrixXd h(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double second =
                    (i == j || k < 2)
                        ? 0.0
                        : sigma_minor2(k - 2, lam, static_cast<size_t>(i),
                                       static_cast<size_t>(j));
                h(i, j) = second / sk -
                          g[static_cast<size_t>(i)] * g[static_cast<size_t>(j)] / (sk * sk);
            }
        return h;
    };
    return op;
}

ConeOperator ma_operator(int n) {
    ConeOperator op = hessian_operator(n, n);
    op.name = "monge_ampere";
    return op;
}

ConeOperator nm1_ma_operator(int n) {
    if (n == 1) {
        // The eigenvalue transform degenerates at n = 1; the family reduces to
        // the Monge-Ampere equation there.
        ConeOperator op = ma_operator(1);
        op.name = "nm1_monge_ampere";
        return op;
    }
    ConeOperator op;
    op.n = n;
    op.name = "nm1_monge_ampere";
    const ConeOperator inner = ma_operator(n);
    const Membership member = [n](const std::vector<double>& lam) {
        return in_gamma_k(n, nm1_transform(lam));
    };
    const std::string name = op.name;
    op.member = member;
    op.f = [member, name, inner](const std::vector<double>& lam) {
        require_member(member, name, lam, "f");
        return inner.f(nm1_transform(lam));
    };
    // The transform matrix is symmetric, so grad = T grad_inner(T lam) and
    // hess = T hess_inner(T lam) T.
    op.grad = [member, name, inner, n](const std::vector<double>& lam) {
        require_member(member, name, lam, "grad");
        const auto gi = inner.grad(nm1_transform(lam));
        double total = 0.0;
        for (double v : gi) total += v;
        std::vector<double> out(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            out[static_cast<size_t>(i)] = (total - gi[static_cast<size_t>(i)]) / (n - 1);
        return out;
    };
    op.hess = [member, name, inner, n](const std::vector<double>& lam) {
        require_member(member, name, lam, "hess");
        const Eigen::MatrixXd hi = inner.hess(nm1_transform(lam));
        Eigen::MatrixXd t = Eigen::MatrixXd::Constant(n, n, 1.0 / (n - 1));
        t.diagonal().setZero();
        return Eigen::MatrixXd(t * hi * t);
    };
    return op;
}

ConeOperator make_operator(Family family, int n, int k) {
    switch (family) {
        case Family::hessian_k: return hessian_operator(n, k);
        case Family::monge_ampere: return ma_operator(n);
        case Family::nm1_monge_ampere: return nm1_ma_operator(n);
    }
    throw DomainError("make_operator: unknown family");
}

double g0_shift(const ConeOperator& op, const std::vector<double>& lambda) {
    require_member(op.member, op.name, lambda, "g0_shift");
    auto shifted_member = [&](double s) {
        std::vector<double> v = lambda;
        for (auto& x : v) x -= s;
        return op.member(v);
    };
    const auto [mn, mx] = std::minmax_element(lambda.begin(), lambda.end());
    double lo = *mn - 1.0, hi = *mx + 1.0;
    // lo must be inside, hi outside; expand geometrically if not.
    double span = hi - lo;
    for (int t = 0; t < 60 && !shifted_member(lo); ++t) { lo -= span; span *= 2.0; }
    span = hi - lo;
    for (int t = 0; t < 60 && shifted_member(hi); ++t) { hi += span; span *= 2.0; }
    if (!shifted_member(lo) || shifted_member(hi))
        throw ConvergenceError("g0_shift: failed to bracket the boundary");
    const double scale = 1.0 + std::max(std::fabs(lo), std::fabs(hi));
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        (shifted_member(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool is_c_subsolution_point(const ConeOperator& op, const std::vector<double>& lambda,
                            double sigma_level, double t_probe) {
    require_member(op.member, op.name, lambda, "is_c_subsolution_point");
    for (size_t j = 0; j < lambda.size(); ++j) {
        auto probe = [&](double t) {
            std::vector<double> v = lambda;
            v[j] += t;
            if (!op.member(v)) throw DomainError("c-subsolution probe left the cone");
            return op.f(v);
        };
        const double far = probe(t_probe);
        const double mid = probe(0.5 * t_probe);
        // Must clear the level and still be climbing at the probe scale.
        if (!(far > sigma_level)) return false;
        if (!(far > mid + 1e-12 * (1.0 + std::fabs(far)))) return false;
    }
    return true;
}

} // namespace qht
