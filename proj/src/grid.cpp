#include "qht/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qht {

const char* scheme_name(Scheme s) {
    return s == Scheme::central2 ? "central2" : "spectral";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "central2") return Scheme::central2;
    if (name == "spectral") return Scheme::spectral;
    throw ConfigError("unknown scheme '" + name + "' (expected central2 or spectral)");
}

int TorusGrid::default_points_per_axis(int n) {
    switch (n) {
        case 1: return 16;
        case 2: return 4;
        default:
            throw ConfigError("no default resolution for n=" + std::to_string(n) +
                              "; specify points_per_axis explicitly");
    }
}

TorusGrid::TorusGrid(int n, int points_per_axis, Scheme scheme)
    : n_(n), N_(points_per_axis), scheme_(scheme) {
    if (n_ < 1) throw DomainError("TorusGrid: n must be >= 1");
    if (N_ < 4) throw DomainError("TorusGrid: need at least 4 points per axis");
    if (scheme_ == Scheme::spectral && N_ % 2 != 0)
        throw DomainError("TorusGrid: spectral scheme needs an even point count");
    h_ = 2.0 * std::numbers::pi / N_;

    const int d = axes();
    long double total = 1.0L;
    for (int a = 0; a < d; ++a) total *= N_;
    if (total > static_cast<long double>(1ULL << 24))
        throw DomainError("TorusGrid: grid of " + std::to_string(static_cast<double>(total)) +
                          " points exceeds the supported size");
    points_ = static_cast<std::size_t>(total);

    strides_.assign(static_cast<size_t>(d), 1);
    for (int a = d - 2; a >= 0; --a)
        strides_[static_cast<size_t>(a)] = strides_[static_cast<size_t>(a + 1)] * static_cast<size_t>(N_);
}

std::vector<double> TorusGrid::point(std::size_t idx) const {
    std::vector<double> p(static_cast<size_t>(axes()));
    for (int a = 0; a < axes(); ++a) p[static_cast<size_t>(a)] = x(idx, a);
    return p;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}
ScalarField& ScalarField::operator*=(double s) {
    for (double& x : v) x *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
ScalarField operator*(double s, ScalarField a) { a *= s; return a; }

double mean(const ScalarField& f) {
    double acc = 0.0;
    for (double x : f.v) acc += x;
    return acc / static_cast<double>(f.v.size());
}

double mean_integral(const ScalarField& f) {
    const double vol = std::pow(2.0 * std::numbers::pi, f.grid.axes());
    return mean(f) * vol;
}

double c0_norm(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

MatrixField constant_matrix_field(const TorusGrid& g, const QuatMatrix& m) {
    MatrixField f(g);
    for (std::size_t i = 0; i < g.points(); ++i) f.set(i, m);
    return f;
}

} // namespace qht
