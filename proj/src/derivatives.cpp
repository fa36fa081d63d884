#include "qht/derivatives.hpp"

#include <cmath>
#include <numbers>

namespace qht {

namespace {

// out[idx] = sum_m M(coord(idx), m) u[.. m ..] along one axis, dense N x N M
ScalarField apply_axis_matrix(const ScalarField& u, int axis, const std::vector<double>& M) {
    const TorusGrid& g = u.grid;
    const int N = g.points_per_axis();
    const std::size_t stride = g.stride(axis);
    ScalarField out(g);
    for (std::size_t idx = 0; idx < g.points(); ++idx) {
        const int c = g.coord(idx, axis);
        const std::size_t base = idx - static_cast<size_t>(c) * stride;
        const double* row = &M[static_cast<size_t>(c) * N];
        double acc = 0.0;
        for (int m = 0; m < N; ++m) acc += row[m] * u.v[base + static_cast<size_t>(m) * stride];
        out.v[idx] = acc;
    }
    return out;
}

QuatField mul_right(const QuatField& f, const Quat& q) {
    QuatField out(f.c[0].grid);
    for (std::size_t i = 0; i < f.c[0].v.size(); ++i) out.set(i, f.get(i) * q);
    return out;
}

QuatField mul_left(const Quat& q, const QuatField& f) {
    QuatField out(f.c[0].grid);
    for (std::size_t i = 0; i < f.c[0].v.size(); ++i) out.set(i, q * f.get(i));
    return out;
}

QuatField add(QuatField a, const QuatField& b) {
    for (int k = 0; k < 4; ++k) a.c[static_cast<size_t>(k)] += b.c[static_cast<size_t>(k)];
    return a;
}

QuatField deriv1(const QuatField& f, int axis) {
    QuatField out(f.c[0].grid);
    for (int k = 0; k < 4; ++k) out.c[static_cast<size_t>(k)] = deriv1(f.c[static_cast<size_t>(k)], axis);
    return out;
}

} // namespace

double max_abs_diff(const QuatField& a, const QuatField& b) {
    double m = 0.0;
    for (int k = 0; k < 4; ++k)
        m = std::max(m, max_abs_diff(a.c[static_cast<size_t>(k)], b.c[static_cast<size_t>(k)]));
    return m;
}

std::vector<double> spectral_d1_matrix(int N) {
    const double h = 2.0 * std::numbers::pi / N;
    std::vector<double> M(static_cast<size_t>(N) * N, 0.0);
    for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
            if (j == l) continue;
            const double sgn = ((j - l) % 2 == 0) ? 1.0 : -1.0;
            M[static_cast<size_t>(j) * N + l] = 0.5 * sgn / std::tan(0.5 * (j - l) * h);
        }
    return M;
}

std::vector<double> spectral_d2_matrix(int N) {
    const double h = 2.0 * std::numbers::pi / N;
    const double pi = std::numbers::pi;
    std::vector<double> M(static_cast<size_t>(N) * N, 0.0);
    for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
            if (j == l) {
                M[static_cast<size_t>(j) * N + l] = -pi * pi / (3.0 * h * h) - 1.0 / 6.0;
            } else {
                const double sgn = ((j - l) % 2 == 0) ? 1.0 : -1.0;
                const double s = std::sin(0.5 * (j - l) * h);
                M[static_cast<size_t>(j) * N + l] = -sgn / (2.0 * s * s);
            }
        }
    return M;
}

ScalarField deriv1(const ScalarField& u, int axis) {
    const TorusGrid& g = u.grid;
    if (g.scheme() == Scheme::spectral)
        return apply_axis_matrix(u, axis, spectral_d1_matrix(g.points_per_axis()));
    const double inv2h = 1.0 / (2.0 * g.h());
    ScalarField out(g);
    for (std::size_t idx = 0; idx < g.points(); ++idx)
        out.v[idx] = (u.v[g.shifted(idx, axis, 1)] - u.v[g.shifted(idx, axis, -1)]) * inv2h;
    return out;
}

ScalarField deriv2(const ScalarField& u, int axis) {
    const TorusGrid& g = u.grid;
    if (g.scheme() == Scheme::spectral)
        return apply_axis_matrix(u, axis, spectral_d2_matrix(g.points_per_axis()));
    const double invh2 = 1.0 / (g.h() * g.h());
    ScalarField out(g);
    for (std::size_t idx = 0; idx < g.points(); ++idx)
        out.v[idx] = (u.v[g.shifted(idx, axis, 1)] - 2.0 * u.v[idx] + u.v[g.shifted(idx, axis, -1)]) * invh2;
    return out;
}

std::size_t SecondDerivativeTable::tri(int a, int b) const {
    if (a > b) std::swap(a, b);
    const int d = grid_.axes();
    return static_cast<size_t>(a) * d - static_cast<size_t>(a) * (a - 1) / 2 + static_cast<size_t>(b - a);
}

SecondDerivativeTable::SecondDerivativeTable(const ScalarField& u) : grid_(u.grid) {
    const int d = grid_.axes();
    entry_.reserve(static_cast<size_t>(d) * (d + 1) / 2);
    for (int a = 0; a < d; ++a) {
        const ScalarField first = deriv1(u, a);
        for (int b = a; b < d; ++b)
            entry_.push_back(b == a ? deriv2(u, a) : deriv1(first, b));
    }
}

const ScalarField& SecondDerivativeTable::at(int a, int b) const { return entry_[tri(a, b)]; }

Eigen::MatrixXd SecondDerivativeTable::matrix_at(std::size_t idx) const {
    const int d = grid_.axes();
    Eigen::MatrixXd S(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            const double v = entry_[tri(a, b)].v[idx];
            S(a, b) = v;
            S(b, a) = v;
        }
    return S;
}

QuatField to_quat_field(const ScalarField& u) {
    QuatField f(u.grid);
    f.c[0] = u;
    return f;
}

QuatField dq(const QuatField& f, int r) {
    const TorusGrid& g = f.c[0].grid;
    QuatField out(g);
    for (int i = 0; i < 4; ++i)
        out = add(out, mul_right(deriv1(f, g.axis(i, r)), Quat::unit(i).conj()));
    return out;
}

QuatField dqbar(const QuatField& f, int r) {
    const TorusGrid& g = f.c[0].grid;
    QuatField out(g);
    for (int i = 0; i < 4; ++i)
        out = add(out, mul_left(Quat::unit(i), deriv1(f, g.axis(i, r))));
    return out;
}

QuatField dq(const ScalarField& u, int r) { return dq(to_quat_field(u), r); }
QuatField dqbar(const ScalarField& u, int r) { return dqbar(to_quat_field(u), r); }

MatrixField hess_q(const SecondDerivativeTable& table) {
    const TorusGrid& g = table.grid();
    MatrixField out(g);
    for (std::size_t idx = 0; idx < g.points(); ++idx)
        out.set(idx, hess_from_real(table.matrix_at(idx)));
    return out;
}

MatrixField hess_q(const ScalarField& u) { return hess_q(SecondDerivativeTable(u)); }

ScalarField laplacian_q(const ScalarField& u) {
    const TorusGrid& g = u.grid;
    ScalarField out(g);
    for (int a = 0; a < g.axes(); ++a) out += deriv2(u, a);
    out *= 0.25;
    return out;
}

ScalarField laplacian_q(const ScalarField& u, const QuatMatrix& g) {
    if (max_abs_diff(g, QuatMatrix::identity(g.n())) < 1e-15) return laplacian_q(u);
    const QuatMatrix gi = iota_inv(iota(g).inverse().eval());
    const MatrixField H = hess_q(u);
    ScalarField out(u.grid);
    for (std::size_t idx = 0; idx < u.grid.points(); ++idx)
        out.v[idx] = re_trace(gi * H.get(idx));
    return out;
}

double grad_supnorm(const ScalarField& u) {
    const TorusGrid& g = u.grid;
    std::vector<ScalarField> d;
    d.reserve(static_cast<size_t>(g.axes()));
    for (int a = 0; a < g.axes(); ++a) d.push_back(deriv1(u, a));
    double m = 0.0;
    for (std::size_t idx = 0; idx < g.points(); ++idx) {
        double s = 0.0;
        for (const ScalarField& f : d) s += f.v[idx] * f.v[idx];
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

ScalarField field_from_function(const TorusGrid& g,
                                const std::function<double(const std::vector<double>&)>& fn) {
    ScalarField out(g);
    for (std::size_t idx = 0; idx < g.points(); ++idx) out.v[idx] = fn(g.point(idx));
    return out;
}

} // namespace qht
