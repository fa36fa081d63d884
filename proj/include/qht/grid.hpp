#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qht/errors.hpp"
#include "qht/hypmatrix.hpp"

namespace qht {

enum class Scheme { central2, spectral };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Uniform grid on the flat torus R^{4n}/(2 pi Z)^{4n}.  Axes are ordered
// (x0^1..x0^n, x1^1..x1^n, x2^1..x2^n, x3^1..x3^n); storage is row-major with
// the last axis fastest.  Grid coordinates are x = index * h, h = 2 pi / N.
class TorusGrid {
public:
    TorusGrid(int n, int points_per_axis, Scheme scheme = Scheme::central2);

    // Default resolutions keep the total point count at 65536.
    static int default_points_per_axis(int n);

    int n() const { return n_; }
    int points_per_axis() const { return N_; }
    Scheme scheme() const { return scheme_; }
    int axes() const { return 4 * n_; }
    std::size_t points() const { return points_; }
    double h() const { return h_; }

    // axis index of coordinate x_p^r (p in 0..3, r 0-based)
    int axis(int p, int r) const { return p * n_ + r; }

    std::size_t stride(int axis) const { return strides_[static_cast<size_t>(axis)]; }
    int coord(std::size_t idx, int axis) const {
        return static_cast<int>((idx / stride(axis)) % static_cast<size_t>(N_));
    }
    // Flat index of the point shifted by delta grid steps along axis (wraps).
    std::size_t shifted(std::size_t idx, int axis, int delta) const {
        const int c = coord(idx, axis);
        int cn = (c + delta) % N_;
        if (cn < 0) cn += N_;
        return idx + (static_cast<size_t>(cn) - static_cast<size_t>(c)) * stride(axis);
    }
    double x(std::size_t idx, int axis) const { return coord(idx, axis) * h_; }
    std::vector<double> point(std::size_t idx) const;

    bool operator==(const TorusGrid& o) const {
        return n_ == o.n_ && N_ == o.N_ && scheme_ == o.scheme_;
    }

private:
    int n_ = 0;
    int N_ = 0;
    Scheme scheme_ = Scheme::central2;
    double h_ = 0.0;
    std::size_t points_ = 0;
    std::vector<std::size_t> strides_;
};

struct ScalarField {
    TorusGrid grid;
    std::vector<double> v;

    explicit ScalarField(const TorusGrid& g) : grid(g), v(g.points(), 0.0) {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

double mean(const ScalarField& f);
// Uniform-weight (trapezoidal on a torus) mean times the torus volume.
double mean_integral(const ScalarField& f);
double c0_norm(const ScalarField& f);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

// Pointwise quaternionic-matrix field.
struct MatrixField {
    TorusGrid grid;
    int n = 0;
    std::vector<Quat> data; // points * n * n, row-major per point

    explicit MatrixField(const TorusGrid& g)
        : grid(g), n(g.n()), data(g.points() * static_cast<size_t>(g.n()) * g.n()) {}

    QuatMatrix get(std::size_t idx) const {
        QuatMatrix m(n);
        const Quat* p = &data[idx * static_cast<size_t>(n) * n];
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) m.at(r, s) = p[r * n + s];
        return m;
    }
    void set(std::size_t idx, const QuatMatrix& m) {
        Quat* p = &data[idx * static_cast<size_t>(n) * n];
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) p[r * n + s] = m.at(r, s);
    }
};

MatrixField constant_matrix_field(const TorusGrid& g, const QuatMatrix& m);

} // namespace qht
