#pragma once

#include <cmath>
#include <ostream>

namespace qht {

// Quaternion q = w + x i + y j + z k over doubles.
struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    // basis element e_i, i in 0..3
    static constexpr Quat unit(int i) {
        switch (i) {
            case 0: return {1, 0, 0, 0};
            case 1: return {0, 1, 0, 0};
            case 2: return {0, 0, 1, 0};
            default: return {0, 0, 0, 1};
        }
    }

    constexpr double operator[](int i) const {
        return i == 0 ? w : i == 1 ? x : i == 2 ? y : z;
    }
    constexpr double& operator[](int i) {
        return i == 0 ? w : i == 1 ? x : i == 2 ? y : z;
    }

    constexpr Quat conj() const { return {w, -x, -y, -z}; }
    constexpr double re() const { return w; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double abs() const { return std::sqrt(norm2()); }

    constexpr Quat& operator+=(const Quat& o) {
        w += o.w; x += o.x; y += o.y; z += o.z; return *this;
    }
    constexpr Quat& operator-=(const Quat& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this;
    }
    constexpr Quat& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s; return *this;
    }
};

constexpr Quat operator+(Quat a, const Quat& b) { return a += b; }
constexpr Quat operator-(Quat a, const Quat& b) { return a -= b; }
constexpr Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quat operator*(const Quat& a, double s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
constexpr Quat operator*(double s, const Quat& a) { return a * s; }

constexpr Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quat inverse(const Quat& a) { return a.conj() * (1.0 / a.norm2()); }

inline double max_abs_component(const Quat& a) {
    return std::max(std::max(std::fabs(a.w), std::fabs(a.x)),
                    std::max(std::fabs(a.y), std::fabs(a.z)));
}

inline std::ostream& operator<<(std::ostream& os, const Quat& q) {
    return os << "[" << q.w << "," << q.x << "," << q.y << "," << q.z << "]";
}

} // namespace qht
