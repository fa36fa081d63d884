#include "qht/hypmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qht {

QuatMatrix QuatMatrix::conj_transpose() const {
    QuatMatrix out(n_);
    for (int r = 0; r < n_; ++r)
        for (int s = 0; s < n_; ++s) out.at(r, s) = at(s, r).conj();
    return out;
}

QuatMatrix& QuatMatrix::operator+=(const QuatMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}
QuatMatrix& QuatMatrix::operator-=(const QuatMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}
QuatMatrix& QuatMatrix::operator*=(double s) {
    for (auto& q : a_) q *= s;
    return *this;
}

double QuatMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& q : a_) m = std::max(m, max_abs_component(q));
    return m;
}

QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
QuatMatrix operator*(double s, QuatMatrix a) { return a *= s; }

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
    const int n = a.n();
    QuatMatrix c(n);
    for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t) {
            const Quat& art = a.at(r, t);
            for (int s = 0; s < n; ++s) c.at(r, s) += art * b.at(t, s);
        }
    return c;
}

double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b) {
    double m = 0.0;
    for (int r = 0; r < a.n(); ++r)
        for (int s = 0; s < a.n(); ++s)
            m = std::max(m, max_abs_component(a.at(r, s) - b.at(r, s)));
    return m;
}

double re_trace(const QuatMatrix& m) {
    double t = 0.0;
    for (int r = 0; r < m.n(); ++r) t += m.at(r, r).w;
    return t;
}

double hyperhermitian_deviation(const QuatMatrix& m) {
    double d = 0.0;
    for (int r = 0; r < m.n(); ++r)
        for (int s = 0; s < m.n(); ++s)
            d = std::max(d, max_abs_component(m.at(r, s) - m.at(s, r).conj()));
    return d;
}

bool is_hyperhermitian(const QuatMatrix& m, double tol_scale) {
    return hyperhermitian_deviation(m) <= tol_scale * (1.0 + m.max_abs());
}

void require_hyperhermitian(const QuatMatrix& m, double tol_scale, const char* who) {
    const double dev = hyperhermitian_deviation(m);
    const double tol = tol_scale * (1.0 + m.max_abs());
    if (dev > tol) {
        std::ostringstream os;
        os << who << " is not hyperhermitian: deviation " << dev << " > " << tol;
        throw SymmetryError(os.str());
    }
}

Eigen::MatrixXd iota(const QuatMatrix& m) {
    const int n = m.n();
    Eigen::MatrixXd out(4 * n, 4 * n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            const Quat& q = m.at(r, s);
            const double A = q.w, B = q.x, C = q.y, D = q.z;
            out(r, s) = A;          out(r, n + s) = B;      out(r, 2 * n + s) = C;  out(r, 3 * n + s) = D;
            out(n + r, s) = -B;     out(n + r, n + s) = A;  out(n + r, 2 * n + s) = -D; out(n + r, 3 * n + s) = C;
            out(2 * n + r, s) = -C; out(2 * n + r, n + s) = D; out(2 * n + r, 2 * n + s) = A; out(2 * n + r, 3 * n + s) = -B;
            out(3 * n + r, s) = -D; out(3 * n + r, n + s) = -C; out(3 * n + r, 2 * n + s) = B; out(3 * n + r, 3 * n + s) = A;
        }
    return out;
}

QuatMatrix iota_inv(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows()) / 4;
    QuatMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            out.at(r, s) = Quat(m(r, s), m(r, n + s), m(r, 2 * n + s), m(r, 3 * n + s));
    return out;
}

StructureMatrices structure_matrices(int n) {
    const auto I = Eigen::MatrixXd::Identity(n, n);
    const int d = 4 * n;
    StructureMatrices s{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                        Eigen::MatrixXd::Zero(d, d)};
    auto blk = [n](Eigen::MatrixXd& m, int br, int bc) {
        return m.block(br * n, bc * n, n, n);
    };
    blk(s.I0, 0, 1) = -I; blk(s.I0, 1, 0) = I; blk(s.I0, 2, 3) = -I; blk(s.I0, 3, 2) = I;
    blk(s.J0, 0, 2) = -I; blk(s.J0, 1, 3) = I; blk(s.J0, 2, 0) = I;  blk(s.J0, 3, 1) = -I;
    blk(s.K0, 0, 3) = -I; blk(s.K0, 1, 2) = -I; blk(s.K0, 2, 1) = I; blk(s.K0, 3, 0) = I;
    return s;
}

Eigen::MatrixXd proj_p(const Eigen::MatrixXd& h) {
    const int n = static_cast<int>(h.rows()) / 4;
    const auto s = structure_matrices(n);
    return 0.25 * (h - s.I0 * h * s.I0 - s.J0 * h * s.J0 - s.K0 * h * s.K0);
}

QuatMatrix hess_from_real(const Eigen::MatrixXd& s) {
    const int n = static_cast<int>(s.rows()) / 4;
    QuatMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Quat acc;
            for (int i = 0; i < 4; ++i) {
                const Quat ei_bar = Quat::unit(i).conj();
                for (int j = 0; j < 4; ++j)
                    acc += (ei_bar * Quat::unit(j)) * s(i * n + r, j * n + c);
            }
            out.at(r, c) = 0.25 * acc;
        }
    return out;
}

namespace {

// Eigenvalues of iota(H) grouped into quadruples; validates hyperhermitian-ness
// and the quadruple structure.  Returns the full ascending spectrum.
Eigen::VectorXd real_spectrum_checked(const QuatMatrix& h, Eigen::MatrixXd* vectors) {
    require_hyperhermitian(h);
    const Eigen::MatrixXd m = iota(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (vectors) {
        es.compute(m);
        *vectors = es.eigenvectors();
    } else {
        es.compute(m, Eigen::EigenvaluesOnly);
    }
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed");
    const Eigen::VectorXd w = es.eigenvalues();
    const double radius = std::max(std::fabs(w(0)), std::fabs(w(w.size() - 1)));
    const double gtol = 1e-7 * (1.0 + radius);
    for (int g = 0; g < h.n(); ++g) {
        const double spread = w(4 * g + 3) - w(4 * g);
        if (spread > gtol) {
            std::ostringstream os;
            os << "spectrum not partitionable into quadruples: group " << g
               << " spread " << spread << " > " << gtol;
            throw GroupingError(os.str());
        }
    }
    return w;
}

} // namespace

std::vector<double> eigenvalues_hyp(const QuatMatrix& h) {
    const Eigen::VectorXd w = real_spectrum_checked(h, nullptr);
    std::vector<double> reps(static_cast<size_t>(h.n()));
    for (int g = 0; g < h.n(); ++g)
        reps[static_cast<size_t>(h.n() - 1 - g)] =
            0.25 * (w(4 * g) + w(4 * g + 1) + w(4 * g + 2) + w(4 * g + 3));
    return reps;
}

SpectralDecomposition spectral_decomposition(const QuatMatrix& h) {
    Eigen::MatrixXd vecs;
    const Eigen::VectorXd w = real_spectrum_checked(h, &vecs);
    const int n = h.n();
    const double radius = std::max(std::fabs(w(0)), std::fabs(w(4 * n - 1)));
    const double gtol = 1e-7 * (1.0 + radius);

    SpectralDecomposition out;
    out.eigenvalues.resize(static_cast<size_t>(n));
    std::vector<double> reps(static_cast<size_t>(n)); // ascending group reps
    for (int g = 0; g < n; ++g) {
        reps[static_cast<size_t>(g)] =
            0.25 * (w(4 * g) + w(4 * g + 1) + w(4 * g + 2) + w(4 * g + 3));
        out.eigenvalues[static_cast<size_t>(n - 1 - g)] = reps[static_cast<size_t>(g)];
    }

    // Merge quadruples with near-equal representatives into one projector.
    int g = 0;
    std::vector<SpectralGroup> groups;
    while (g < n) {
        int last = g;
        while (last + 1 < n && reps[static_cast<size_t>(last + 1)] - reps[static_cast<size_t>(g)] <= gtol)
            ++last;
        const int cols = 4 * (last - g + 1);
        const auto basis = vecs.middleCols(4 * g, cols);
        // The real projector commutes with the structure matrices up to
        // rounding; p cleans it before pulling back.
        const Eigen::MatrixXd pr = proj_p(basis * basis.transpose());
        SpectralGroup grp;
        grp.multiplicity = last - g + 1;
        double lam = 0.0;
        for (int i = g; i <= last; ++i) lam += reps[static_cast<size_t>(i)];
        grp.lambda = lam / grp.multiplicity;
        grp.projector = iota_inv(pr);
        groups.push_back(std::move(grp));
        g = last + 1;
    }
    std::reverse(groups.begin(), groups.end()); // descending
    out.groups = std::move(groups);
    return out;
}

double moore_det(const QuatMatrix& h) {
    const auto ev = eigenvalues_hyp(h);
    double p = 1.0;
    for (double v : ev) p *= v;
    return p;
}

QuatMatrix adjugate(const QuatMatrix& h) {
    const auto dec = spectral_decomposition(h);
    const int n = h.n();
    QuatMatrix out(n);
    for (size_t i = 0; i < dec.groups.size(); ++i) {
        // Product of all eigenvalues except one copy of this group's value.
        double coeff = 1.0;
        for (size_t j = 0; j < dec.groups.size(); ++j) {
            const auto& gj = dec.groups[j];
            const int m = gj.multiplicity - (j == i ? 1 : 0);
            for (int t = 0; t < m; ++t) coeff *= gj.lambda;
        }
        // For merged groups every member quadruple gets this same coefficient,
        // so scaling the merged projector covers all of them at once.
        QuatMatrix term = dec.groups[i].projector;
        term *= coeff;
        out += term;
    }
    return out;
}

bool majorizes(const std::vector<double>& mu, const std::vector<double>& lambda,
               double tol) {
    if (mu.size() != lambda.size()) throw DomainError("majorizes: size mismatch");
    std::vector<double> a = mu, b = lambda;
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    const double scale =
        1.0 + std::max(std::fabs(a.front()), std::fabs(a.back())) +
        std::max(std::fabs(b.front()), std::fabs(b.back()));
    double sa = 0.0, sb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        if (sa > sb + tol * scale) return false;
    }
    return std::fabs(sa - sb) <= tol * scale;
}

} // namespace qht
