#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qht/errors.hpp"
#include "qht/quat.hpp"

namespace qht {

// Dense n x n quaternionic matrix, row-major.  Hyperhermitian-ness (M = M*)
// is a validated property, not a type invariant; operations that require it
// check and throw SymmetryError rather than symmetrize silently.
class QuatMatrix {
public:
    QuatMatrix() = default;
    explicit QuatMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    static QuatMatrix identity(int n) {
        QuatMatrix m(n);
        for (int r = 0; r < n; ++r) m.at(r, r) = Quat(1.0);
        return m;
    }
    static QuatMatrix diag(const std::vector<double>& d) {
        QuatMatrix m(static_cast<int>(d.size()));
        for (int r = 0; r < m.n_; ++r) m.at(r, r) = Quat(d[static_cast<size_t>(r)]);
        return m;
    }

    int n() const { return n_; }
    Quat& at(int r, int s) { return a_[static_cast<size_t>(r) * n_ + s]; }
    const Quat& at(int r, int s) const { return a_[static_cast<size_t>(r) * n_ + s]; }

    QuatMatrix conj_transpose() const;

    QuatMatrix& operator+=(const QuatMatrix& o);
    QuatMatrix& operator-=(const QuatMatrix& o);
    QuatMatrix& operator*=(double s);

    double max_abs() const;

private:
    int n_ = 0;
    std::vector<Quat> a_;
};

QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b);
QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b);
QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator*(double s, QuatMatrix a);

double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b);

// Re tr(M) (the trace of a hyperhermitian matrix is real).
double re_trace(const QuatMatrix& m);

// Hyperhermitian deviation max_{r,s} |M_rs - conj(M_sr)|.
double hyperhermitian_deviation(const QuatMatrix& m);
bool is_hyperhermitian(const QuatMatrix& m, double tol_scale = 1e-10);
// Throws SymmetryError when the deviation exceeds tol_scale * (1 + max|entry|).
void require_hyperhermitian(const QuatMatrix& m, double tol_scale = 1e-10,
                            const char* who = "matrix");

// Real representation.  iota maps A + iB + jC + kD to the 4n x 4n block
// matrix [[A,B,C,D],[-B,A,-D,C],[-C,D,A,-B],[-D,-C,B,A]]; it is an algebra
// homomorphism, iota(M*) = iota(M)^T, and its image is the commutant V of
// the structure matrices below.
Eigen::MatrixXd iota(const QuatMatrix& m);
// Reads the top block row back; exact inverse on iota's image.
QuatMatrix iota_inv(const Eigen::MatrixXd& m);

// Structure matrices I0, J0, K0 (block forms of the three complex structures).
struct StructureMatrices {
    Eigen::MatrixXd I0, J0, K0;
};
StructureMatrices structure_matrices(int n);

// Projection p(H) = 1/4 (H - I0 H I0 - J0 H J0 - K0 H K0) onto V.
Eigen::MatrixXd proj_p(const Eigen::MatrixXd& h);

// Pointwise assembly of the quaternionic Hessian from a real symmetric
// 4n x 4n matrix S (coordinates ordered x0^1..x0^n, x1^1..x1^n, ...):
//   H_rs = 1/4 sum_{i,j} conj(e_i) e_j S[(i,r),(j,s)].
// Satisfies iota(hess_from_real(S)) == proj_p(S) exactly, and inverts iota
// on hyperhermitian images: hess_from_real(iota(Q)) == Q.
QuatMatrix hess_from_real(const Eigen::MatrixXd& s);

// One representative per eigenvalue quadruple of iota(H), descending.
// Grouping tolerance: 1e-7 * (1 + spectral radius); GroupingError if the
// sorted spectrum does not split into near-equal quadruples.
std::vector<double> eigenvalues_hyp(const QuatMatrix& h);

// Spectral decomposition with hyperhermitian projectors.  Quadruples whose
// representatives differ by less than the grouping tolerance are merged into
// a single higher-rank projector.
struct SpectralGroup {
    double lambda = 0.0;   // representative eigenvalue
    int multiplicity = 1;  // number of merged quadruples
    QuatMatrix projector;  // hyperhermitian, rank = multiplicity
};
struct SpectralDecomposition {
    std::vector<double> eigenvalues;   // n representatives, descending
    std::vector<SpectralGroup> groups; // merged, descending
};
SpectralDecomposition spectral_decomposition(const QuatMatrix& h);

// Moore determinant as the product of the n representative eigenvalues.
double moore_det(const QuatMatrix& h);

// adjugate(H) = sum_i (prod_{j != i} lambda_j) P_i; equals moore_det(H) H^{-1}
// for invertible H.
QuatMatrix adjugate(const QuatMatrix& h);

// Majorization predicate: partial sums of mu (sorted descending) bounded by
// those of lambda, with equal totals.  Equivalent to mu lying in the convex
// hull of the permutations of lambda.
bool majorizes(const std::vector<double>& mu, const std::vector<double>& lambda,
               double tol = 1e-9);

} // namespace qht
