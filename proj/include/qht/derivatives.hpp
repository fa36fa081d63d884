#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qht/grid.hpp"
#include "qht/hypmatrix.hpp"

namespace qht {

// Quaternion-valued field stored componentwise.
struct QuatField {
    std::array<ScalarField, 4> c;

    explicit QuatField(const TorusGrid& g) : c{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)} {}

    Quat get(std::size_t i) const { return Quat(c[0][i], c[1][i], c[2][i], c[3][i]); }
    void set(std::size_t i, const Quat& q) {
        c[0][i] = q.w; c[1][i] = q.x; c[2][i] = q.y; c[3][i] = q.z;
    }
};

double max_abs_diff(const QuatField& a, const QuatField& b);

// First derivative along one axis (periodic).  central2 uses the two-point
// centered difference; spectral applies the dense trigonometric
// differentiation matrix, which is exact on resolved Fourier modes.
ScalarField deriv1(const ScalarField& u, int axis);
// Second derivative along one axis (3-point stencil or spectral matrix).
ScalarField deriv2(const ScalarField& u, int axis);

// Dense 1-d differentiation matrices for an even-N periodic spectral grid.
std::vector<double> spectral_d1_matrix(int N);
std::vector<double> spectral_d2_matrix(int N);

// All second derivatives of u: same-axis entries use deriv2, mixed entries
// compose deriv1 twice.  Symmetric storage (upper triangle).
class SecondDerivativeTable {
public:
    explicit SecondDerivativeTable(const ScalarField& u);

    const ScalarField& at(int a, int b) const;
    // Dense symmetric 4n x 4n real Hessian at one grid point.
    Eigen::MatrixXd matrix_at(std::size_t idx) const;

    const TorusGrid& grid() const { return grid_; }

private:
    TorusGrid grid_;
    std::vector<ScalarField> entry_; // upper triangle, row-major
    std::size_t tri(int a, int b) const;
};

// Cauchy-Riemann-Fueter operators in the r-th quaternionic coordinate,
// applied to a quaternion-valued field.
//   dq    attaches the basis units on the right: sum_i (d_i F) * conj(e_i)
//   dqbar attaches them on the left:             sum_i e_i * (d_i F)
// The two operators commute exactly as discrete operators.
QuatField dq(const QuatField& f, int r);
QuatField dqbar(const QuatField& f, int r);
QuatField dq(const ScalarField& u, int r);
QuatField dqbar(const ScalarField& u, int r);
QuatField to_quat_field(const ScalarField& u);

// Quaternionic Hessian of a real field: the hyperhermitian n x n matrix field
// with entries H_rs = (1/4) sum_{i,j} conj(e_i) e_j d2u/(dx_i^r dx_j^s).
// Its real representation equals the commutant projection of the real
// Hessian: iota(hess_q u) = proj_p(D^2 u) at every grid point.
MatrixField hess_q(const ScalarField& u);
MatrixField hess_q(const SecondDerivativeTable& table);

// Re tr(g^{-1} hess_q u).  For g = Id this equals one quarter of the
// Euclidean Laplacian and is computed directly from deriv2.
ScalarField laplacian_q(const ScalarField& u);
ScalarField laplacian_q(const ScalarField& u, const QuatMatrix& g);

// sup over grid points of the Euclidean norm of the full gradient
double grad_supnorm(const ScalarField& u);

ScalarField field_from_function(const TorusGrid& g,
                                const std::function<double(const std::vector<double>&)>& fn);

} // namespace qht
