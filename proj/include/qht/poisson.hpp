#pragma once

#include <vector>

#include "qht/grid.hpp"

namespace qht {

// Inverts the constant-coefficient quaternionic Laplacian (one quarter of the
// Euclidean Laplacian) on the torus via real-to-complex FFT.  The Fourier
// symbol matches the grid's derivative scheme exactly, so solve() is an exact
// inverse of laplacian_q on mean-zero fields.  The zero mode of the input is
// discarded and the returned field has zero mean.
class PoissonSolver {
public:
    explicit PoissonSolver(const TorusGrid& g);
    ~PoissonSolver();
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    ScalarField solve(const ScalarField& rho);

    const TorusGrid& grid() const { return grid_; }

private:
    TorusGrid grid_;
    std::size_t cplx_count_ = 0;
    std::vector<double> symbol_; // per r2c mode, 0 at the zero mode
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    double* real_buf_ = nullptr;
    void* cplx_buf_ = nullptr;
};

} // namespace qht
