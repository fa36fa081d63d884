#include "qht/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

namespace qht {

namespace {

// scheme-dependent eigenvalue of the 1-d second-derivative operator on mode m
double d2_symbol(Scheme scheme, int m, int N, double h) {
    if (scheme == Scheme::central2) return (2.0 * std::cos(m * h) - 2.0) / (h * h);
    const int mm = (m <= N / 2) ? m : m - N;
    return -static_cast<double>(mm) * mm;
}

} // namespace

PoissonSolver::PoissonSolver(const TorusGrid& g) : grid_(g) {
    const int d = g.axes();
    const int N = g.points_per_axis();
    std::vector<int> dims(static_cast<size_t>(d), N);

    cplx_count_ = 1;
    for (int a = 0; a < d - 1; ++a) cplx_count_ *= static_cast<size_t>(N);
    const int last = N / 2 + 1;
    cplx_count_ *= static_cast<size_t>(last);

    real_buf_ = fftw_alloc_real(g.points());
    fftw_complex* cbuf = fftw_alloc_complex(cplx_count_);
    cplx_buf_ = cbuf;
    plan_fwd_ = fftw_plan_dft_r2c(d, dims.data(), real_buf_, cbuf, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r(d, dims.data(), cbuf, real_buf_, FFTW_ESTIMATE);

    symbol_.assign(cplx_count_, 0.0);
    for (std::size_t c = 0; c < cplx_count_; ++c) {
        std::size_t rem = c;
        double s = 0.0;
        bool zero_mode = true;
        for (int a = d - 1; a >= 0; --a) {
            const int extent = (a == d - 1) ? last : N;
            const int m = static_cast<int>(rem % static_cast<size_t>(extent));
            rem /= static_cast<size_t>(extent);
            if (m != 0) zero_mode = false;
            s += d2_symbol(g.scheme(), m, N, g.h());
        }
        symbol_[c] = zero_mode ? 0.0 : 0.25 * s;
    }
}

PoissonSolver::~PoissonSolver() {
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    if (real_buf_) fftw_free(real_buf_);
    if (cplx_buf_) fftw_free(cplx_buf_);
}

ScalarField PoissonSolver::solve(const ScalarField& rho) {
    if (!(rho.grid == grid_)) throw DomainError("PoissonSolver: field grid mismatch");
    std::memcpy(real_buf_, rho.v.data(), grid_.points() * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));

    fftw_complex* cbuf = static_cast<fftw_complex*>(cplx_buf_);
    const double scale = 1.0 / static_cast<double>(grid_.points());
    for (std::size_t c = 0; c < cplx_count_; ++c) {
        if (symbol_[c] == 0.0) {
            cbuf[c][0] = 0.0;
            cbuf[c][1] = 0.0;
        } else {
            const double f = scale / symbol_[c];
            cbuf[c][0] *= f;
            cbuf[c][1] *= f;
        }
    }

    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    ScalarField out(grid_);
    std::memcpy(out.v.data(), real_buf_, grid_.points() * sizeof(double));
    return out;
}

} // namespace qht
