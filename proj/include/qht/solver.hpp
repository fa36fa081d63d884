#pragma once

#include <string>
#include <vector>

#include "qht/cones.hpp"
#include "qht/derivatives.hpp"
#include "qht/grid.hpp"

namespace qht {

// Problem data for the torus equation
//   f(lambda_g(Omega + Hess_q phi)) = h + log b,   mean(phi) = 0,
// where f is the cone operator of the selected family and b > 0 is the
// unknown normalizing constant.  For the (n-1) family the effective
// background is Omega = Re tr_g(Omega1) g - (n-1) Omega1, which together with
// the transformed cone operator reproduces the equation on
// Omega1 + T(Hess_q phi).
struct EquationSetup {
    TorusGrid grid;
    Family family;
    int k = 0; // order for the sigma_k family
    ConeOperator cone;
    QuatMatrix g;          // constant hyperhermitian positive-definite metric
    QuatMatrix g_inv_sqrt; // cached g^{-1/2}
    MatrixField omega;     // effective background entering A
    ScalarField datum;     // h at t = 1
    double log_offset = 0.0; // f at the unit eigenvalue tuple
};

EquationSetup make_setup(const TorusGrid& grid, Family family, int k,
                         const MatrixField& omega_input, const ScalarField& datum,
                         const QuatMatrix& g);
EquationSetup make_setup(const TorusGrid& grid, Family family, int k,
                         const MatrixField& omega_input, const ScalarField& datum);

// g^{-1/2} (Omega + Hess_q phi) g^{-1/2}, the symmetrized operand whose
// eigenvalues the equation constrains.
MatrixField assemble_operand(const EquationSetup& setup, const ScalarField& phi);

// Datum solved exactly by (phi, b) = (0, 1):  f(lambda(operand at 0)) - offset.
ScalarField background_datum(const EquationSetup& setup);

// f(lambda(operand)) - datum - log b - offset; DomainError if the operand
// leaves the cone anywhere.
ScalarField residual_field(const EquationSetup& setup, const ScalarField& datum,
                           const ScalarField& phi, double b);

// The compatibility value mean(exp(f - offset)) / mean(exp(datum)) determined
// by integrating the equation against the volume normalization.
double b_from_integral(const EquationSetup& setup, const ScalarField& phi);

struct DiagnosticsRow {
    double t = 0.0;
    int iter = 0;
    double residual_sup = 0.0;
    double b = 1.0;
    double c0 = 0.0;       // max |phi|
    double grad_sup = 0.0; // sup |grad phi|
    double lap_sup = 0.0;  // sup |laplacian_q phi|
    double ratio = 0.0;    // lap_sup / (grad_sup^2 + 1)
    double margin = 0.0;   // min over points of the cone-boundary shift
};

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

struct NewtonOptions {
    double tol = 1e-11;            // sup-norm residual target
    int max_iter = 50;
    double armijo = 1e-4;          // sup-norm decrease factor per unit step
    double min_step = 9.3132257461547852e-10; // 2^-30
    double membership_margin = 1e-12;
    double krylov_loose = 1e-3;    // inexact forcing term
    double krylov_tight = 1e-8;
    double tighten_below = 1e-4;   // residual level that switches the forcing
    int krylov_max_iter = 400;
    int krylov_restart = 60;
    bool collect_diagnostics = true;
};

struct NewtonResult {
    ScalarField phi;
    double b = 1.0;
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history; // entry 0 is the initial residual
};

// Damped inexact Newton on the bordered system in (phi, log b).  The
// linearized operator psi -> Re tr(Fhat Hess_q psi) is preconditioned by the
// exact FFT inverse of c0 * laplacian_q with c0 = mean Re tr(Fhat) / n.
NewtonResult newton_solve(const EquationSetup& setup, const ScalarField& datum,
                          const ScalarField& phi0, double b0, const NewtonOptions& opts,
                          std::vector<DiagnosticsRow>* diagnostics = nullptr,
                          double t_tag = 1.0);

// Thrown by continuity_solve when a step fails at the smallest allowed
// increment; carries the last successfully solved state.
struct StepFailure : Error {
    StepFailure(const std::string& msg, double t, ScalarField phi, double b)
        : Error(msg), t_failed(t), last_good_phi(std::move(phi)), last_good_b(b) {}
    double t_failed;
    ScalarField last_good_phi;
    double last_good_b;
};

struct ContinuityResult {
    ScalarField phi;
    double b = 1.0;
    std::vector<double> t_path;           // accepted parameter values, first is 0
    std::vector<int> iterations_per_step; // Newton iterations per accepted step
    int total_iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
    std::vector<DiagnosticsRow> diagnostics;
};

// Path continuation h_t = t h + (1 - t) h0 from the exactly-solved background
// state.  The step is halved on any solver failure, down to 1/64; past that a
// StepFailure carrying the last good state is thrown.
ContinuityResult continuity_solve(const EquationSetup& setup, int steps = 4,
                                  const NewtonOptions& opts = NewtonOptions{});

} // namespace qht
