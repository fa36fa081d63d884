#include "qht/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qht/hypmatrix.hpp"
#include "qht/poisson.hpp"

namespace qht {

namespace {

bool is_identity(const QuatMatrix& m) {
    return max_abs_diff(m, QuatMatrix::identity(m.n())) < 1e-15;
}

QuatMatrix inv_sqrt_pd(const QuatMatrix& g) {
    require_hyperhermitian(g, 1e-10, "metric");
    const SpectralDecomposition dec = spectral_decomposition(g);
    QuatMatrix out(g.n());
    for (const SpectralGroup& grp : dec.groups) {
        if (grp.lambda <= 0.0)
            throw DomainError("metric is not positive definite");
        out += (1.0 / std::sqrt(grp.lambda)) * grp.projector;
    }
    return out;
}

// Re tr(A B) without forming the product
double trace_product_re(const QuatMatrix& a, const QuatMatrix& b) {
    const int n = a.n();
    double acc = 0.0;
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            const Quat& p = a.at(r, s);
            const Quat& q = b.at(s, r);
            acc += p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z;
        }
    return acc;
}

struct StateEval {
    bool admissible = true;
    double sup = 0.0;
    ScalarField residual;
};

StateEval eval_state(const EquationSetup& st, const MatrixField& a, const ScalarField& datum,
                     double beta, double margin) {
    StateEval ev{true, 0.0, ScalarField(st.grid)};
    const int n = st.grid.n();
    std::vector<double> shifted(static_cast<size_t>(n));
    for (std::size_t idx = 0; idx < st.grid.points(); ++idx) {
        const std::vector<double> lam = eigenvalues_hyp(a.get(idx));
        for (int i = 0; i < n; ++i) shifted[static_cast<size_t>(i)] = lam[static_cast<size_t>(i)] - margin;
        if (!st.cone.member(shifted)) {
            ev.admissible = false;
            return ev;
        }
        const double r = st.cone.f(lam) - datum.v[idx] - beta - st.log_offset;
        ev.residual.v[idx] = r;
        ev.sup = std::max(ev.sup, std::abs(r));
    }
    return ev;
}

// Fhat = g^{-1/2} (sum_i f_i(lambda) P_i) g^{-1/2} per point, plus the mean
// of Re tr(Fhat) / n used to scale the Laplacian preconditioner.
struct Linearization {
    MatrixField fhat;
    double c0 = 0.0;
};

Linearization build_linearization(const EquationSetup& st, const MatrixField& a) {
    Linearization lin{MatrixField(st.grid), 0.0};
    const bool ident = is_identity(st.g);
    double trace_acc = 0.0;
    for (std::size_t idx = 0; idx < st.grid.points(); ++idx) {
        const SpectralDecomposition dec = spectral_decomposition(a.get(idx));
        const std::vector<double> gvec = st.cone.grad(dec.eigenvalues);
        QuatMatrix f(st.grid.n());
        std::size_t pos = 0;
        for (const SpectralGroup& grp : dec.groups) {
            double gavg = 0.0;
            for (int m = 0; m < grp.multiplicity; ++m) gavg += gvec[pos + static_cast<size_t>(m)];
            gavg /= grp.multiplicity;
            f += gavg * grp.projector;
            pos += static_cast<size_t>(grp.multiplicity);
        }
        if (!ident) f = st.g_inv_sqrt * f * st.g_inv_sqrt;
        lin.fhat.set(idx, f);
        trace_acc += re_trace(f);
    }
    lin.c0 = trace_acc / (static_cast<double>(st.grid.points()) * st.grid.n());
    if (!(lin.c0 > 0.0))
        throw DomainError("linearization lost positivity (mean trace <= 0)");
    return lin;
}

struct KrylovOutcome {
    bool converged = false;
    int iterations = 0;
    double rel_residual = 1.0;
};

// Left-preconditioned restarted GMRES on a functional operator.
template <class ApplyA, class ApplyM>
KrylovOutcome gmres(const ApplyA& apply_a, const ApplyM& apply_m, const Eigen::VectorXd& b,
                    Eigen::VectorXd& x, double tol, int max_iter, int restart) {
    const double bnorm = apply_m(b).norm();
    if (bnorm == 0.0) {
        x.setZero();
        return {true, 0, 0.0};
    }
    KrylovOutcome out;
    while (out.iterations < max_iter) {
        Eigen::VectorXd r = apply_m(b - apply_a(x));
        const double beta = r.norm();
        out.rel_residual = beta / bnorm;
        if (out.rel_residual <= tol) {
            out.converged = true;
            return out;
        }
        const int m = std::min(restart, max_iter - out.iterations);
        Eigen::MatrixXd v(x.size(), m + 1);
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);
        std::vector<double> cs(static_cast<size_t>(m)), sn(static_cast<size_t>(m));
        Eigen::VectorXd s = Eigen::VectorXd::Zero(m + 1);
        v.col(0) = r / beta;
        s(0) = beta;
        int j = 0;
        bool breakdown = false;
        for (; j < m; ++j) {
            Eigen::VectorXd w = apply_m(apply_a(Eigen::VectorXd(v.col(j))));
            for (int i = 0; i <= j; ++i) {
                h(i, j) = w.dot(v.col(i));
                w -= h(i, j) * v.col(i);
            }
            const double hnext = w.norm();
            h(j + 1, j) = hnext;
            if (hnext > 0.0) v.col(j + 1) = w / hnext;
            for (int i = 0; i < j; ++i) {
                const double tmp = cs[static_cast<size_t>(i)] * h(i, j) + sn[static_cast<size_t>(i)] * h(i + 1, j);
                h(i + 1, j) = -sn[static_cast<size_t>(i)] * h(i, j) + cs[static_cast<size_t>(i)] * h(i + 1, j);
                h(i, j) = tmp;
            }
            const double denom = std::hypot(h(j, j), h(j + 1, j));
            cs[static_cast<size_t>(j)] = h(j, j) / denom;
            sn[static_cast<size_t>(j)] = h(j + 1, j) / denom;
            h(j, j) = denom;
            h(j + 1, j) = 0.0;
            s(j + 1) = -sn[static_cast<size_t>(j)] * s(j);
            s(j) = cs[static_cast<size_t>(j)] * s(j);
            ++out.iterations;
            out.rel_residual = std::abs(s(j + 1)) / bnorm;
            if (out.rel_residual <= tol || hnext == 0.0) {
                ++j;
                breakdown = (hnext == 0.0);
                break;
            }
        }
        if (j > 0) {
            const Eigen::VectorXd y =
                h.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(s.head(j));
            x += v.leftCols(j) * y;
        }
        if (out.rel_residual <= tol || breakdown) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

ScalarField blend_datum(const ScalarField& h0, const ScalarField& h1, double t) {
    ScalarField out = h0;
    out *= (1.0 - t);
    ScalarField part = h1;
    part *= t;
    out += part;
    return out;
}

} // namespace

EquationSetup make_setup(const TorusGrid& grid, Family family, int k,
                         const MatrixField& omega_input, const ScalarField& datum,
                         const QuatMatrix& g) {
    const int n = grid.n();
    if (!(omega_input.grid == grid) || !(datum.grid == grid))
        throw ConfigError("make_setup: field grids do not match");
    if (g.n() != n) throw ConfigError("make_setup: metric size does not match n");
    if (family == Family::hessian_k && (k < 1 || k > n))
        throw ConfigError("make_setup: sigma_k order must satisfy 1 <= k <= n");

    EquationSetup st{grid,
                     family,
                     family == Family::hessian_k ? k : n,
                     make_operator(family, n, k),
                     g,
                     inv_sqrt_pd(g),
                     MatrixField(grid),
                     datum,
                     0.0};
    st.log_offset = st.cone.f(std::vector<double>(static_cast<size_t>(n), 1.0));

    const bool ident = is_identity(g);
    const QuatMatrix g_inv =
        ident ? QuatMatrix::identity(n) : iota_inv(iota(g).inverse().eval());
    for (std::size_t idx = 0; idx < grid.points(); ++idx) {
        QuatMatrix om = omega_input.get(idx);
        require_hyperhermitian(om, 1e-10, "background form");
        if (family == Family::nm1_monge_ampere && n >= 2) {
            const double tr = ident ? re_trace(om) : trace_product_re(g_inv, om);
            QuatMatrix eff = tr * g;
            eff -= static_cast<double>(n - 1) * om;
            om = eff;
        }
        st.omega.set(idx, om);
        QuatMatrix sym = ident ? om : st.g_inv_sqrt * om * st.g_inv_sqrt;
        if (!st.cone.member(eigenvalues_hyp(sym)))
            throw DomainError("background form leaves the " + st.cone.name +
                              " cone at grid point " + std::to_string(idx));
    }
    return st;
}

EquationSetup make_setup(const TorusGrid& grid, Family family, int k,
                         const MatrixField& omega_input, const ScalarField& datum) {
    return make_setup(grid, family, k, omega_input, datum, QuatMatrix::identity(grid.n()));
}

MatrixField assemble_operand(const EquationSetup& setup, const ScalarField& phi) {
    if (!(phi.grid == setup.grid)) throw DomainError("assemble_operand: grid mismatch");
    MatrixField a = hess_q(phi);
    const bool ident = is_identity(setup.g);
    for (std::size_t idx = 0; idx < setup.grid.points(); ++idx) {
        QuatMatrix m = a.get(idx);
        m += setup.omega.get(idx);
        if (!ident) m = setup.g_inv_sqrt * m * setup.g_inv_sqrt;
        a.set(idx, m);
    }
    return a;
}

ScalarField background_datum(const EquationSetup& setup) {
    const MatrixField a = assemble_operand(setup, ScalarField(setup.grid));
    ScalarField h0(setup.grid);
    for (std::size_t idx = 0; idx < setup.grid.points(); ++idx)
        h0.v[idx] = setup.cone.f(eigenvalues_hyp(a.get(idx))) - setup.log_offset;
    return h0;
}

ScalarField residual_field(const EquationSetup& setup, const ScalarField& datum,
                           const ScalarField& phi, double b) {
    const MatrixField a = assemble_operand(setup, phi);
    const StateEval ev = eval_state(setup, a, datum, std::log(b), 0.0);
    if (!ev.admissible)
        throw DomainError("residual_field: operand leaves the " + setup.cone.name + " cone");
    return ev.residual;
}

double b_from_integral(const EquationSetup& setup, const ScalarField& phi) {
    const MatrixField a = assemble_operand(setup, phi);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t idx = 0; idx < setup.grid.points(); ++idx) {
        const std::vector<double> lam = eigenvalues_hyp(a.get(idx));
        if (!setup.cone.member(lam))
            throw DomainError("b_from_integral: operand leaves the " + setup.cone.name + " cone");
        num += std::exp(setup.cone.f(lam) - setup.log_offset);
        den += std::exp(setup.datum.v[idx]);
    }
    return num / den;
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "t,iter,residual_sup,b,c0,grad_sup,lap_sup,ratio,margin\n";
    os << std::setprecision(17);
    for (const DiagnosticsRow& r : rows)
        os << r.t << "," << r.iter << "," << r.residual_sup << "," << r.b << "," << r.c0 << ","
           << r.grad_sup << "," << r.lap_sup << "," << r.ratio << "," << r.margin << "\n";
}

namespace {

DiagnosticsRow make_row(const EquationSetup& st, const MatrixField& a, const ScalarField& phi,
                        double beta, double sup, int iter, double t_tag) {
    DiagnosticsRow row;
    row.t = t_tag;
    row.iter = iter;
    row.residual_sup = sup;
    row.b = std::exp(beta);
    row.c0 = c0_norm(phi);
    row.grad_sup = grad_supnorm(phi);
    row.lap_sup = c0_norm(laplacian_q(phi, st.g));
    row.ratio = row.lap_sup / (row.grad_sup * row.grad_sup + 1.0);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < st.grid.points(); ++idx)
        margin = std::min(margin, g0_shift(st.cone, eigenvalues_hyp(a.get(idx))));
    row.margin = margin;
    return row;
}

} // namespace

NewtonResult newton_solve(const EquationSetup& setup, const ScalarField& datum,
                          const ScalarField& phi0, double b0, const NewtonOptions& opts,
                          std::vector<DiagnosticsRow>* diagnostics, double t_tag) {
    if (!(datum.grid == setup.grid) || !(phi0.grid == setup.grid))
        throw DomainError("newton_solve: grid mismatch");
    if (!(b0 > 0.0)) throw DomainError("newton_solve: b must be positive");
    const TorusGrid& grid = setup.grid;
    const std::size_t P = grid.points();
    const bool ident = is_identity(setup.g);

    ScalarField phi = phi0;
    {
        const double mu = mean(phi);
        for (double& x : phi.v) x -= mu;
    }
    double beta = std::log(b0);

    PoissonSolver poisson(grid);

    NewtonResult res{phi, b0, 0, 0.0, {}};
    double c0 = 1.0;

    auto apply_a = [&](const Eigen::VectorXd& z, const MatrixField& fhat) -> Eigen::VectorXd {
        ScalarField psi(grid);
        std::copy(z.data(), z.data() + P, psi.v.begin());
        MatrixField hq = hess_q(psi);
        if (!ident)
            for (std::size_t idx = 0; idx < P; ++idx)
                hq.set(idx, setup.g_inv_sqrt * hq.get(idx) * setup.g_inv_sqrt);
        Eigen::VectorXd out(static_cast<Eigen::Index>(P) + 1);
        for (std::size_t idx = 0; idx < P; ++idx)
            out(static_cast<Eigen::Index>(idx)) =
                trace_product_re(fhat.get(idx), hq.get(idx)) - z(static_cast<Eigen::Index>(P));
        out(static_cast<Eigen::Index>(P)) = mean(psi);
        return out;
    };

    auto apply_m = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        ScalarField rho(grid);
        std::copy(v.data(), v.data() + P, rho.v.begin());
        const double mu = mean(rho);
        for (double& x : rho.v) x -= mu;
        const ScalarField sol = poisson.solve(rho);
        Eigen::VectorXd out(static_cast<Eigen::Index>(P) + 1);
        for (std::size_t idx = 0; idx < P; ++idx)
            out(static_cast<Eigen::Index>(idx)) = sol.v[idx] / c0 + v(static_cast<Eigen::Index>(P));
        out(static_cast<Eigen::Index>(P)) = -mu;
        return out;
    };

    for (int iter = 0;; ++iter) {
        MatrixField a = assemble_operand(setup, phi);
        StateEval ev = eval_state(setup, a, datum, beta, opts.membership_margin);
        if (!ev.admissible)
            throw AdmissibilityError("newton_solve: state leaves the " + setup.cone.name +
                                     " cone (iteration " + std::to_string(iter) + ")");
        res.residual_history.push_back(ev.sup);
        if (diagnostics && opts.collect_diagnostics)
            diagnostics->push_back(make_row(setup, a, phi, beta, ev.sup, iter, t_tag));
        if (ev.sup <= opts.tol) {
            res.phi = phi;
            res.b = std::exp(beta);
            res.iterations = iter;
            res.final_residual = ev.sup;
            return res;
        }
        if (iter >= opts.max_iter)
            throw MaxIterError("newton_solve: no convergence in " + std::to_string(opts.max_iter) +
                               " iterations (residual " + std::to_string(ev.sup) + ")");

        const Linearization lin = build_linearization(setup, a);
        c0 = lin.c0;

        Eigen::VectorXd rhs(static_cast<Eigen::Index>(P) + 1);
        for (std::size_t idx = 0; idx < P; ++idx)
            rhs(static_cast<Eigen::Index>(idx)) = -ev.residual.v[idx];
        rhs(static_cast<Eigen::Index>(P)) = 0.0;

        const double eta = ev.sup < opts.tighten_below ? opts.krylov_tight : opts.krylov_loose;
        Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(P) + 1);
        auto wrapped_a = [&](const Eigen::VectorXd& w) { return apply_a(w, lin.fhat); };
        const KrylovOutcome kr =
            gmres(wrapped_a, apply_m, rhs, z, eta, opts.krylov_max_iter, opts.krylov_restart);
        if (!kr.converged && kr.rel_residual > 0.5)
            throw KrylovError("newton_solve: linear solve stalled (relative residual " +
                              std::to_string(kr.rel_residual) + ")");

        ScalarField dphi(grid);
        std::copy(z.data(), z.data() + P, dphi.v.begin());
        const double dbeta = z(static_cast<Eigen::Index>(P));

        MatrixField hdelta = hess_q(dphi);
        if (!ident)
            for (std::size_t idx = 0; idx < P; ++idx)
                hdelta.set(idx, setup.g_inv_sqrt * hdelta.get(idx) * setup.g_inv_sqrt);

        double s = 1.0;
        bool accepted = false;
        while (s >= opts.min_step) {
            MatrixField a_trial = a;
            for (std::size_t idx = 0; idx < P; ++idx) {
                QuatMatrix m = a_trial.get(idx);
                QuatMatrix d = hdelta.get(idx);
                d *= s;
                m += d;
                a_trial.set(idx, m);
            }
            const double beta_trial = beta + s * dbeta;
            const StateEval trial =
                eval_state(setup, a_trial, datum, beta_trial, opts.membership_margin);
            if (trial.admissible && trial.sup <= (1.0 - opts.armijo * s) * ev.sup) {
                ScalarField phi_trial = phi;
                for (std::size_t idx = 0; idx < P; ++idx) phi_trial.v[idx] += s * dphi.v[idx];
                const double mu = mean(phi_trial);
                for (double& x : phi_trial.v) x -= mu;
                phi = phi_trial;
                beta = beta_trial;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted)
            throw LineSearchError("newton_solve: line search failed at residual " +
                                  std::to_string(ev.sup));
    }
}

ContinuityResult continuity_solve(const EquationSetup& setup, int steps,
                                  const NewtonOptions& opts) {
    if (steps < 1) throw ConfigError("continuity_solve: steps must be >= 1");
    ContinuityResult res{ScalarField(setup.grid), 1.0, {}, {}, 0, 0.0, {}, {}};
    const ScalarField h0 = background_datum(setup);

    ScalarField phi(setup.grid);
    double b = 1.0;

    auto accept = [&](const NewtonResult& r, double t) {
        phi = r.phi;
        b = r.b;
        res.t_path.push_back(t);
        res.iterations_per_step.push_back(r.iterations);
        res.total_iterations += r.iterations;
        res.residual_history.insert(res.residual_history.end(), r.residual_history.begin(),
                                    r.residual_history.end());
        res.final_residual = r.final_residual;
    };

    accept(newton_solve(setup, h0, phi, b, opts, &res.diagnostics, 0.0), 0.0);

    double t = 0.0;
    double dt = 1.0 / steps;
    const double min_dt = 1.0 / 64.0 * (1.0 - 1e-9);
    while (t < 1.0 - 1e-12) {
        const double t_next = std::min(1.0, t + dt);
        const ScalarField ht = blend_datum(h0, setup.datum, t_next);
        try {
            accept(newton_solve(setup, ht, phi, b, opts, &res.diagnostics, t_next), t_next);
            t = t_next;
        } catch (const Error& e) {
            dt *= 0.5;
            if (dt < min_dt) {
                std::ostringstream msg;
                msg << "continuity step from t=" << t << " failed at the minimum increment: "
                    << e.what();
                throw StepFailure(msg.str(), t, phi, b);
            }
        }
    }
    res.phi = phi;
    res.b = b;
    return res;
}

} // namespace qht
