#include "qht/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "qht/cones.hpp"
#include "qht/forms.hpp"

namespace qht {

bool VerifyReport::all_passed() const {
    for (const PropertyResult& p : properties)
        if (!p.passed()) return false;
    return true;
}

namespace {

double max_abs(const Eigen::MatrixXd& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd s(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c) s(r, c) = s(c, r) = u(rng);
    return s;
}

// Runs one named property over `trials` seeded trials.  The trial callback
// returns an error magnitude (negative = trial skipped); throwing counts as
// a failure.
class SuiteRunner {
public:
    SuiteRunner(std::string suite, std::uint64_t seed, int trials) : seed_(seed), trials_(trials) {
        report_.suite = std::move(suite);
        report_.seed = seed;
        report_.trials = trials;
    }

    void property(const std::string& name, double tol,
                  const std::function<double(std::mt19937_64&, int)>& trial) {
        PropertyResult pr;
        pr.name = name;
        pr.tol = tol;
        std::mt19937_64 rng(seed_ ^ (std::hash<std::string>{}(name) | 1ULL));
        for (int t = 0; t < trials_; ++t) {
            double err = 0.0;
            try {
                err = trial(rng, t);
            } catch (const std::exception& e) {
                ++pr.trials;
                ++pr.failures;
                if (pr.note.empty())
                    pr.note = "trial " + std::to_string(t) + " threw: " + e.what();
                continue;
            }
            if (err < 0.0) continue;
            ++pr.trials;
            pr.worst = std::max(pr.worst, err);
            if (err > tol) {
                ++pr.failures;
                if (pr.note.empty()) {
                    std::ostringstream os;
                    os << "trial " << t << " error " << std::scientific << std::setprecision(3)
                       << err << " exceeds tol " << tol;
                    pr.note = os.str();
                }
            }
        }
        report_.properties.push_back(std::move(pr));
    }

    VerifyReport take() { return std::move(report_); }

private:
    VerifyReport report_;
    std::uint64_t seed_;
    int trials_;
};

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
}

} // namespace

QuatMatrix random_quat_matrix(std::mt19937_64& rng, int n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    QuatMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) m.at(r, s) = Quat(u(rng), u(rng), u(rng), u(rng));
    return m;
}

QuatMatrix random_hyperhermitian(std::mt19937_64& rng, int n, double scale) {
    QuatMatrix m = random_quat_matrix(rng, n, scale);
    QuatMatrix h = m;
    h += m.conj_transpose();
    h *= 0.5;
    return h;
}

QuatMatrix random_sp_unitary(std::mt19937_64& rng, int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const QuatMatrix m = random_quat_matrix(rng, n, 1.0);
        std::vector<std::vector<Quat>> cols(static_cast<size_t>(n),
                                            std::vector<Quat>(static_cast<size_t>(n)));
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) cols[static_cast<size_t>(j)][static_cast<size_t>(r)] = m.at(r, j);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            auto& vj = cols[static_cast<size_t>(j)];
            for (int i = 0; i < j; ++i) {
                const auto& ui = cols[static_cast<size_t>(i)];
                Quat q(0.0);
                for (int r = 0; r < n; ++r) q += ui[static_cast<size_t>(r)].conj() * vj[static_cast<size_t>(r)];
                for (int r = 0; r < n; ++r) vj[static_cast<size_t>(r)] -= ui[static_cast<size_t>(r)] * q;
            }
            double nrm2 = 0.0;
            for (int r = 0; r < n; ++r) nrm2 += vj[static_cast<size_t>(r)].norm2();
            if (nrm2 < 1e-8) {
                ok = false;
                break;
            }
            const double inv = 1.0 / std::sqrt(nrm2);
            for (int r = 0; r < n; ++r) vj[static_cast<size_t>(r)] = inv * vj[static_cast<size_t>(r)];
        }
        if (!ok) continue;
        QuatMatrix u(n);
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < n; ++r) u.at(r, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(r)];
        return u;
    }
    throw Error("random_sp_unitary: could not orthonormalize");
}

std::vector<double> random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = u(rng);
    return v;
}

bool in_permutation_hull(const std::vector<double>& mu, const std::vector<double>& lambda,
                         double tol) {
    const int n = static_cast<int>(mu.size());
    if (lambda.size() != mu.size()) throw DomainError("in_permutation_hull: size mismatch");
    if (n < 1 || n > 6) throw DomainError("in_permutation_hull: n out of range 1..6");

    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<double>> cols;
    std::vector<int> sorted_perm = perm;
    do {
        std::vector<double> c(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = lambda[static_cast<size_t>(sorted_perm[static_cast<size_t>(i)])];
        cols.push_back(std::move(c));
    } while (std::next_permutation(sorted_perm.begin(), sorted_perm.end()));

    const int m = n + 1;                       // equality rows
    const int K = static_cast<int>(cols.size());
    const int width = K + m + 1;               // structural + artificial + rhs
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, width);
    double rhs_scale = 0.0;
    for (int i = 0; i < m; ++i) {
        const double rhs = (i < n) ? mu[static_cast<size_t>(i)] : 1.0;
        rhs_scale += std::abs(rhs);
        const double sgn = rhs < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < K; ++j)
            t(i, j) = sgn * (i < n ? cols[static_cast<size_t>(j)][static_cast<size_t>(i)] : 1.0);
        t(i, K + i) = 1.0;
        t(i, width - 1) = sgn * rhs;
    }
    // phase-1 objective: minimize the artificial sum; reduced-cost row with
    // the artificial basis eliminated
    for (int j = 0; j < K; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += t(i, j);
        t(m, j) = -s;
    }
    double rhs_sum = 0.0;
    for (int i = 0; i < m; ++i) rhs_sum += t(i, width - 1);
    t(m, width - 1) = -rhs_sum;

    std::vector<int> basis(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = K + i;

    const int total_cols = K + m;
    for (int pivots = 0; pivots < 20000; ++pivots) {
        int enter = -1;
        for (int j = 0; j < total_cols; ++j)
            if (t(m, j) < -1e-12) {
                enter = j;
                break; // Bland's rule
            }
        if (enter < 0) break;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) <= 1e-12) continue;
            const double ratio = t(i, width - 1) / t(i, enter);
            if (leave < 0 || ratio < best_ratio - 1e-15 ||
                (std::abs(ratio - best_ratio) <= 1e-15 &&
                 basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false; // unbounded: infeasible artifact
        const double piv = t(leave, enter);
        t.row(leave) /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t(i, enter);
            if (f != 0.0) t.row(i) -= f * t.row(leave);
        }
        basis[static_cast<size_t>(leave)] = enter;
    }
    const double objective = -t(m, width - 1);
    return objective <= tol * (1.0 + rhs_scale);
}

VerifyReport verify_algebra(std::uint64_t seed, int trials, const IotaFn& iota_hook) {
    const IotaFn io = iota_hook ? iota_hook : [](const QuatMatrix& m) { return iota(m); };
    SuiteRunner run("algebra", seed, trials);

    run.property("iota_homomorphism", 1e-12, [&io](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix a = random_quat_matrix(rng, n);
        const QuatMatrix b = random_quat_matrix(rng, n);
        const Eigen::MatrixXd lhs = io(a * b);
        const Eigen::MatrixXd rhs = io(a) * io(b);
        return max_abs(lhs - rhs) / (1.0 + max_abs(rhs));
    });

    run.property("iota_conj_transpose", 1e-12, [&io](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix a = random_quat_matrix(rng, n);
        const Eigen::MatrixXd lhs = io(a.conj_transpose());
        const Eigen::MatrixXd rhs = io(a).transpose();
        return max_abs(lhs - rhs) / (1.0 + max_abs(rhs));
    });

    run.property("iota_image_in_commutant", 1e-12, [&io](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix a = random_quat_matrix(rng, n);
        const Eigen::MatrixXd m = io(a);
        const StructureMatrices s = structure_matrices(n);
        double err = max_abs(m * s.I0 - s.I0 * m);
        err = std::max(err, max_abs(m * s.J0 - s.J0 * m));
        err = std::max(err, max_abs(m * s.K0 - s.K0 * m));
        return err / (1.0 + max_abs(m));
    });

    run.property("commutant_projection_idempotent_fixes_image", 1e-12,
                 [&io](std::mt19937_64& rng, int t) {
                     const int n = t % 5 + 1;
                     const Eigen::MatrixXd s = random_symmetric(rng, 4 * n);
                     const Eigen::MatrixXd ps = proj_p(s);
                     double err = max_abs(proj_p(ps) - ps) / (1.0 + max_abs(ps));
                     const QuatMatrix h = random_hyperhermitian(rng, n);
                     const Eigen::MatrixXd ih = io(h);
                     err = std::max(err, max_abs(proj_p(ih) - ih) / (1.0 + max_abs(ih)));
                     return err;
                 });

    run.property("hessian_assembly_inverts_representation", 1e-12,
                 [](std::mt19937_64& rng, int t) {
                     const int n = t % 5 + 1;
                     const QuatMatrix h = random_hyperhermitian(rng, n);
                     double err = max_abs_diff(hess_from_real(iota(h)), h);
                     const Eigen::MatrixXd s = random_symmetric(rng, 4 * n);
                     err = std::max(err, max_abs(iota(hess_from_real(s)) - proj_p(s)));
                     return err;
                 });

    run.property("eigenvalue_quadrupling", 1e-7, [](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(iota(h), Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues();
        const double radius = std::max(std::abs(ev(0)), std::abs(ev(4 * n - 1)));
        double spread = 0.0;
        for (int g = 0; g < n; ++g)
            spread = std::max(spread, ev(4 * g + 3) - ev(4 * g));
        const std::vector<double> reps = eigenvalues_hyp(h); // throws on bad grouping
        double match = 0.0;
        for (int g = 0; g < n; ++g) {
            double mean4 = 0.0;
            for (int j = 0; j < 4; ++j) mean4 += ev(4 * g + j);
            mean4 /= 4.0;
            match = std::max(match, std::abs(reps[static_cast<size_t>(n - 1 - g)] - mean4));
        }
        return std::max(spread, match) / (1.0 + radius);
    });

    run.property("spectral_projector_reconstruction", 1e-9, [](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const SpectralDecomposition dec = spectral_decomposition(h);
        QuatMatrix sum(n), weighted(n);
        double err = 0.0;
        for (std::size_t i = 0; i < dec.groups.size(); ++i) {
            const QuatMatrix& p = dec.groups[i].projector;
            sum += p;
            weighted += dec.groups[i].lambda * p;
            err = std::max(err, max_abs_diff(p * p, p));
            for (std::size_t j = 0; j < i; ++j)
                err = std::max(err, (p * dec.groups[j].projector).max_abs());
        }
        err = std::max(err, max_abs_diff(sum, QuatMatrix::identity(n)));
        err = std::max(err, max_abs_diff(weighted, h) / (1.0 + h.max_abs()));
        return err;
    });

    run.property("moore_det_fourth_power", 1e-9, [&io](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const double md = moore_det(h);
        const double det = io(h).determinant();
        return std::abs(md * md * md * md - det) / (1.0 + std::abs(det));
    });

    run.property("adjugate_times_matrix", 1e-8, [](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const std::vector<double> ev = eigenvalues_hyp(h);
        double min_abs = 1e300;
        for (double e : ev) min_abs = std::min(min_abs, std::abs(e));
        if (min_abs < 0.05) return -1.0; // skip near-singular draws
        const double md = moore_det(h);
        const QuatMatrix lhs = adjugate(h) * h;
        const QuatMatrix rhs = md * QuatMatrix::identity(n);
        return max_abs_diff(lhs, rhs) / (1.0 + std::abs(md));
    });

    run.property("schur_majorization", 0.5, [](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 1;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        std::vector<double> diag(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) diag[static_cast<size_t>(r)] = h.at(r, r).w;
        return majorizes(diag, eigenvalues_hyp(h)) ? 0.0 : 1.0;
    });

    run.property("majorization_matches_hull", 0.5, [](std::mt19937_64& rng, int t) {
        const int n = t % 4 + 1;
        const std::vector<double> lam = random_vector(rng, n, -2.0, 2.0);
        std::uniform_int_distribution<int> coin(0, 1);
        if (coin(rng)) {
            // random convex combination of permutations: must lie in the hull
            std::vector<double> mu(static_cast<size_t>(n), 0.0);
            std::vector<double> w = random_vector(rng, 3, 0.0, 1.0);
            double tot = w[0] + w[1] + w[2];
            for (double& x : w) x /= tot;
            for (int c = 0; c < 3; ++c) {
                std::vector<int> p(static_cast<size_t>(n));
                std::iota(p.begin(), p.end(), 0);
                std::shuffle(p.begin(), p.end(), rng);
                for (int i = 0; i < n; ++i)
                    mu[static_cast<size_t>(i)] += w[static_cast<size_t>(c)] * lam[static_cast<size_t>(p[static_cast<size_t>(i)])];
            }
            const bool maj = majorizes(mu, lam);
            const bool hull = in_permutation_hull(mu, lam);
            return (maj && hull) ? 0.0 : 1.0;
        }
        // perturbed tuple with matched total: predicates must agree off-boundary
        std::vector<double> mu = lam;
        std::vector<double> dir = random_vector(rng, n, -1.0, 1.0);
        double dm = 0.0;
        for (double x : dir) dm += x;
        dm /= n;
        std::uniform_real_distribution<double> amp(0.0, 0.8);
        const double a = amp(rng);
        for (int i = 0; i < n; ++i) mu[static_cast<size_t>(i)] += a * (dir[static_cast<size_t>(i)] - dm);
        const std::vector<double> ls = sorted_desc(lam);
        const std::vector<double> ms = sorted_desc(mu);
        double slack = 1e300, pl = 0.0, pm = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            pl += ls[static_cast<size_t>(i)];
            pm += ms[static_cast<size_t>(i)];
            slack = std::min(slack, pl - pm);
        }
        if (n == 1 || std::abs(slack) < 1e-6) return -1.0; // borderline; skip
        const bool maj = majorizes(mu, lam);
        const bool hull = in_permutation_hull(mu, lam);
        return (maj == hull && maj == (slack > 0.0)) ? 0.0 : 1.0;
    });

    run.property("sp_conjugation_invariance", 1e-8, [](std::mt19937_64& rng, int t) {
        const int n = t % 4 + 2;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const QuatMatrix u = random_sp_unitary(rng, n);
        double err = max_abs_diff(u.conj_transpose() * u, QuatMatrix::identity(n)) * 1e-2;
        const std::vector<double> e1 = eigenvalues_hyp(h);
        const std::vector<double> e2 = eigenvalues_hyp(u.conj_transpose() * h * u);
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(e1[static_cast<size_t>(i)] - e2[static_cast<size_t>(i)]) /
                                    (1.0 + std::abs(e1[static_cast<size_t>(i)])));
        return err;
    });

    return run.take();
}

VerifyReport verify_cones(std::uint64_t seed, int trials) {
    SuiteRunner run("cones", seed, trials);

    auto pick_family = [](std::mt19937_64& rng, int n) -> std::pair<ConeOperator, int> {
        std::uniform_int_distribution<int> fam(0, 2);
        const int which = fam(rng);
        if (which == 0) {
            std::uniform_int_distribution<int> kd(1, n);
            const int k = kd(rng);
            return {hessian_operator(n, k), k};
        }
        if (which == 1) return {ma_operator(n), n};
        return {nm1_ma_operator(n), n};
    };

    auto interior_point = [](std::mt19937_64& rng, const ConeOperator& op, int n) {
        std::vector<double> lam = random_vector(rng, n, 0.3, 2.3);
        const double s = g0_shift(op, lam);
        for (double& x : lam) x -= 0.45 * s; // keep well inside, allow negatives
        return lam;
    };

    run.property("sigma_recurrence_matches_enumeration", 1e-12, [](std::mt19937_64& rng, int t) {
        const int n = t % 8 + 1;
        const std::vector<double> lam = random_vector(rng, n, -2.0, 2.0);
        double err = 0.0;
        for (int r = 0; r <= n; ++r) {
            const double a = sigma(r, lam);
            const double b = sigma_enumerated(r, lam);
            err = std::max(err, std::abs(a - b) / (1.0 + std::abs(b)));
        }
        return err;
    });

    run.property("gradient_matches_finite_difference", 1e-6, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        std::vector<double> lam = interior_point(rng, op, n);
        const std::vector<double> g = op.grad(lam);
        const double h = 1e-6;
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> p = lam, q = lam;
            p[static_cast<size_t>(i)] += h;
            q[static_cast<size_t>(i)] -= h;
            const double fd = (op.f(p) - op.f(q)) / (2.0 * h);
            err = std::max(err, std::abs(fd - g[static_cast<size_t>(i)]) / (1.0 + std::abs(fd)));
        }
        return err;
    });

    run.property("hessian_matches_finite_difference", 1e-5, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        std::vector<double> lam = interior_point(rng, op, n);
        const Eigen::MatrixXd hess = op.hess(lam);
        const double h = 1e-5;
        double err = 0.0;
        const double scale = 1.0 + max_abs(hess);
        for (int j = 0; j < n; ++j) {
            std::vector<double> p = lam, q = lam;
            p[static_cast<size_t>(j)] += h;
            q[static_cast<size_t>(j)] -= h;
            const std::vector<double> gp = op.grad(p);
            const std::vector<double> gq = op.grad(q);
            for (int i = 0; i < n; ++i) {
                const double fd = (gp[static_cast<size_t>(i)] - gq[static_cast<size_t>(i)]) / (2.0 * h);
                err = std::max(err, std::abs(fd - hess(i, j)) / scale);
            }
        }
        return err;
    });

    run.property("monotonicity", 0.0, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        const std::vector<double> g = op.grad(interior_point(rng, op, n));
        double worst = 0.0;
        for (double gi : g) worst = std::max(worst, -gi);
        return worst;
    });

    run.property("concavity", 1e-8, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        const Eigen::MatrixXd hess = op.hess(interior_point(rng, op, n));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess, Eigen::EigenvaluesOnly);
        return es.eigenvalues().maxCoeff() / (1.0 + max_abs(hess));
    });

    run.property("log_homogeneity", 1e-11, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        const int deg = k; // sigma_k order, or n for the determinant families
        const std::vector<double> lam = interior_point(rng, op, n);
        std::uniform_real_distribution<double> td(0.5, 3.0);
        const double tt = td(rng);
        std::vector<double> scaled = lam;
        for (double& x : scaled) x *= tt;
        return std::abs(op.f(scaled) - op.f(lam) - deg * std::log(tt));
    });

    run.property("permutation_symmetry", 1e-11, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        const std::vector<double> lam = interior_point(rng, op, n);
        std::vector<int> p(static_cast<size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        std::vector<double> perm(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = lam[static_cast<size_t>(p[static_cast<size_t>(i)])];
        if (op.member(perm) != op.member(lam)) return 1.0;
        double err = std::abs(op.f(perm) - op.f(lam));
        const std::vector<double> g = op.grad(lam);
        const std::vector<double> gp = op.grad(perm);
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(gp[static_cast<size_t>(i)] - g[static_cast<size_t>(p[static_cast<size_t>(i)])]));
        return err;
    });

    run.property("boundary_shift_bisection", 0.5, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        const std::vector<double> lam = interior_point(rng, op, n);
        const double s = g0_shift(op, lam);
        const double eps = 1e-6 * (1.0 + std::abs(s));
        std::vector<double> inside = lam, outside = lam;
        for (double& x : inside) x -= s - eps;
        for (double& x : outside) x -= s + eps;
        if (!op.member(inside) || op.member(outside)) return 1.0;
        if (op.name == "monge_ampere" || (op.name == "nm1_monge_ampere" && n == 1)) {
            const double mn = *std::min_element(lam.begin(), lam.end());
            if (std::abs(s - mn) > 1e-10 * (1.0 + std::abs(mn))) return 1.0;
        }
        return 0.0;
    });

    run.property("boundary_blowdown", 0.5, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        const std::vector<double> lam = interior_point(rng, op, n);
        const double s = g0_shift(op, lam);
        std::vector<double> near = lam;
        for (double& x : near) x -= s - 1e-10 * (1.0 + std::abs(s));
        if (!op.member(near)) return -1.0; // rounding pushed it out; skip
        return (op.f(near) < -10.0) ? 0.0 : 1.0;
    });

    run.property("subsolution_probe_accepts_log_families", 0.5, [&](std::mt19937_64& rng, int t) {
        const int n = t % 6 + 1;
        auto [op, k] = pick_family(rng, n);
        (void)k;
        const std::vector<double> lam = interior_point(rng, op, n);
        return is_c_subsolution_point(op, lam, op.f(lam) + 1.0) ? 0.0 : 1.0;
    });

    run.property("subsolution_probe_rejects_bounded_operator", 0.5,
                 [](std::mt19937_64& rng, int t) {
                     const int n = t % 5 + 2;
                     ConeOperator op;
                     op.n = n;
                     op.name = "log_min_eigenvalue";
                     op.member = [](const std::vector<double>& lam) {
                         for (double x : lam)
                             if (x <= 0.0) return false;
                         return true;
                     };
                     op.f = [](const std::vector<double>& lam) {
                         return std::log(*std::min_element(lam.begin(), lam.end()));
                     };
                     const std::vector<double> lam = random_vector(rng, n, 0.5, 2.0);
                     return is_c_subsolution_point(op, lam, op.f(lam) - 0.1) ? 1.0 : 0.0;
                 });

    run.property("nm1_transform_identities", 1e-12, [](std::mt19937_64& rng, int t) {
        const int n = t % 5 + 2;
        const std::vector<double> lam = random_vector(rng, n, -2.0, 2.0);
        const std::vector<double> tl = nm1_transform(lam);
        double sum = 0.0, tsum = 0.0;
        for (double x : lam) sum += x;
        for (double x : tl) tsum += x;
        double err = std::abs(tsum - sum) / (1.0 + std::abs(sum));
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs((n - 1) * tl[static_cast<size_t>(i)] + lam[static_cast<size_t>(i)] - sum) /
                                    (1.0 + std::abs(sum)));
        return err;
    });

    return run.take();
}

VerifyReport verify_forms(std::uint64_t seed, int trials) {
    SuiteRunner run("forms", seed, trials);

    run.property("wedge_ratio_matches_sigma", 1e-12, [](std::mt19937_64& rng, int t) {
        const int n = t % 3 + 1;
        const std::vector<double> lam = random_vector(rng, n, -2.0, 2.0);
        double err = 0.0;
        for (int k = 0; k <= n; ++k) {
            double binom = 1.0;
            for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
            const double expected = sigma(k, lam) / binom;
            err = std::max(err, std::abs(wedge_ratio(lam, k) - expected) / (1.0 + std::abs(expected)));
        }
        return err;
    });

    run.property("hodge_star_eigs_are_complement_products", 1e-12, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        const std::vector<double> lam = random_vector(rng, n, -2.0, 2.0);
        const std::vector<double> got = hodge_star_eigs(lam);
        const std::vector<double> want = complement_products(lam);
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(got[static_cast<size_t>(i)] - want[static_cast<size_t>(i)]) /
                                    (1.0 + std::abs(want[static_cast<size_t>(i)])));
        return err;
    });

    run.property("hodge_identity_determinant", 1e-10, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        return hodge_identity1_error(random_vector(rng, n, 0.2, 2.2));
    });

    run.property("hodge_identity_top_ratio", 1e-10, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        return hodge_identity2_error(random_vector(rng, n, -2.0, 2.0),
                                     random_vector(rng, n, 0.2, 2.2));
    });

    run.property("hodge_identity_partial_trace", 1e-10, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        return hodge_identity3_error(random_vector(rng, n, -2.0, 2.0));
    });

    run.property("complement_product_inverse_roundtrip", 1e-11, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        const std::vector<double> lam = random_vector(rng, n, 0.2, 2.2);
        const std::vector<double> back = complement_products_inverse(complement_products(lam));
        double err = 0.0;
        for (int i = 0; i < n; ++i)
            err = std::max(err, std::abs(back[static_cast<size_t>(i)] - lam[static_cast<size_t>(i)]) /
                                    (1.0 + std::abs(lam[static_cast<size_t>(i)])));
        return err;
    });

    run.property("wedge_algebra", 1e-12, [](std::mt19937_64& rng, int t) {
        const int dim = (t % 2 + 2) * 2;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Multivector a(dim), b(dim), c(dim);
        for (int i = 0; i < dim; ++i) {
            a[1u << i] = u(rng);
            b[1u << i] = u(rng);
        }
        for (unsigned mask = 0; mask < (1u << dim); ++mask) c[mask] = u(rng);
        const Multivector ab = a.wedge(b);
        const Multivector ba = b.wedge(a);
        double err = 0.0;
        for (unsigned mask = 0; mask < (1u << dim); ++mask)
            err = std::max(err, std::abs(ab[mask] + ba[mask]));
        const Multivector assoc1 = a.wedge(b).wedge(c);
        const Multivector assoc2 = a.wedge(b.wedge(c));
        for (unsigned mask = 0; mask < (1u << dim); ++mask)
            err = std::max(err, std::abs(assoc1[mask] - assoc2[mask]));
        return err;
    });

    run.property("star_involution_on_two_forms", 1e-14, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        const Multivector m = blade_form(random_vector(rng, n, -2.0, 2.0));
        const Multivector mm = m.hodge_star().hodge_star();
        double err = 0.0;
        for (unsigned mask = 0; mask < (1u << (2 * n)); ++mask)
            err = std::max(err, std::abs(mm[mask] - m[mask]));
        return err;
    });

    run.property("matrix_adjugate_composition", 1e-8, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const std::vector<double> ev = eigenvalues_hyp(h);
        double min_abs = 1e300;
        for (double e : ev) min_abs = std::min(min_abs, std::abs(e));
        if (min_abs < 0.05) return -1.0;
        const double md = moore_det(h);
        QuatMatrix rhs = h;
        rhs *= std::pow(md, n - 2);
        const QuatMatrix lhs = adjugate(adjugate(h));
        return max_abs_diff(lhs, rhs) / (1.0 + rhs.max_abs());
    });

    run.property("sp_invariance_of_moore_det", 1e-9, [](std::mt19937_64& rng, int t) {
        const int n = t % 2 + 2;
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const QuatMatrix u = random_sp_unitary(rng, n);
        const double a = moore_det(h);
        const double b = moore_det(u.conj_transpose() * h * u);
        return std::abs(a - b) / (1.0 + std::abs(a));
    });

    return run.take();
}

std::vector<VerifyReport> verify_all(std::uint64_t seed, int trials) {
    return {verify_algebra(seed, trials), verify_cones(seed, trials), verify_forms(seed, trials)};
}

void print_report(std::ostream& os, const VerifyReport& report) {
    os << "suite " << report.suite << " seed=" << report.seed << " trials=" << report.trials
       << "\n";
    for (const PropertyResult& p : report.properties) {
        std::ostringstream worst;
        worst << std::scientific << std::setprecision(2) << p.worst;
        os << "  [" << (p.passed() ? "PASS" : "FAIL") << "] " << p.name << " trials=" << p.trials
           << " worst=" << worst.str() << " tol=" << p.tol;
        if (!p.note.empty()) os << "  (" << p.note << ")";
        os << "\n";
    }
    os << "suite " << report.suite << ": " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
}

} // namespace qht
