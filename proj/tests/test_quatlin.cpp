#include <doctest.h>

#include <cmath>
#include <random>

#include "qht/hypmatrix.hpp"
#include "qht/quat.hpp"
#include "qht/verify.hpp"

using namespace qht;

namespace {

QuatMatrix from_components(int n, const double* w, const double* x, const double* y,
                           const double* z) {
    QuatMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            const int t = r * n + s;
            m.at(r, s) = Quat(w[t], x[t], y[t], z[t]);
        }
    return m;
}

} // namespace

TEST_SUITE("quatlin") {

TEST_CASE("basis multiplication table") {
    const Quat one = Quat::unit(0), i = Quat::unit(1), j = Quat::unit(2), k = Quat::unit(3);
    CHECK(max_abs_component(i * i - Quat(-1.0)) == 0.0);
    CHECK(max_abs_component(j * j - Quat(-1.0)) == 0.0);
    CHECK(max_abs_component(k * k - Quat(-1.0)) == 0.0);
    CHECK(max_abs_component(i * j - k) == 0.0);
    CHECK(max_abs_component(j * i + k) == 0.0);
    CHECK(max_abs_component(j * k - i) == 0.0);
    CHECK(max_abs_component(k * i - j) == 0.0);
    CHECK(max_abs_component(i * j * k - Quat(-1.0)) == 0.0);
    CHECK(max_abs_component(one * i - i) == 0.0);
}

TEST_CASE("quaternion conjugation and inverse") {
    const Quat q(1.0, -2.0, 0.5, 3.0);
    CHECK((q * q.conj()).w == doctest::Approx(q.norm2()).epsilon(1e-15));
    CHECK(max_abs_component(q * inverse(q) - Quat(1.0)) < 1e-15);
    CHECK(max_abs_component(inverse(q) * q - Quat(1.0)) < 1e-15);
    const Quat p(0.3, 1.0, -1.0, 0.25);
    // (pq)* = q* p*
    CHECK(max_abs_component((p * q).conj() - q.conj() * p.conj()) < 1e-15);
}

TEST_CASE("iota of [[i]] and the structure matrices") {
    QuatMatrix m(1);
    m.at(0, 0) = Quat(0.0, 1.0, 0.0, 0.0);
    const Eigen::MatrixXd im = iota(m);
    Eigen::MatrixXd expect(4, 4);
    expect << 0, 1, 0, 0,
             -1, 0, 0, 0,
              0, 0, 0, -1,
              0, 0, 1, 0;
    CHECK((im - expect).cwiseAbs().maxCoeff() == 0.0);

    // iota([[i]]) is the right-multiplication model; it commutes with the
    // structure matrices and is distinct from I0.
    const auto sm = structure_matrices(1);
    CHECK((sm.I0 * im - im * sm.I0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sm.I0 - im).cwiseAbs().maxCoeff() > 1.0);
    CHECK((sm.I0 * sm.I0 + Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sm.I0 * sm.J0 - sm.K0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("iota is an algebra homomorphism") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 4; ++n) {
        const QuatMatrix a = random_quat_matrix(rng, n);
        const QuatMatrix b = random_quat_matrix(rng, n);
        CHECK((iota(a * b) - iota(a) * iota(b)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((iota(a + b) - (iota(a) + iota(b))).cwiseAbs().maxCoeff() == 0.0);
        CHECK((iota(a.conj_transpose()) - iota(a).transpose()).cwiseAbs().maxCoeff() == 0.0);
        // image lies in the commutant of I0, J0, K0
        const auto sm = structure_matrices(n);
        const Eigen::MatrixXd ia = iota(a);
        CHECK((sm.I0 * ia - ia * sm.I0).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((sm.J0 * ia - ia * sm.J0).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((sm.K0 * ia - ia * sm.K0).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(max_abs_diff(iota_inv(ia), a) == 0.0);
    }
}

TEST_CASE("commutant projection fixes iota images and is idempotent") {
    std::mt19937_64 rng(12);
    for (int n = 1; n <= 3; ++n) {
        const QuatMatrix a = random_quat_matrix(rng, n);
        const Eigen::MatrixXd ia = iota(a);
        CHECK((proj_p(ia) - ia).cwiseAbs().maxCoeff() < 1e-13);

        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd s(4 * n, 4 * n);
        for (int r = 0; r < 4 * n; ++r)
            for (int c = r; c < 4 * n; ++c) s(r, c) = s(c, r) = u(rng);
        const Eigen::MatrixXd ps = proj_p(s);
        CHECK((proj_p(ps) - ps).cwiseAbs().maxCoeff() < 1e-13);
        // projection is orthogonal: <s - p(s), p(s)> = 0
        CHECK(std::fabs(((s - ps).transpose() * ps).trace()) < 1e-10);
        // hess_from_real composes to the same projection
        CHECK((iota(hess_from_real(s)) - ps).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(max_abs_diff(hess_from_real(iota(random_hyperhermitian(rng, n))),
                           random_hyperhermitian(rng, n)) > 0.0); // distinct draws differ
        const QuatMatrix h = random_hyperhermitian(rng, n);
        CHECK(max_abs_diff(hess_from_real(iota(h)), h) < 1e-14);
    }
}

TEST_CASE("hyperhermitian validation") {
    QuatMatrix m(2);
    m.at(0, 0) = Quat(1.0);
    m.at(1, 1) = Quat(2.0);
    m.at(0, 1) = Quat(0.0, 0.0, 1.0, 0.0);  // j
    m.at(1, 0) = Quat(0.0, 0.0, -1.0, 0.0); // -j = conj(j)
    CHECK(is_hyperhermitian(m));
    CHECK_NOTHROW(require_hyperhermitian(m));
    CHECK(hyperhermitian_deviation(m) == 0.0);
    CHECK(re_trace(m) == 3.0);

    m.at(1, 0) = Quat(0.0, 0.0, 1.0, 0.0); // break the symmetry
    CHECK(!is_hyperhermitian(m));
    CHECK_THROWS_AS(require_hyperhermitian(m), SymmetryError);
    CHECK_THROWS_AS(eigenvalues_hyp(m), SymmetryError);

    // diagonal must be real
    QuatMatrix d(1);
    d.at(0, 0) = Quat(1.0, 0.5, 0.0, 0.0);
    CHECK(!is_hyperhermitian(d));
}

TEST_CASE("eigenvalues of [[1,j],[-j,2]]") {
    QuatMatrix m(2);
    m.at(0, 0) = Quat(1.0);
    m.at(1, 1) = Quat(2.0);
    m.at(0, 1) = Quat(0.0, 0.0, 1.0, 0.0);
    m.at(1, 0) = Quat(0.0, 0.0, -1.0, 0.0);
    const auto lam = eigenvalues_hyp(m);
    REQUIRE(lam.size() == 2);
    // descending roots of x^2 - 3x + 1
    const double hi = (3.0 + std::sqrt(5.0)) / 2.0;
    const double lo = (3.0 - std::sqrt(5.0)) / 2.0;
    CHECK(lam[0] == doctest::Approx(hi).epsilon(1e-14));
    CHECK(lam[1] == doctest::Approx(lo).epsilon(1e-14));
    CHECK(moore_det(m) == doctest::Approx(1.0).epsilon(1e-13)); // ab - |q|^2
}

TEST_CASE("eigenvalues of diagonal matrices and quadrupling") {
    const QuatMatrix d = QuatMatrix::diag({3.0, -1.0, 0.5});
    const auto lam = eigenvalues_hyp(d);
    REQUIRE(lam.size() == 3);
    CHECK(lam[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lam[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(lam[2] == doctest::Approx(-1.0).epsilon(1e-14));

    // every eigenvalue of the real representation appears four times
    const Eigen::MatrixXd id = iota(d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(id);
    const auto& ev = es.eigenvalues();
    REQUIRE(ev.size() == 12);
    for (int t = 0; t < 12; t += 4)
        for (int u = 1; u < 4; ++u)
            CHECK(std::fabs(ev[t] - ev[t + u]) < 1e-12);
}

TEST_CASE("moore determinant of 2x2 hyperhermitian") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = u(rng), b = u(rng);
        const Quat q(u(rng), u(rng), u(rng), u(rng));
        QuatMatrix m(2);
        m.at(0, 0) = Quat(a);
        m.at(1, 1) = Quat(b);
        m.at(0, 1) = q;
        m.at(1, 0) = q.conj();
        CHECK(moore_det(m) == doctest::Approx(a * b - q.norm2()).epsilon(1e-11));
        // fourth power matches the full real determinant
        CHECK(std::pow(moore_det(m), 4) ==
              doctest::Approx(iota(m).determinant()).epsilon(1e-9));
    }
}

TEST_CASE("adjugate on diagonal and against the inverse") {
    const QuatMatrix d = QuatMatrix::diag({1.0, 2.0, 3.0});
    const QuatMatrix adj = adjugate(d);
    CHECK(adj.at(0, 0).w == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(adj.at(1, 1).w == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(adj.at(2, 2).w == doctest::Approx(2.0).epsilon(1e-13));
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
            if (r != s) CHECK(adj.at(r, s).abs() < 1e-13);

    // adjugate(H) * H = moore_det(H) * Id via the real representation
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const QuatMatrix h = random_hyperhermitian(rng, 3);
        if (std::fabs(moore_det(h)) < 1e-3) continue;
        const Eigen::MatrixXd prod = iota(adjugate(h)) * iota(h);
        const Eigen::MatrixXd expect =
            moore_det(h) * Eigen::MatrixXd::Identity(12, 12);
        CHECK((prod - expect).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("spectral projectors reconstruct the matrix") {
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 4; ++n) {
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const auto dec = spectral_decomposition(h);
        QuatMatrix acc(n);
        QuatMatrix psum(n);
        int mult = 0;
        for (const auto& gproj : dec.groups) {
            acc += gproj.lambda * gproj.projector;
            psum += gproj.projector;
            mult += gproj.multiplicity;
            CHECK(is_hyperhermitian(gproj.projector));
            // idempotent
            CHECK(max_abs_diff(gproj.projector * gproj.projector, gproj.projector) < 1e-10);
        }
        CHECK(mult == n);
        CHECK(max_abs_diff(acc, h) < 1e-10);
        CHECK(max_abs_diff(psum, QuatMatrix::identity(n)) < 1e-10);
    }
}

TEST_CASE("repeated eigenvalues merge into one projector") {
    const QuatMatrix d = QuatMatrix::diag({2.0, 2.0, -1.0});
    const auto dec = spectral_decomposition(d);
    REQUIRE(dec.groups.size() == 2);
    CHECK(dec.groups[0].lambda == doctest::Approx(2.0));
    CHECK(dec.groups[0].multiplicity == 2);
    CHECK(dec.groups[1].multiplicity == 1);
}

TEST_CASE("majorization predicate") {
    CHECK(majorizes({2.0, 1.0, 0.0}, {3.0, 0.0, 0.0}));
    CHECK(!majorizes({3.0, 0.0, 0.0}, {2.0, 1.0, 0.0}));
    CHECK(majorizes({1.0, 1.0, 1.0}, {3.0, 0.0, 0.0}));
    CHECK(majorizes({1.5, 1.5}, {3.0, 0.0}));
    CHECK(!majorizes({1.0, 1.0}, {3.0, 0.0}));      // totals differ
    CHECK(majorizes({2.0, 1.0}, {2.0, 1.0}));       // reflexive
    // order of the input entries must not matter
    CHECK(majorizes({0.0, 1.0, 2.0}, {0.0, 0.0, 3.0}));
}

TEST_CASE("majorization agrees with the permutation-hull oracle") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<double> lam(n), mu(n);
        for (auto& v : lam) v = u(rng);
        double s = 0.0;
        for (int t = 0; t < n - 1; ++t) { mu[t] = u(rng); s += mu[t]; }
        double ls = 0.0;
        for (double v : lam) ls += v;
        mu[n - 1] = ls - s; // force equal totals
        const bool a = majorizes(mu, lam, 1e-9);
        const bool b = in_permutation_hull(mu, lam, 1e-9);
        // skip near-boundary draws where the two tolerances may disagree
        const bool a_loose = majorizes(mu, lam, 1e-5);
        const bool a_tight = majorizes(mu, lam, 1e-13);
        if (a_loose != a_tight) continue;
        CHECK(a == b);
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("eigenvalue invariance under quaternionic unitary conjugation") {
    std::mt19937_64 rng(25);
    for (int n = 2; n <= 4; ++n) {
        const QuatMatrix h = random_hyperhermitian(rng, n);
        const QuatMatrix su = random_sp_unitary(rng, n);
        CHECK(max_abs_diff(su.conj_transpose() * su, QuatMatrix::identity(n)) < 1e-12);
        const QuatMatrix conj = su.conj_transpose() * h * su;
        const auto l1 = eigenvalues_hyp(h);
        const auto l2 = eigenvalues_hyp(conj);
        for (int t = 0; t < n; ++t)
            CHECK(l1[static_cast<size_t>(t)] ==
                  doctest::Approx(l2[static_cast<size_t>(t)]).epsilon(1e-10));
        CHECK(moore_det(h) == doctest::Approx(moore_det(conj)).epsilon(1e-9));
    }
}

TEST_CASE("matrix component literals round-trip through iota blocks") {
    const double w[] = {1.0, 0.25, 0.25, 2.0};
    const double x[] = {0.0, 0.5, -0.5, 0.0};
    const double y[] = {0.0, -0.75, 0.75, 0.0};
    const double z[] = {0.0, 0.125, -0.125, 0.0};
    const QuatMatrix m = from_components(2, w, x, y, z);
    REQUIRE(is_hyperhermitian(m));
    const Eigen::MatrixXd im = iota(m);
    REQUIRE(im.rows() == 8);
    // top block row carries (A, B, C, D)
    CHECK(im(0, 0) == 1.0);
    CHECK(im(0, 3) == 0.5);   // B block at columns n..2n-1
    CHECK(im(0, 5) == -0.75); // C block
    CHECK(im(0, 7) == 0.125); // D block
    CHECK((im - im.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

} // TEST_SUITE
