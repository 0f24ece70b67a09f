#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "testutil.hpp"
#include "tmom/opcheck.hpp"

using namespace tmom;
using testutil::random_complex;
using testutil::random_normal_matrix;
using testutil::random_unitary;
using testutil::uniform_int;

namespace {

Matrix jordan2(double t = 1.0) {
    Matrix j(2, 2);
    j(0, 1) = t;
    return j;
}

OperatorTuple single(const Matrix& a) { return {1, {a}}; }

}  // namespace

TEST_CASE("power words") {
    const OperatorTuple a = single(jordan2());
    const Matrix id = power_word(a, {0});
    CHECK(id(0, 0) == Coeff{1.0});
    CHECK(id(1, 1) == Coeff{1.0});

    const Matrix sq = power_word(a, {2});  // nilpotent squares to zero
    CHECK(sq.frobenius() == 0.0);

    // adjoint side
    const Matrix adj = power_word(a, {-1});
    CHECK(adj(1, 0) == Coeff{1.0});

    OperatorTuple two{2, {jordan2(), Matrix::identity(2)}};
    const Matrix w = power_word(two, {-1, -2});
    CHECK(w(1, 0) == Coeff{1.0});  // A1* I = A1*
    CHECK_THROWS_AS(power_word(two, {1, -1}), MixedSignMultiIndex);
}

TEST_CASE("same-sign power words compose") {
    // the ordered-product definition makes A^(a+b) = A^a A^b an identity for
    // kappa = 1 and for commuting tuples; both flavors are sampled here
    for (int trial = 0; trial < 100; ++trial) {
        const int kappa = uniform_int(1, 3);
        OperatorTuple tup;
        tup.kappa = kappa;
        if (kappa == 1) {
            Matrix m(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) m(r, c) = random_complex();
            tup.matrices.push_back(m);
        } else {
            const Matrix q = random_unitary(3);
            for (int i = 0; i < kappa; ++i) {
                Matrix d(3, 3);
                for (int r = 0; r < 3; ++r) d(r, r) = random_complex();
                tup.matrices.push_back(q * d * q.adjoint());
            }
        }
        std::vector<int> alpha(kappa), beta(kappa), sum(kappa);
        for (int i = 0; i < kappa; ++i) {
            alpha[i] = uniform_int(0, 2);
            beta[i] = uniform_int(0, 2);
            sum[i] = alpha[i] + beta[i];
        }
        const Matrix lhs = power_word(tup, sum);
        const Matrix rhs = power_word(tup, alpha) * power_word(tup, beta);
        CHECK((lhs - rhs).frobenius() < 1e-8 * std::max(1.0, rhs.frobenius()));
    }
}

TEST_CASE("contraction certificate block structure") {
    const OperatorCoefficientSystem sys = contraction_certificate(1, 1);
    CHECK(sys.m == 2);
    CHECK(sys.coefficients.size() == 4);

    // identity operator passes with zero margin
    const BlockCheckResult id = dilation_block_check(single(Matrix::identity(2)), sys, 1e-9);
    CHECK(id.pass);
    CHECK(id.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-10));

    // eigenvalues of [[I, A*],[A, I]] are 1 +- singular values of A
    for (double t : {0.5, 1.0, 1.5}) {
        const BlockCheckResult r = dilation_block_check(single(jordan2(t)), sys, 1e-9);
        CHECK(r.min_eigenvalue == doctest::Approx(1.0 - t).epsilon(1e-9));
        CHECK(r.pass == (t <= 1.0));
    }
}

TEST_CASE("analytic certificate coefficients") {
    // Q = [z; 1] reproduces the contraction certificate
    TrigPoly one(1), z(1);
    one.set({0}, 1.0);
    z.set({1}, 1.0);
    const OperatorCoefficientSystem sys = certificate_to_coefficients({{z}, {one}});
    CHECK(sys.m == 2);
    const OperatorCoefficientSystem expect = contraction_certificate(1, 1);
    CHECK(sys.coefficients.size() == expect.coefficients.size());
    for (const auto& [key, value] : expect.coefficients) {
        auto it = sys.coefficients.find(key);
        REQUIRE(it != sys.coefficients.end());
        CHECK(std::abs(it->second - value) < 1e-15);
    }

    // single constant block
    const OperatorCoefficientSystem small = certificate_to_coefficients({{one}});
    CHECK(small.coefficients.size() == 1);
    CHECK(small.coefficients.begin()->second == Coeff{1.0});

    // |z^2|^2 = 1 on the circle
    TrigPoly z2(1);
    z2.set({2}, 1.0);
    const OperatorCoefficientSystem unit = certificate_to_coefficients({{z2}});
    REQUIRE(unit.coefficients.size() == 1);
    CHECK(unit.coefficients.begin()->first.alpha == std::vector<int>{0});
    CHECK(unit.coefficients.begin()->second == Coeff{1.0});

    TrigPoly bad(1);
    bad.set({-1}, 1.0);
    CHECK_THROWS_AS(certificate_to_coefficients({{bad}}), EntryOutsideCone);
}

TEST_CASE("generated coefficient systems are Hermitian-valued") {
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<TrigPoly>> rows;
        const int m = uniform_int(1, 3);
        const int cols = uniform_int(1, 2);
        for (int r = 0; r < m; ++r) {
            std::vector<TrigPoly> row;
            for (int c = 0; c < cols; ++c) {
                TrigPoly p(1);
                for (int e = 0; e <= 2; ++e)
                    if (uniform_int(0, 1)) p.set({e}, random_complex());
                row.push_back(p);
            }
            rows.push_back(std::move(row));
        }
        const OperatorCoefficientSystem sys = certificate_to_coefficients(rows);
        for (const auto& [key, value] : sys.coefficients) {
            std::vector<int> neg(key.alpha.size());
            for (size_t i = 0; i < neg.size(); ++i) neg[i] = -key.alpha[i];
            auto it = sys.coefficients.find({neg, key.j, key.i});
            REQUIRE(it != sys.coefficients.end());
            CHECK(std::abs(it->second - std::conj(value)) < 1e-12);
        }
    }
}

TEST_CASE("square-built certificates pass on commuting unitaries") {
    for (int trial = 0; trial < 50; ++trial) {
        const int kappa = uniform_int(1, 2);
        const int d = uniform_int(2, 4);
        // commuting unitaries: common eigenbasis with random phases
        const Matrix q = random_unitary(d);
        OperatorTuple tup;
        tup.kappa = kappa;
        for (int i = 0; i < kappa; ++i) {
            Matrix phases(d, d);
            for (int r = 0; r < d; ++r) phases(r, r) = std::polar(1.0, testutil::uniform(0.0, 6.28));
            tup.matrices.push_back(q * phases * q.adjoint());
        }
        // random analytic certificate rows; exponents sit on a common ray so
        // that pairwise differences avoid mixed-sign multi-indices
        std::vector<int> direction(kappa);
        do {
            for (int i = 0; i < kappa; ++i) direction[i] = uniform_int(0, 2);
        } while (std::all_of(direction.begin(), direction.end(), [](int e) { return e == 0; }));
        std::vector<std::vector<TrigPoly>> rows;
        const int m = uniform_int(1, 2);
        for (int r = 0; r < m; ++r) {
            TrigPoly p(kappa);
            for (int step = 0; step <= 2; ++step) {
                std::vector<int> alpha(kappa);
                for (int i = 0; i < kappa; ++i) alpha[i] = step * direction[i];
                p.set(alpha, p.coeff(alpha) + random_complex());
            }
            rows.push_back({p});
        }
        const OperatorCoefficientSystem sys = certificate_to_coefficients(rows);
        const BlockCheckResult r = dilation_block_check(tup, sys, 1e-8);
        CHECK(r.pass);
    }
}

TEST_CASE("bram system block layout") {
    const OperatorCoefficientSystem sys = bram_system(1);
    CHECK(sys.m == 2);
    // blocks [[I, S*],[S, S*S]]: four entries
    CHECK(sys.coefficients.size() == 4);

    const BlockCheckResult fail = subnormal_block_check(jordan2(), sys, 1e-9);
    CHECK_FALSE(fail.pass);
    // the golden-ratio eigenvalue of [[1,1],[1,0]] shows up in the block spectrum
    CHECK(fail.min_eigenvalue == doctest::Approx((1.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-9));

    Matrix normal(2, 2);
    normal(0, 0) = 1.0;
    normal(1, 1) = 2.0;
    CHECK(subnormal_block_check(normal, sys, 1e-9).pass);

    const Matrix zero(2, 2);
    CHECK(subnormal_block_check(zero, sys, 1e-9).pass);
}

TEST_CASE("bram systems pass on normal matrices and fail on the Jordan block") {
    for (int n = 1; n <= 3; ++n) {
        const OperatorCoefficientSystem sys = bram_system(n);
        for (int trial = 0; trial < 17; ++trial) {
            const Matrix s = random_normal_matrix(uniform_int(2, 3), 1.5);
            CHECK(subnormal_block_check(s, sys, 1e-8).pass);
        }
    }
    CHECK_FALSE(subnormal_block_check(jordan2(), bram_system(1), 1e-9).pass);
}

TEST_CASE("scaling covariance of the block check") {
    const OperatorCoefficientSystem sys = contraction_certificate(1, 1);
    const Matrix a = jordan2(1.5);
    const BlockCheckResult base = dilation_block_check(single(a), sys, 1e-9);
    for (double t : {0.5, 2.0, 10.0}) {
        const BlockCheckResult scaled = dilation_block_check(single(a), sys.scaled(t), 1e-9);
        CHECK(scaled.min_eigenvalue == doctest::Approx(t * base.min_eigenvalue).epsilon(1e-9));
        CHECK(scaled.pass == base.pass);
    }
}

TEST_CASE("non-Hermitian systems are rejected") {
    OperatorCoefficientSystem lopsided;
    lopsided.m = 2;
    lopsided.add({1}, 1, 2, 1.0);  // no conjugate partner
    CHECK_THROWS_AS(dilation_block_check(single(jordan2()), lopsided, 1e-9), NotHermitian);
}
