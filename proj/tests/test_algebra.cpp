#include <doctest.h>

#include <cmath>
#include <numbers>

#include "testutil.hpp"
#include "tmom/algebra.hpp"

using namespace tmom;
using testutil::random_laurent;
using testutil::random_point;
using testutil::uniform_int;

namespace {
const Coeff I{0.0, 1.0};
}

TEST_CASE("involution swaps exponents and conjugates") {
    CHECK(poly_involution(LaurentPoly::monomial(1, 0)) == LaurentPoly::monomial(0, 1));
    const LaurentPoly zzb = LaurentPoly::monomial(1, 1);
    CHECK(poly_involution(zzb) == zzb);
    const LaurentPoly p = LaurentPoly::monomial(2, 1, Coeff{2, 1});
    CHECK(poly_involution(p) == LaurentPoly::monomial(1, 2, Coeff{2, -1}));
}

TEST_CASE("involution is a conorm isometry and an involution") {
    for (int trial = 0; trial < 200; ++trial) {
        const LaurentPoly p = random_laurent(4, 5, false);
        CHECK(conorm(poly_involution(p)) == doctest::Approx(conorm(p)).epsilon(1e-14));
        CHECK(poly_involution(poly_involution(p)) == p);
        // eval(p*, z) = conj(eval(p, z))
        const Coeff z = random_point();
        CHECK(std::abs(eval(poly_involution(p), z) - std::conj(eval(p, z))) < 1e-9);
    }
}

TEST_CASE("mod_squared expands |q|^2") {
    const LaurentPoly q = LaurentPoly::monomial(1, 0) - LaurentPoly::constant(1.0);
    LaurentPoly expect;
    expect.set({1, 1}, 1.0);
    expect.set({1, 0}, -1.0);
    expect.set({0, 1}, -1.0);
    expect.set({0, 0}, 1.0);
    CHECK(mod_squared(q) == expect);

    CHECK(mod_squared(LaurentPoly::constant(1.0)) == LaurentPoly::constant(1.0));

    // q = z^{-1} zbar lives in the half-plane cone (m+n = 0) and squares to 1
    const LaurentPoly r = LaurentPoly::monomial(-1, 1);
    CHECK(support_in(r, IndexClass::nplus()));
    CHECK(mod_squared(r) == LaurentPoly::constant(1.0));
}

TEST_CASE("mod_squared is Hermitian and pointwise nonnegative") {
    for (int trial = 0; trial < 25; ++trial) {
        const LaurentPoly q = random_laurent(3, 4, false);
        const LaurentPoly sq = mod_squared(q);
        CHECK(conorm(sq - poly_involution(sq)) < 1e-12 * std::max(1.0, conorm(sq)));
        for (int i = 0; i < 20; ++i) {
            const Coeff v = eval(sq, random_point());
            CHECK(v.real() >= -1e-12);
            CHECK(std::abs(v.imag()) < 1e-10);
        }
    }
}

TEST_CASE("eval handles rational terms and zero") {
    CHECK(eval(LaurentPoly::monomial(1, 1), Coeff{3, 4}).real() == doctest::Approx(25.0));
    CHECK(eval(LaurentPoly::monomial(2, -1), Coeff{2, 0}).real() == doctest::Approx(2.0));
    // p = z + zbar at exp(i pi/3) -> 2 cos(pi/3) = 1 (direct cosine oracle)
    const LaurentPoly p = LaurentPoly::monomial(1, 0) + LaurentPoly::monomial(0, 1);
    const Coeff z = std::polar(1.0, std::numbers::pi / 3.0);
    CHECK(std::abs(eval(p, z) - Coeff{2.0 * std::cos(std::numbers::pi / 3.0), 0.0}) < 1e-12);

    CHECK(eval(LaurentPoly::monomial(0, 0, 5.0), Coeff{}) == Coeff{5.0});
    CHECK_THROWS_AS(eval(LaurentPoly::monomial(-1, 0), Coeff{}), EvalAtZeroWithNegativePower);
}

TEST_CASE("character evaluation on the compactified dual") {
    // z = 0, m+n > 0
    CHECK(char_eval_nplus({1, 1}, Coeff{}, Coeff{0, 1}) == Coeff{});
    // z = 0, m+n = 0 -> w^m
    CHECK(std::abs(char_eval_nplus({1, -1}, Coeff{}, I) - I) < 1e-15);
    // z != 0 with the compatible w
    const Coeff z{2, 0};
    CHECK(std::abs(char_eval_nplus({2, 1}, z, z / std::conj(z)) - Coeff{8, 0}) < 1e-12);
    CHECK_THROWS_AS(char_eval_nplus({2, 1}, z, I), InvalidCharacterPoint);
    CHECK_THROWS_AS(char_eval_nplus({1, 0}, Coeff{}, Coeff{2, 0}), InvalidCharacterPoint);
}

TEST_CASE("support classification") {
    CHECK(support_in(LaurentPoly::monomial(2, -1), IndexClass::nplus()));
    CHECK_FALSE(support_in(LaurentPoly::monomial(-1, 0), IndexClass::nplus()));
    CHECK(support_in(LaurentPoly::monomial(1, 1), IndexClass::n()));
    CHECK(support_in(LaurentPoly::monomial(3, 3), IndexClass::diagonal()));
    CHECK_FALSE(support_in(LaurentPoly::monomial(1, 0), IndexClass::diagonal()));
}

TEST_CASE("point separation characterization") {
    // unit-circle subsets never separate
    std::vector<ExactPoint> circle;
    for (int i = 0; i < 5; ++i) circle.push_back(ExactPoint::irrational(1.0, 0.3 + i));
    CHECK_FALSE(separates_points_N(circle));

    // a single point with rational rotation does not
    CHECK_FALSE(separates_points_N({ExactPoint::rational(2.0, 0, 1)}));

    // a single point off circle/origin with irrational rotation does
    CHECK(separates_points_N({ExactPoint::irrational(2.0, 1.0)}));

    // roots of unity at mixed moduli still fail the rotation condition
    std::vector<ExactPoint> roots;
    for (int i = 0; i < 4; ++i) roots.push_back(ExactPoint::rational(0.5 + i, i, 4));
    CHECK_FALSE(separates_points_N(roots));

    // adding the origin changes nothing
    std::vector<ExactPoint> with_zero{ExactPoint::rational(0.0, 0, 1), ExactPoint::irrational(2.0, 0.7)};
    CHECK(separates_points_N(with_zero));
}

TEST_CASE("determining sample rank test") {
    // T = {1, z, zbar} on {1, i, 1+i}: 3x3 matrix with nonzero determinant.
    // Oracle: direct determinant expansion.
    const std::vector<MonomialIndex> t{{0, 0}, {1, 0}, {0, 1}};
    const std::vector<Coeff> z{Coeff{1, 0}, I, Coeff{1, 1}};
    Coeff det = 0.0;
    {
        Coeff m[3][3];
        for (int i = 0; i < 3; ++i) {
            m[i][0] = 1.0;
            m[i][1] = z[i];
            m[i][2] = std::conj(z[i]);
        }
        det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    REQUIRE(std::abs(det) > 0.1);
    CHECK(is_determining_sample(t, z, 1e-9));

    CHECK_THROWS_AS(is_determining_sample({{1, 0}, {0, 1}}, {Coeff{1, 0}}, 1e-9),
                    InsufficientSamplePoints);

    // negative exponents forbid the origin as a sample point
    CHECK_THROWS_AS(is_determining_sample({{-1, 0}, {0, 0}}, {Coeff{}, Coeff{1, 0}}, 1e-9),
                    EvalAtZeroWithNegativePower);

    // on real points z = zbar, so z^2 and z zbar coincide
    CHECK_FALSE(is_determining_sample({{2, 0}, {1, 1}}, {Coeff{1, 0}, Coeff{-1, 0}}, 1e-9));
}

TEST_CASE("determining sample is monotone in the sample") {
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<MonomialIndex> t;
        const int nt = uniform_int(2, 4);
        while (static_cast<int>(t.size()) < nt) {
            const MonomialIndex s{uniform_int(0, 2), uniform_int(0, 2)};
            if (std::find(t.begin(), t.end(), s) == t.end()) t.push_back(s);
        }
        std::vector<Coeff> z;
        for (int i = 0; i < nt + 1; ++i) z.push_back(random_point());
        const bool before = is_determining_sample(t, z, 1e-9);
        z.push_back(random_point());
        z.push_back(random_point());
        const bool after = is_determining_sample(t, z, 1e-9);
        if (before) CHECK(after);
    }
}

TEST_CASE("symmetrization") {
    CoefficientSystem sys;
    sys.set({1, 0}, Coeff{2, 1});
    const CoefficientSystem ext = symmetrize(sys);
    CHECK(ext.at({0, 1}) == Coeff{2, -1});
    CHECK(ext.at({1, 0}) == Coeff{2, 1});
    CHECK(ext.values().size() == 2);

    CoefficientSystem sym;
    sym.set({1, 2}, I);
    sym.set({2, 1}, -I);
    CHECK(symmetrize(sym) == sym);

    CoefficientSystem bad;
    bad.set({1, 2}, Coeff{1, 0});
    bad.set({2, 1}, Coeff{2, 0});
    CHECK_THROWS_AS(symmetrize(bad), NotSymmetrizable);
}

TEST_CASE("exact basis tables") {
    const BasisTables t11 = basis_tables(1, 1);
    REQUIRE(t11.alpha.size() == 2);
    CHECK(t11.alpha.at({2, 0}) == DyadicGaussian{1, 0, 0});
    CHECK(t11.alpha.at({0, 2}) == DyadicGaussian{1, 0, 0});
    REQUIRE(t11.beta.size() == 2);
    CHECK(t11.beta.at({2, 0}) == DyadicGaussian{0, -1, 2});
    CHECK(t11.beta.at({0, 2}) == DyadicGaussian{0, 1, 2});

    const BasisTables t00 = basis_tables(0, 0);
    CHECK(t00.alpha.at({0, 0}) == DyadicGaussian{1, 0, 0});
    CHECK(t00.beta.at({0, 0}) == DyadicGaussian{1, 0, 0});
}

TEST_CASE("table composition is exactly the Kronecker delta") {
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            const BasisTables outer = basis_tables(m, n);
            for (int k = 0; k <= 4; ++k)
                for (int l = 0; l <= 4; ++l) {
                    DyadicGaussian acc{0, 0, 0};
                    for (const auto& [ij, alpha] : outer.alpha) {
                        const BasisTables inner = basis_tables(ij.m, ij.n);
                        auto it = inner.beta.find({k, l});
                        if (it != inner.beta.end()) acc = acc + alpha * it->second;
                    }
                    const DyadicGaussian expect{(m == k && n == l) ? 1 : 0, 0, 0};
                    CHECK(acc == expect);
                }
        }
}

TEST_CASE("moment transforms on a point mass") {
    // real moments of unit mass at (x,y) = (1,0): a_{k,l} = [l-independent] 1^k 0^l
    CoefficientSystem a;
    for (int k = 0; k <= 2; ++k)
        for (int l = 0; k + l <= 2; ++l) a.set({k, l}, (l == 0) ? 1.0 : 0.0);
    const CoefficientSystem c = real_to_complex_moments(a, 2);
    for (const auto& [s, v] : c.values()) CHECK(std::abs(v - Coeff{1, 0}) < 1e-15);

    CHECK_THROWS_AS(real_to_complex_moments(CoefficientSystem{}, 1), MissingRealMoment);
}

TEST_CASE("dyadic roundtrip is exact") {
    for (int trial = 0; trial < 20; ++trial) {
        CoefficientSystem c;
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; m + n <= 4; ++n)
                c.set({m, n}, Coeff{uniform_int(-64, 64) / 16.0, uniform_int(-64, 64) / 16.0});
        const CoefficientSystem back = real_to_complex_moments(complex_to_real_moments(c, 4), 4);
        CHECK(back == c);  // bitwise equality
        // and in the other composition order
        const CoefficientSystem again = complex_to_real_moments(real_to_complex_moments(c, 4), 4);
        CHECK(again == c);
    }
}

TEST_CASE("conorm") {
    CHECK(conorm(LaurentPoly{}) == 0.0);
    const LaurentPoly p = LaurentPoly::monomial(1, 0, 3.0) + LaurentPoly::monomial(0, 1, Coeff{0, -4});
    CHECK(conorm(p) == doctest::Approx(4.0));
    // expansion oracle: |z-1|^2 has coefficients {1,-1,-1,1}, conorm 1
    CHECK(conorm(mod_squared(LaurentPoly::monomial(1, 0) - LaurentPoly::constant(1.0))) ==
          doctest::Approx(1.0));
}
