// Acceptance suite: one line per criterion, pass/fail with timing.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "testutil.hpp"
#include "tmom/moments.hpp"
#include "tmom/opcheck.hpp"
#include "tmom/sos.hpp"

using namespace tmom;

namespace {

struct Checker {
    bool ok = true;
    std::string note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

int failures = 0;

void run(int id, const std::string& name, double budget_seconds,
         const std::function<void(Checker&)>& body) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(elapsed < budget_seconds, "time budget exceeded");
    if (!check.ok) ++failures;
    std::printf("criterion %02d [%s] %s (%.0f ms)%s%s\n", id, check.ok ? "pass" : "FAIL", name.c_str(),
                elapsed * 1000.0, check.note.empty() ? "" : " -- ", check.note.c_str());
}

std::mt19937 rng(7101u);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
Coeff random_complex(double s = 1.0) { return {uniform(-s, s), uniform(-s, s)}; }

LaurentPoly random_poly(int deg, int terms) {
    LaurentPoly p;
    for (int t = 0; t < terms; ++t) {
        const MonomialIndex s{uniform_int(0, deg), uniform_int(0, deg)};
        p.set(s, p.coeff(s) + random_complex());
    }
    return p;
}

}  // namespace

int main() {
    run(1, "exact delta composition of the basis tables", 2.0, [](Checker& check) {
        for (int m = 0; m <= 6; ++m)
            for (int n = 0; n <= 6; ++n) {
                const BasisTables outer = basis_tables(m, n);
                for (int k = 0; k <= 6; ++k)
                    for (int l = 0; l <= 6; ++l) {
                        DyadicGaussian acc{0, 0, 0};
                        for (const auto& [ij, alpha] : outer.alpha) {
                            const BasisTables inner = basis_tables(ij.m, ij.n);
                            auto it = inner.beta.find({k, l});
                            if (it != inner.beta.end()) acc = acc + alpha * it->second;
                        }
                        const DyadicGaussian expect{(m == k && n == l) ? 1 : 0, 0, 0};
                        check.expect(acc == expect, "composition is not the exact delta");
                    }
            }
    });

    run(2, "moment transform roundtrip is exactly the identity", 1.0, [](Checker& check) {
        for (int trial = 0; trial < 20; ++trial) {
            CoefficientSystem c;
            for (int m = 0; m <= 4; ++m)
                for (int n = 0; m + n <= 4; ++n)
                    c.set({m, n}, Coeff{uniform_int(-256, 256) / 32.0, uniform_int(-256, 256) / 32.0});
            const CoefficientSystem back = real_to_complex_moments(complex_to_real_moments(c, 4), 4);
            check.expect(back == c, "roundtrip is not bitwise identity");
        }
    });

    run(3, "hole-data values match the quadrature oracle", 1.0, [](Checker& check) {
        std::vector<MonomialIndex> t;
        for (int m = 1; m <= 6; ++m) t.push_back({m, m});
        const MomentData data = gen_dziury(t);
        for (int m = 1; m <= 6; ++m) {
            const double oracle = testutil::radial_density_moment_oracle(m, -2, 1.0);
            check.expect(std::abs(data.values.at({m, m}).real() - oracle) < 1e-6,
                         "value differs from quadrature");
        }
        check.expect(std::abs(data.values.at({3, 3}).real() - std::numbers::pi / 3) < 1e-12,
                     "closed form pi/3 missed");
        bool raised = false;
        try {
            measure_moment(Measure{RadialDensityMeasure{-2, 1.0}}, {0, 0});
        } catch (const NonSummableMoment&) {
            raised = true;
        }
        check.expect(raised, "(0,0) must be non-summable");
    });

    run(4, "two-ray construction reproduces its moments", 5.0, [](Checker& check) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::pair<double, double>> nu;
            const int atoms = uniform_int(1, 4);
            for (int i = 0; i < atoms; ++i) nu.push_back({uniform(0.1, 2.0), uniform(0.1, 3.0)});
            const int k = uniform_int(0, 3);
            const int l = k + uniform_int(1, 3);
            double bound = 0.0;
            for (const auto& [rho, w] : nu) bound += w * std::pow(rho, k + l);
            Coeff ckl = random_complex();
            if (std::abs(ckl) > bound) ckl *= bound / (2.0 * std::abs(ckl));
            const RayMeasure rec = lambda2new_construct(nu, ckl, k, l);
            for (int m = 0; m <= 8; ++m) {
                double diag = 0.0;
                for (const auto& [rho, w] : nu) diag += w * std::pow(rho, 2 * m);
                check.expect(std::abs(measure_moment(Measure{rec}, {m, m}) - Coeff{diag}) < 1e-10,
                             "diagonal moment off");
            }
            check.expect(std::abs(measure_moment(Measure{rec}, {k, l}) - ckl) < 1e-10,
                         "prescribed moment off");
        }
    });

    run(5, "shifted functional is positive on squares and matches the delta formula", 5.0,
        [](Checker& check) {
            for (int trial = 0; trial < 100; ++trial) {
                const int k = trial % 3;
                AtomicMeasure nu;
                for (int i = 0; i < 2; ++i)
                    nu.atoms.push_back(
                        {{std::polar(uniform(0.5, 2.0), uniform(0.0, 6.28))}, uniform(0.1, 1.0)});
                if (trial % 2) nu.atoms.push_back({{Coeff{}}, uniform(0.1, 1.0)});
                const HaviPair pair = havi_construct(nu, k);
                const LaurentPoly shifted =
                    mod_squared(random_poly(2, 3) * LaurentPoly::monomial(k, 0));
                check.expect(havi_riesz(pair, shifted).real() >= -1e-10,
                             "negative value on a square");
            }
            // delta formula against direct moment computation
            for (int k = 0; k <= 2; ++k) {
                AtomicMeasure nu;
                nu.atoms.push_back({{Coeff{0.8, 0.4}}, 0.7});
                nu.atoms.push_back({{Coeff{}}, 0.3});
                const HaviPair pair = havi_construct(nu, k);
                for (int m = k; m <= k + 3; ++m)
                    for (int n = k; n <= k + 3; ++n) {
                        const Coeff lhs = havi_riesz(pair, LaurentPoly::monomial(m, n));
                        const Coeff rhs = measure_moment(pair.mu, {m, n}) +
                                          ((m == k && n == k) ? Coeff{pair.a} : Coeff{});
                        check.expect(std::abs(lhs - rhs) < 1e-12, "delta formula mismatch");
                    }
            }
        });

    run(6, "symmetry break yields the -1 minor and fails the kernel check", 1.0, [](Checker& check) {
        AtomicMeasure unit;
        unit.atoms.push_back({{Coeff{1, 0}}, 1.0});
        std::vector<MonomialIndex> square;
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; n <= 2; ++n) square.push_back({m, n});
        const MomentData ones = measure_moments(Measure{unit}, square);
        const MomentData broken = symmetrize(gen_symmetry_break(ones, {0, 1}));
        const Matrix k = kernel_matrix(broken, {{0, 0}, {1, 0}}, KernelMode::NPlus);
        const double det = (k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0)).real();
        check.expect(std::abs(det - (-1.0)) < 1e-9, "minor determinant is not -1");
        check.expect(!kernel_psd_check(broken, {{0, 0}, {1, 0}}, KernelMode::NPlus,
                                       default_kernel_tol())
                          .psd,
                     "kernel check unexpectedly passes");
    });

    run(7, "annulus witness: negative Riesz value, nonnegative on the avoided sector", 2.0,
        [](Checker& check) {
            AtomicMeasure atom;
            atom.atoms.push_back({{Coeff{1, 0}}, 1.0});
            const AnnulusData out = gen_annulus(Coeff{1, 0}, 0.5, 1, 1, atom);
            const Coeff lam = riesz_apply(out.data, out.witness);
            check.expect(std::abs(lam - Coeff{-0.25}) < 1e-9, "Riesz value is not -0.25");
            // 10^4-point grid of a half-plane sector positioned away from the
            // excluded disc around lambda = 1 (angles pi/2 .. 3pi/2)
            for (int ia = 0; ia < 100; ++ia)
                for (int ir = 1; ir <= 100; ++ir) {
                    const double t = std::numbers::pi / 2 + std::numbers::pi * ia / 99.0;
                    const double rho = 2.0 * ir / 100.0;
                    const Coeff z = std::polar(rho, t);
                    check.expect(eval(out.witness, z).real() >= -1e-12,
                                 "witness negative on the sector");
                }
        });

    run(8, "gram feasibility: certificate and negativity witness", 10.0, [](Checker& check) {
        LaurentPoly target;
        target.set({2, 2}, 1.0);
        target.set({1, 1}, -2.0);
        target.set({0, 0}, 1.0);
        const FeasibilityReport cert = sos_feasibility(target, {{0, 0}, {1, 1}}, 2000, 1e-8);
        check.expect(cert.kind == FeasibilityReport::Kind::Certificate, "no certificate found");
        if (cert.kind == FeasibilityReport::Kind::Certificate) {
            check.expect(cert.min_eigenvalue >= -1e-8, "gram not PSD at tolerance");
            check.expect(conorm(expand_certificate(cert.certificate) - target) <= 1e-8,
                         "re-expansion error too large");
        }
        LaurentPoly neg;
        neg.set({1, 1}, 1.0);
        neg.set({0, 0}, -2.0);
        const FeasibilityReport inf = sos_feasibility(neg, {{0, 0}, {1, 0}}, 2000, 1e-8);
        check.expect(inf.kind == FeasibilityReport::Kind::Infeasible, "no infeasibility witness");
        if (inf.kind == FeasibilityReport::Kind::Infeasible)
            check.expect(eval(neg, inf.witness_point).real() < 0.0, "witness value not negative");
    });

    run(9, "spectral factorization recovers random squared moduli", 10.0, [](Checker& check) {
        for (int trial = 0; trial < 100; ++trial) {
            const int deg = uniform_int(1, 8);
            TrigPoly q(1);
            for (int i = 0; i <= deg; ++i) q.set({i}, random_complex());
            if (q.is_zero()) continue;
            const TrigPoly p = mod_squared(q);
            const TrigPoly rec = fejer_riesz(p, 1e-9);
            double worst = 0.0;
            for (int i = 0; i < 512; ++i) {
                const std::vector<Coeff> z{std::polar(1.0, 2.0 * std::numbers::pi * i / 512)};
                worst = std::max(worst, std::abs(std::norm(eval(rec, z)) - eval(p, z).real()));
            }
            check.expect(worst <= 1e-6, "sup-grid factorization error above 1e-6");
        }
    });

    run(10, "contraction certificate margins on the scaled Jordan block", 1.0, [](Checker& check) {
        const OperatorCoefficientSystem sys = contraction_certificate(1, 1);
        for (double t : {0.5, 1.0, 1.5}) {
            Matrix j(2, 2);
            j(0, 1) = t;
            const BlockCheckResult r = dilation_block_check(OperatorTuple{1, {j}}, sys, 1e-9);
            check.expect(std::abs(r.min_eigenvalue - (1.0 - t)) < 1e-9, "margin is not 1 - t");
            check.expect(r.pass == (t <= 1.0), "verdict does not flip at t = 1");
        }
    });

    run(11, "order-one falsifier separates the Jordan block from normal matrices", 2.0,
        [](Checker& check) {
            Matrix j(2, 2);
            j(0, 1) = 1.0;
            const BlockCheckResult fail = subnormal_block_check(j, bram_system(1), 1e-9);
            check.expect(!fail.pass, "Jordan block passes unexpectedly");
            check.expect(fail.min_eigenvalue <= -0.5 + 1e-9, "negative eigenvalue above -0.5");
            // Schur complement of the identity corner: S*S - SS* = diag(-1, 1)
            const Matrix schur = j.adjoint() * j - j * j.adjoint();
            const EigResult eig = jacobi_hermitian(schur);
            check.expect(std::abs(eig.values.front() + 1.0) < 1e-12, "Schur spectrum misses -1");

            for (int trial = 0; trial < 50; ++trial) {
                const Matrix s = testutil::random_normal_matrix(uniform_int(2, 3), 1.5);
                check.expect(subnormal_block_check(s, bram_system(1), 1e-8).pass,
                             "normal matrix rejected");
            }
        });

    // budget: five datasets at < 5 s each
    run(12, "kernel verdicts agree with brute-force quadratic forms", 25.0, [](Checker& check) {
        const auto agree = [&](const MomentData& data, const std::vector<MonomialIndex>& f) {
            const Matrix k = kernel_matrix(data, f, KernelMode::NPlus);
            const double tol = default_kernel_tol() * std::max(1.0, k.frobenius());
            const PsdVerdict v =
                kernel_psd_check(data, f, KernelMode::NPlus, default_kernel_tol());
            double form_min = 0.0;
            for (int trial = 0; trial < 1000; ++trial) {
                std::vector<Coeff> lam(f.size());
                double norm = 0.0;
                for (auto& x : lam) {
                    x = random_complex();
                    norm += std::norm(x);
                }
                if (norm == 0.0) continue;
                Coeff val = 0.0;
                for (size_t i = 0; i < lam.size(); ++i)
                    for (size_t j = 0; j < lam.size(); ++j)
                        val += std::conj(lam[i]) * k(static_cast<int>(i), static_cast<int>(j)) * lam[j];
                form_min = std::min(form_min, val.real() / norm);
            }
            check.expect((form_min < -tol) == !v.psd, "verdicts disagree");
        };

        AtomicMeasure unit;
        unit.atoms.push_back({{Coeff{1, 0}}, 1.0});
        std::vector<MonomialIndex> square;
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) square.push_back({m, n});
        const MomentData ones = measure_moments(Measure{unit}, square);
        agree(ones, {{0, 0}, {1, 0}, {1, 1}});

        MomentData gauss;
        gauss.semigroup = IndexClass::n();
        for (int m = 0; m <= 8; ++m)
            for (int n = 0; n <= 8; ++n) {
                double v = 0.0;
                if (m == n) {
                    v = 1.0;
                    for (int i = 2; i <= m; ++i) v *= i;
                }
                gauss.values[{m, n}] = v;
            }
        agree(gauss, {{0, 0}, {1, 0}, {1, 1}, {2, 2}});

        std::vector<MonomialIndex> holes;
        for (int m = 1; m <= 8; ++m) holes.push_back({m, m});
        agree(gen_dziury(holes), {{1, 1}, {2, 2}});

        std::vector<MonomialIndex> kael_t;
        for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) kael_t.push_back({m, n});
        agree(gen_kael(1, 2, kael_t).first, {{1, 1}});

        agree(symmetrize(gen_symmetry_break(ones, {0, 1})), {{0, 0}, {1, 0}});
    });

    run(13, "difference-set search and the staircase witness", 2.0, [](Checker& check) {
        const auto found = is_difference_set({{0}, {1}, {-1}, {2}, {-2}, {3}, {-3}}, 3);
        check.expect(found.has_value(), "witness not found for the full range");
        if (found) {
            std::set<int> diffs;
            for (const auto& a : *found)
                for (const auto& b : *found) diffs.insert(a[0] - b[0]);
            check.expect(diffs == std::set<int>{-3, -2, -1, 0, 1, 2, 3}, "witness differences wrong");
        }
        check.expect(!is_difference_set({{0}, {2}, {-2}, {3}, {-3}}, 3).has_value(),
                     "gap family wrongly admits a witness");

        const auto lam = quadrant_lambda(3);
        std::set<std::array<int, 2>> diffs;
        for (const auto& a : lam)
            for (const auto& b : lam) diffs.insert({a[0] - b[0], a[1] - b[1]});
        for (int x = -3; x <= 3; ++x)
            for (int y = -3; y <= 3; ++y) {
                const bool expect = (x >= 0 && y >= 0) || (x <= 0 && y <= 0);
                check.expect(diffs.count({x, y}) == static_cast<size_t>(expect ? 1 : 0),
                             "staircase differences do not match the quadrants");
            }
    });

    run(14, "point-separation characterization on a 30-case table", 1.0, [](Checker& check) {
        struct Case {
            std::vector<ExactPoint> points;
            bool expect;
        };
        std::vector<Case> table;
        // unit-circle subsets (sizes 1..5): never separate
        for (int size = 1; size <= 5; ++size) {
            std::vector<ExactPoint> pts;
            for (int i = 0; i < size; ++i) pts.push_back(ExactPoint::irrational(1.0, 0.17 + i));
            table.push_back({pts, false});
        }
        // rational-rotation lines through 0: points r * w with w^q = 1
        for (int q = 1; q <= 10; ++q) {
            std::vector<ExactPoint> pts{ExactPoint::rational(0.0, 0, 1)};
            for (int r = 1; r <= 3; ++r) pts.push_back(ExactPoint::rational(0.5 * r, 1, q));
            table.push_back({pts, false});
        }
        // irrational-rotation singletons off the circle: separate
        for (int i = 0; i < 10; ++i)
            table.push_back({{ExactPoint::irrational(2.0 + i, 0.1 + 0.3 * i)}, true});
        // mixed set: the off-circle point and the non-root rotation may come
        // from different elements
        table.push_back({{ExactPoint::irrational(1.0, 0.9), ExactPoint::rational(2.0, 1, 3)}, true});
        // two rational rotations at distinct moduli still fail
        table.push_back({{ExactPoint::rational(2.0, 1, 3), ExactPoint::rational(0.5, 1, 7)}, false});
        // circle plus origin
        table.push_back({{ExactPoint::irrational(1.0, 0.3), ExactPoint::rational(0.0, 0, 1)}, false});
        // roots of unity at distinct moduli
        {
            std::vector<ExactPoint> pts;
            for (int i = 1; i <= 4; ++i) pts.push_back(ExactPoint::rational(0.25 * i, i, 8));
            table.push_back({pts, false});
        }
        // irrational rotation at modulus 1 plus irrational rotation off circle
        table.push_back({{ExactPoint::irrational(1.0, 1.3), ExactPoint::irrational(3.0, 2.1)}, true});

        check.expect(table.size() == 30, "table must have 30 cases");
        for (size_t i = 0; i < table.size(); ++i)
            check.expect(separates_points_N(table[i].points) == table[i].expect,
                         "case " + std::to_string(i) + " disagrees");
    });

    if (failures == 0) std::printf("all acceptance criteria pass\n");
    return failures;
}
