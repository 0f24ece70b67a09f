#include "tmom/sos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace tmom {

namespace {

constexpr double kNegativityCut = -1e-9;

void check_certificate(const GramCertificate& c) {
    const int n = static_cast<int>(c.basis.size());
    if (c.gram.rows() != n || c.gram.cols() != n)
        throw std::invalid_argument("gram size does not match basis");
    if (c.gram.max_asymmetry() > 1e-12 * std::max(1.0, c.gram.frobenius()))
        throw NotHermitian("gram matrix is not Hermitian");
    std::set<MonomialIndex> seen(c.basis.begin(), c.basis.end());
    if (seen.size() != c.basis.size()) throw std::invalid_argument("basis entries must be distinct");
}

MonomialIndex product_index(MonomialIndex row, MonomialIndex col) {
    // conj(v_row) * v_col = z^(m_col + n_row) zbar^(n_col + m_row)
    return {col.m + row.n, col.n + row.m};
}

Matrix clip_to_psd(const Matrix& g, double floor_at = 0.0) {
    const EigResult eig = jacobi_hermitian(g);
    const int n = g.rows();
    Matrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = std::max(eig.values[k], floor_at);
        if (lam == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += lam * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    return out;
}

double eval_real(const LaurentPoly& p, Coeff z) { return eval(p, z).real(); }

// deterministic local pattern search for a minimum of a Hermitian target
std::pair<Coeff, double> descend(const LaurentPoly& target, Coeff start, double step) {
    Coeff best = start;
    double best_val = eval_real(target, best);
    for (int it = 0; it < 200 && step > 1e-12; ++it) {
        bool moved = false;
        for (const Coeff dir : {Coeff{1, 0}, Coeff{-1, 0}, Coeff{0, 1}, Coeff{0, -1}}) {
            const Coeff cand = best + step * dir;
            if (cand == Coeff{}) continue;  // stay on the punctured plane
            const double v = eval_real(target, cand);
            if (v < best_val) {
                best = cand;
                best_val = v;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return {best, best_val};
}

std::optional<std::pair<Coeff, double>> negativity_scan(const LaurentPoly& target) {
    constexpr int kRadii = 40;
    constexpr int kAngles = 50;
    Coeff best;
    double best_val = 0.0;
    bool have = false;
    for (int ir = 0; ir < kRadii; ++ir) {
        // log-spaced radii over [1e-3, 1e3]
        const double rho = std::pow(10.0, -3.0 + 6.0 * ir / (kRadii - 1));
        for (int ia = 0; ia < kAngles; ++ia) {
            const double t = 2.0 * std::numbers::pi * ia / kAngles;
            const Coeff z = std::polar(rho, t);
            const double v = eval_real(target, z);
            if (!have || v < best_val) {
                best = z;
                best_val = v;
                have = true;
            }
        }
    }
    auto [z, v] = descend(target, best, std::max(0.1, 0.25 * std::abs(best)));
    if (v < kNegativityCut) return std::make_pair(z, v);
    return std::nullopt;
}

std::vector<Coeff> aberth_roots(std::vector<Coeff> coeffs, int max_iter, int restarts);

// Gaussian elimination with partial pivoting; returns false on a (near)
// singular system.
bool solve_linear(Matrix a, std::vector<Coeff> b, std::vector<Coeff>& x) {
    const int n = a.rows();
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-13) return false;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            std::swap(b[pivot], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const Coeff f = a(r, col) / a(col, col);
            if (f == Coeff{}) continue;
            for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    x.assign(n, Coeff{});
    for (int r = n - 1; r >= 0; --r) {
        Coeff acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[c];
        x[r] = acc / a(r, r);
    }
    return true;
}

// Least-squares solve of the coefficient-matching constraints restricted to
// the face G = V H V* of the PSD cone, V holding the dominant eigenvectors of
// the current iterate. Resolves the slow tail of alternating projections when
// the certificate is rank-deficient.
std::optional<Matrix> solve_on_face(
    const Matrix& v, const std::map<MonomialIndex, std::vector<std::pair<int, int>>>& groups,
    const LaurentPoly& target) {
    const int n = v.rows();
    const int r = v.cols();
    if (r == 0) return std::nullopt;
    const int unknowns = r * r;
    const int rows = static_cast<int>(groups.size());

    Matrix c(rows, unknowns);
    std::vector<Coeff> rhs(rows);
    int row = 0;
    for (const auto& [e, positions] : groups) {
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                Coeff acc = 0.0;
                for (const auto& [j, k] : positions) acc += v(j, a) * std::conj(v(k, b));
                c(row, a * r + b) = acc;
            }
        rhs[row] = target.coeff(e);
        ++row;
    }

    // normal equations C* C h = C* rhs
    Matrix cc(unknowns, unknowns);
    std::vector<Coeff> ct(unknowns);
    for (int a = 0; a < unknowns; ++a) {
        for (int b = 0; b < unknowns; ++b) {
            Coeff acc = 0.0;
            for (int i = 0; i < rows; ++i) acc += std::conj(c(i, a)) * c(i, b);
            cc(a, b) = acc;
        }
        Coeff acc = 0.0;
        for (int i = 0; i < rows; ++i) acc += std::conj(c(i, a)) * rhs[i];
        ct[a] = acc;
    }
    std::vector<Coeff> h;
    if (!solve_linear(std::move(cc), std::move(ct), h)) return std::nullopt;

    Matrix hm(r, r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) hm(a, b) = h[a * r + b];
    hm = hm + hm.adjoint();
    hm = hm.scaled(0.5);

    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Coeff acc = 0.0;
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) acc += v(i, a) * hm(a, b) * std::conj(v(j, b));
            g(i, j) = acc;
        }
    return g;
}

}  // namespace

double default_psd_tol(const Matrix& m) { return 1e-8 * std::max(1.0, m.frobenius()); }

LaurentPoly expand_certificate(const GramCertificate& c) {
    check_certificate(c);
    std::map<MonomialIndex, Coeff> acc;
    const int n = static_cast<int>(c.basis.size());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const Coeff g = c.gram(j, k);
            if (g == Coeff{}) continue;
            acc[product_index(c.basis[j], c.basis[k])] += g;
        }
    LaurentPoly out;
    for (const auto& [s, v] : acc) out.set(s, v);
    return out;
}

GramCertificate squares_to_gram(const SquareList& s) {
    std::set<MonomialIndex> support;
    for (const auto& q : s)
        for (const auto& [idx, c] : q.terms()) support.insert(idx);
    GramCertificate out;
    out.basis.assign(support.begin(), support.end());
    const int n = static_cast<int>(out.basis.size());
    out.gram = Matrix(n, n);
    for (const auto& q : s) {
        std::vector<Coeff> w(n);
        for (int k = 0; k < n; ++k) w[k] = q.coeff(out.basis[k]);
        // accumulate conj(w) w^T so that v* G v = |q|^2
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.gram(j, k) += std::conj(w[j]) * w[k];
    }
    return out;
}

SquareList gram_to_squares(const GramCertificate& c, double clip_tol) {
    check_certificate(c);
    const EigResult eig = jacobi_hermitian(c.gram);
    if (!eig.values.empty() && eig.values.front() < -clip_tol) {
        std::ostringstream os;
        os << "minimum eigenvalue " << eig.values.front() << " below -" << clip_tol;
        throw NotPositiveSemidefinite(os.str());
    }
    SquareList out;
    const int n = static_cast<int>(c.basis.size());
    for (int k = 0; k < n; ++k) {
        const double lam = std::max(0.0, eig.values[k]);
        if (lam == 0.0) continue;
        LaurentPoly q;
        for (int i = 0; i < n; ++i) {
            const Coeff coeff = std::sqrt(lam) * std::conj(eig.vectors(i, k));
            if (coeff != Coeff{}) q.set(c.basis[i], coeff);
        }
        if (!q.is_zero()) out.push_back(std::move(q));
    }
    return out;
}

FeasibilityReport sos_feasibility(const LaurentPoly& target, const std::vector<MonomialIndex>& basis,
                                  int max_iter, double psd_tol) {
    if (conorm(target - poly_involution(target)) > 1e-10 * std::max(1.0, conorm(target)))
        throw std::invalid_argument("target must be Hermitian");

    const int n = static_cast<int>(basis.size());
    std::map<MonomialIndex, std::vector<std::pair<int, int>>> groups;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) groups[product_index(basis[j], basis[k])].push_back({j, k});

    std::vector<MonomialIndex> uncovered;
    for (const auto& [s, c] : target.terms())
        if (!groups.count(s)) uncovered.push_back(s);
    if (!uncovered.empty()) {
        std::ostringstream os;
        os << "basis cannot express target at indices:";
        for (const auto& s : uncovered) os << " (" << s.m << "," << s.n << ")";
        throw BasisCannotExpress(os.str());
    }

    FeasibilityReport report;
    if (auto neg = negativity_scan(target)) {
        report.kind = FeasibilityReport::Kind::Infeasible;
        report.witness_point = neg->first;
        report.witness_value = neg->second;
        return report;
    }

    const auto project_affine = [&](Matrix g) {
        for (const auto& [s, positions] : groups) {
            Coeff sum = 0.0;
            for (const auto& [j, k] : positions) sum += g(j, k);
            const Coeff delta = (target.coeff(s) - sum) / double(positions.size());
            for (const auto& [j, k] : positions) g(j, k) += delta;
        }
        return g;
    };

    const double match_tol = 1e-10 * std::max(1.0, conorm(target));
    const auto affine_residual = [&](const Matrix& g) {
        double residual = 0.0;
        for (const auto& [e, positions] : groups) {
            Coeff sum = 0.0;
            for (const auto& [j, k] : positions) sum += g(j, k);
            residual = std::max(residual, std::abs(sum - target.coeff(e)));
        }
        return residual;
    };
    // alternate face-restricted least squares with face re-extraction from
    // the affine-projected candidate: an alternating projection between the
    // matching subspace and the rank-r PSD variety, linearly convergent near
    // a transversal rank-r certificate
    const auto refine_face = [&](Matrix v) -> std::optional<Matrix> {
        const int r = v.cols();
        double window_residual = -1.0;
        for (int round = 0; round < 1500; ++round) {
            const auto g = solve_on_face(v, groups, target);
            if (!g) return std::nullopt;
            const double residual = affine_residual(*g);
            if (residual <= match_tol && jacobi_hermitian(*g).values.front() >= -psd_tol) return g;
            const Matrix x = project_affine(*g);
            const EigResult xe = jacobi_hermitian(x);
            if (xe.values.front() >= -psd_tol) return x;
            for (int c = 0; c < r; ++c)  // top-r eigenvectors of the affine point
                for (int i = 0; i < n; ++i) v(i, c) = xe.vectors(i, n - r + c);
            if (round % 100 == 99) {  // stall cutoff
                if (window_residual >= 0.0 && residual > 0.8 * window_residual) return std::nullopt;
                window_residual = residual;
            }
        }
        return std::nullopt;
    };
    const auto try_face = [&](const EigResult& eig) -> std::optional<Matrix> {
        const double top = eig.values.empty() ? 0.0 : eig.values.back();
        if (top <= 0.0) return std::nullopt;
        int last_rank = -1;
        for (const double rel : {1e-2, 1e-4, 1e-6}) {
            std::vector<int> keep;
            for (int k = 0; k < n; ++k)
                if (eig.values[k] > rel * top) keep.push_back(k);
            const int r = static_cast<int>(keep.size());
            if (r == 0 || r == last_rank) continue;
            last_rank = r;
            Matrix v(n, r);
            for (int c = 0; c < r; ++c)
                for (int i = 0; i < n; ++i) v(i, c) = eig.vectors(i, keep[c]);
            if (const auto g = refine_face(std::move(v))) return g;
        }
        return std::nullopt;
    };

    // Boyle-Dykstra with the correction kept on the PSD cone only; the other
    // set is affine so plain projection suffices there. Rank-deficient
    // certificates make the projection tail sublinear, so the loop
    // periodically attempts a direct solve on the detected face.
    Matrix x = project_affine(Matrix(n, n));
    Matrix p(n, n);
    int next_polish = 25;
    for (int iter = 0; iter <= max_iter; ++iter) {
        const EigResult eig = jacobi_hermitian(x);
        if (eig.values.empty() || eig.values.front() >= -psd_tol) {
            report.kind = FeasibilityReport::Kind::Certificate;
            report.certificate = {basis, x};
            report.min_eigenvalue = eig.values.empty() ? 0.0 : eig.values.front();
            report.iterations = iter;
            return report;
        }
        if (iter == next_polish) {
            next_polish *= 2;
            if (const auto polished = try_face(eig)) {
                report.kind = FeasibilityReport::Kind::Certificate;
                report.certificate = {basis, *polished};
                report.min_eigenvalue = jacobi_hermitian(*polished).values.front();
                report.iterations = iter;
                return report;
            }
        }
        const Matrix y = clip_to_psd(x + p);
        p = x + p - y;
        const Matrix next = project_affine(y);
        report.residual = (next - y).frobenius();
        x = next;
        report.iterations = iter + 1;
    }
    report.kind = FeasibilityReport::Kind::Unknown;
    return report;
}

LaurentPoly sumk_witness(Coeff lambda, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    LaurentPoly p;
    p.set({1, 1}, 1.0);
    p.set({1, 0}, -std::conj(lambda));
    p.set({0, 1}, -lambda);
    p.set({0, 0}, std::norm(lambda) - eps * eps);
    return p;
}

namespace {

// Aberth-Ehrlich simultaneous root iteration on a monic-normalized polynomial
// given by ascending coefficients (c0 + c1 w + ... + cd w^d).
std::vector<Coeff> aberth_roots(std::vector<Coeff> coeffs, int max_iter, int restarts) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1) return {};

    const auto horner = [&](Coeff w) {
        Coeff v = coeffs[d], dv = 0.0;
        for (int i = d - 1; i >= 0; --i) {
            dv = dv * w + v;
            v = v * w + coeffs[i];
        }
        return std::make_pair(v, dv);
    };

    double cauchy = 0.0;
    for (int i = 0; i < d; ++i) cauchy = std::max(cauchy, std::abs(coeffs[i] / coeffs[d]));
    const double radius = 1.0 + cauchy;

    std::vector<Coeff> z(d);
    for (int attempt = 0; attempt <= restarts; ++attempt) {
        for (int i = 0; i < d; ++i)
            z[i] = std::polar(radius * (1.0 + 0.05 * attempt),
                              2.0 * std::numbers::pi * i / d + 0.4 + 0.17 * attempt);
        bool converged = false;
        for (int it = 0; it < max_iter; ++it) {
            double worst = 0.0;
            for (int i = 0; i < d; ++i) {
                const auto [v, dv] = horner(z[i]);
                if (std::abs(v) == 0.0) continue;
                Coeff ratio = (dv == Coeff{}) ? Coeff{1e-16, 0} : v / dv;
                Coeff rep = 0.0;
                for (int j = 0; j < d; ++j)
                    if (j != i) rep += 1.0 / (z[i] - z[j]);
                const Coeff denom = 1.0 - ratio * rep;
                const Coeff step = (denom == Coeff{}) ? ratio : ratio / denom;
                z[i] -= step;
                worst = std::max(worst, std::abs(step));
            }
            if (worst < 1e-14 * radius) {
                converged = true;
                break;
            }
        }
        if (converged) break;
    }
    return z;
}

}  // namespace

TrigPoly fejer_riesz(const TrigPoly& p, double tol) {
    if (p.kappa() != 1) throw std::invalid_argument("spectral factorization implemented for kappa = 1 only");

    int deg = 0;
    for (const auto& [a, c] : p.terms()) deg = std::max(deg, std::abs(a[0]));

    if (deg == 0) {
        const Coeff c0 = p.coeff({0});
        if (std::abs(c0.imag()) > tol || c0.real() < -tol)
            throw DegreeZeroNegative("constant polynomial is not nonnegative");
        TrigPoly q(1);
        if (c0.real() > 0.0) q.set({0}, std::sqrt(std::max(0.0, c0.real())));
        return q;
    }

    const int grid = 4 * deg + 1;
    for (int i = 0; i < grid; ++i) {
        const double t = 2.0 * std::numbers::pi * i / grid;
        const Coeff v = eval(p, {std::polar(1.0, t)});
        if (std::abs(v.imag()) > tol || v.real() < -tol) {
            std::ostringstream os;
            os << "value " << v.real() << (std::abs(v.imag()) > tol ? " (non-real)" : "")
               << " at grid point exp(i*" << t << ")";
            throw NotNonnegativeOnCircle(os.str());
        }
    }

    // coefficients of w^deg * p(w), ascending in w
    std::vector<Coeff> shifted(2 * deg + 1);
    for (const auto& [a, c] : p.terms()) shifted[a[0] + deg] = c;

    const double mean = p.coeff({0}).real();  // the circle average of p, also |q|_2^2
    TrigPoly best(1);
    double best_err = -1.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Coeff> roots = aberth_roots(shifted, 200 + 100 * attempt, attempt);
        // roots pair up as (r, 1/conj r); keep the d of them in the closed disc,
        // splitting near-circle clusters evenly
        std::sort(roots.begin(), roots.end(),
                  [](Coeff a, Coeff b) { return std::abs(a) < std::abs(b); });
        std::vector<Coeff> chosen(roots.begin(), roots.begin() + deg);

        std::vector<Coeff> qc{1.0};
        for (const Coeff r : chosen) {
            qc.push_back(0.0);
            for (int i = static_cast<int>(qc.size()) - 1; i > 0; --i) qc[i] = qc[i - 1] - r * qc[i];
            qc[0] *= -r;
        }
        double l2 = 0.0;
        for (const Coeff c : qc) l2 += std::norm(c);
        if (l2 == 0.0) continue;
        const double scale = std::sqrt(std::max(0.0, mean) / l2);

        TrigPoly q(1);
        for (int i = 0; i < static_cast<int>(qc.size()); ++i)
            if (qc[i] * scale != Coeff{}) q.set({i}, qc[i] * scale);

        double err = 0.0;
        const int check = 8 * deg + 16;
        for (int i = 0; i < check; ++i) {
            const std::vector<Coeff> z{std::polar(1.0, 2.0 * std::numbers::pi * i / check)};
            err = std::max(err, std::abs(std::norm(eval(q, z)) - eval(p, z).real()));
        }
        if (best_err < 0.0 || err < best_err) {
            best_err = err;
            best = q;
        }
        if (best_err <= 1e-8 * std::max(1.0, conorm(p))) break;
    }
    return best;
}

}  // namespace tmom
