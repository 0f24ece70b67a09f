#include "tmom/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace tmom {

namespace {

std::string index_str(MonomialIndex s) {
    std::ostringstream os;
    os << "(" << s.m << "," << s.n << ")";
    return os.str();
}

std::string index_str(const std::vector<int>& alpha) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
    os << ")";
    return os.str();
}

Coeff ipow(Coeff z, long long e) {
    if (e < 0) return ipow(1.0 / z, -e);
    Coeff acc = 1.0;
    Coeff base = z;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

PsdVerdict psd_of(const Matrix& k, double tol) {
    if (k.rows() == 0) return {true, 0.0};
    // work on the Hermitian part; data reaching this point has been
    // symmetrized, so the anti-Hermitian residue is numerical noise
    Matrix h = k + k.adjoint();
    h = h.scaled(0.5);
    const EigResult eig = jacobi_hermitian(h);
    const double scale = std::max(1.0, h.frobenius());
    return {eig.values.front() >= -tol * scale, eig.values.front()};
}

double real_value(Coeff v, const char* what) {
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)))
        throw std::invalid_argument(std::string(what) + " must be real");
    return v.real();
}

Matrix hankel_section(const std::vector<double>& seq, int start, int n) {
    Matrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = seq[static_cast<size_t>(start) + i + j];
    return h;
}

}  // namespace

double default_kernel_tol() { return 1e-8; }

Coeff MomentData::at(MonomialIndex s) const {
    auto it = values.find(s);
    if (it == values.end()) throw MissingMoment("moment absent at " + index_str(s));
    return it->second;
}

Coeff MomentData::at(const std::vector<int>& alpha) const {
    auto it = trig_values.find(alpha);
    if (it == trig_values.end()) throw MissingMoment("moment absent at " + index_str(alpha));
    return it->second;
}

MomentData symmetrize(const MomentData& data) {
    MomentData out;
    out.semigroup = data.semigroup;
    if (data.is_trig()) {
        for (const auto& [a, c] : data.trig_values) {
            std::vector<int> neg(a.size());
            for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
            auto it = data.trig_values.find(neg);
            if (it != data.trig_values.end() && std::abs(c - std::conj(it->second)) > 1e-12)
                throw NotSymmetrizable("values at " + index_str(a) + " and " + index_str(neg) +
                                       " are not conjugate");
        }
        out.trig_values = data.trig_values;
        for (const auto& [a, c] : data.trig_values) {
            std::vector<int> neg(a.size());
            for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
            if (!data.trig_values.count(neg)) out.trig_values[neg] = std::conj(c);
        }
        return out;
    }
    out.values = tmom::symmetrize(CoefficientSystem(data.values)).values();
    return out;
}

Coeff measure_moment(const Measure& mu, MonomialIndex s) {
    if (const auto* atomic = std::get_if<AtomicMeasure>(&mu)) {
        Coeff acc = 0.0;
        for (const auto& atom : atomic->atoms) {
            if (atom.point.size() != 1) throw std::invalid_argument("plane moments need 1-d atoms");
            const Coeff z = atom.point[0];
            if (z == Coeff{}) {
                if (s.m < 0 || s.n < 0)
                    throw EvalAtZeroWithNegativePower("atom at origin with negative exponent");
                acc += (s.m == 0 && s.n == 0) ? Coeff{atom.weight} : Coeff{};
            } else {
                acc += atom.weight * ipow(z, s.m) * ipow(std::conj(z), s.n);
            }
        }
        return acc;
    }
    if (const auto* ray = std::get_if<RayMeasure>(&mu)) {
        Coeff acc = 0.0;
        for (const auto& r : ray->rays)
            for (const auto& [rho, w] : r.radial) {
                if (rho == 0.0 && s.m + s.n < 0)
                    throw EvalAtZeroWithNegativePower("radial point at origin with negative total degree");
                acc += w * std::pow(rho, s.m + s.n) * std::polar(1.0, (s.m - s.n) * r.angle);
            }
        return acc;
    }
    const auto& rd = std::get<RadialDensityMeasure>(mu);
    // int z^m zbar^n |z|^p dV over the disc of the given radius: the angular
    // integral kills off-diagonal indices, the radial one needs
    // m + n + p + 2 > 0
    const int growth = s.m + s.n + rd.power + 2;
    if (growth <= 0) {
        std::ostringstream os;
        os << "index " << index_str(s) << " not summable against |z|^" << rd.power;
        throw NonSummableMoment(os.str());
    }
    if (s.m != s.n) return 0.0;
    return 2.0 * std::numbers::pi * std::pow(rd.radius, growth) / growth;
}

MomentData measure_moments(const Measure& mu, const std::vector<MonomialIndex>& truncation) {
    MomentData out;
    bool quarter = true, half = true;
    for (const auto& s : truncation) {
        quarter = quarter && IndexClass::n().contains(s);
        half = half && IndexClass::nplus().contains(s);
    }
    out.semigroup = quarter ? IndexClass::n() : (half ? IndexClass::nplus() : IndexClass::zz());
    for (const auto& s : truncation) out.values[s] = measure_moment(mu, s);
    return out;
}

Coeff riesz_apply(const MomentData& data, const LaurentPoly& p) {
    if (data.is_trig()) throw std::invalid_argument("plane polynomial against trig data");
    Coeff acc = 0.0;
    std::vector<MonomialIndex> missing;
    for (const auto& [s, c] : p.terms()) {
        auto it = data.values.find(s);
        if (it == data.values.end()) {
            missing.push_back(s);
            continue;
        }
        acc += c * it->second;
    }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "support escapes the truncation at:";
        for (const auto& s : missing) os << " " << index_str(s);
        throw SupportNotCovered(os.str());
    }
    return acc;
}

Coeff riesz_apply(const MomentData& data, const TrigPoly& p) {
    if (!data.is_trig()) throw std::invalid_argument("trig polynomial against plane data");
    if (p.kappa() != data.semigroup.kappa()) throw std::invalid_argument("kappa mismatch");
    Coeff acc = 0.0;
    std::vector<std::vector<int>> missing;
    for (const auto& [a, c] : p.terms()) {
        auto it = data.trig_values.find(a);
        if (it == data.trig_values.end()) {
            missing.push_back(a);
            continue;
        }
        acc += c * it->second;
    }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "support escapes the truncation at:";
        for (const auto& a : missing) os << " " << index_str(a);
        throw SupportNotCovered(os.str());
    }
    return acc;
}

Matrix kernel_matrix(const MomentData& data, const std::vector<MonomialIndex>& f, KernelMode mode) {
    if (mode == KernelMode::Trig) throw std::invalid_argument("trig mode needs multi-index sections");
    if (data.is_trig()) throw std::invalid_argument("plane section against trig data");
    const int n = static_cast<int>(f.size());
    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const MonomialIndex idx = f[i] + involute(f[j]);
            auto it = data.values.find(idx);
            if (it == data.values.end())
                throw MissingMoment("kernel entry " + index_str(f[i]) + "+" + index_str(f[j]) +
                                    "* needs absent moment " + index_str(idx));
            k(i, j) = it->second;
        }
    return k;
}

Matrix kernel_matrix(const MomentData& data, const std::vector<std::vector<int>>& f) {
    if (!data.is_trig()) throw std::invalid_argument("multi-index section against plane data");
    const int n = static_cast<int>(f.size());
    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> diff(f[i].size());
            for (size_t d = 0; d < diff.size(); ++d) diff[d] = f[i][d] - f[j][d];
            auto it = data.trig_values.find(diff);
            if (it == data.trig_values.end())
                throw MissingMoment("kernel entry needs absent moment " + index_str(diff));
            k(i, j) = it->second;
        }
    return k;
}

PsdVerdict kernel_psd_check(const MomentData& data, const std::vector<MonomialIndex>& f, KernelMode mode,
                            double tol) {
    return psd_of(kernel_matrix(data, f, mode), tol);
}

PsdVerdict kernel_psd_check(const MomentData& data, const std::vector<std::vector<int>>& f, double tol) {
    return psd_of(kernel_matrix(data, f), tol);
}

CertVerdict certificate_positivity_check(const MomentData& data, const std::vector<LaurentPoly>& squares,
                                         double tol) {
    if (data.is_trig()) throw std::invalid_argument("plane squares against trig data");
    const IndexClass cone =
        data.semigroup.tag() == IndexClass::Tag::ZZ ? IndexClass::zz() : IndexClass::nplus();
    LaurentPoly sum;
    for (size_t i = 0; i < squares.size(); ++i) {
        if (!support_in(squares[i], cone))
            throw CertificateOutOfCone("square " + std::to_string(i) + " is outside the declared cone");
        sum = sum + mod_squared(squares[i]);
    }
    CertVerdict out;
    try {
        out.lambda_value = riesz_apply(data, sum);
    } catch (const SupportNotCovered& e) {
        throw CertificateOutOfCone(e.what());
    }
    out.pass = out.lambda_value.real() >= -tol && std::abs(out.lambda_value.imag()) <= tol;
    return out;
}

CertVerdict certificate_positivity_check(const MomentData& data, const std::vector<TrigPoly>& squares,
                                         double tol) {
    if (!data.is_trig()) throw std::invalid_argument("trig squares against plane data");
    TrigPoly sum(data.semigroup.kappa());
    for (size_t i = 0; i < squares.size(); ++i) {
        if (!is_analytic(squares[i]))
            throw CertificateOutOfCone("square " + std::to_string(i) + " is not analytic");
        sum = sum + mod_squared(squares[i]);
    }
    CertVerdict out;
    try {
        out.lambda_value = riesz_apply(data, sum);
    } catch (const SupportNotCovered& e) {
        throw CertificateOutOfCone(e.what());
    }
    out.pass = out.lambda_value.real() >= -tol && std::abs(out.lambda_value.imag()) <= tol;
    return out;
}

HaviPair havi_construct(const AtomicMeasure& nu, int k) {
    if (k < 0) throw std::invalid_argument("shift k must be nonnegative");
    HaviPair out;
    out.k = k;
    out.a = 0.0;
    AtomicMeasure mu;
    for (const auto& atom : nu.atoms) {
        if (atom.point.size() != 1) throw std::invalid_argument("plane measure needs 1-d atoms");
        if (atom.point[0] == Coeff{}) {
            out.a += atom.weight;
        } else {
            mu.atoms.push_back({atom.point, atom.weight / std::pow(std::abs(atom.point[0]), 2 * k)});
        }
    }
    out.mu = std::move(mu);
    return out;
}

Coeff havi_riesz(const HaviPair& pair, const LaurentPoly& p) {
    Coeff acc = 0.0;
    for (const auto& [s, c] : p.terms()) {
        if (s.m < pair.k || s.n < pair.k)
            throw SupportBelowShift("index " + index_str(s) + " below the shift k=" + std::to_string(pair.k));
        acc += c * measure_moment(pair.mu, s);
    }
    acc += pair.a * p.coeff({pair.k, pair.k});
    return acc;
}

std::pair<double, double> theta_split(Coeff theta_bar) {
    const double mod = std::abs(theta_bar);
    if (mod > 1.0 + 1e-12) throw ModulusExceedsOne("modulus " + std::to_string(mod) + " exceeds 1");
    const double psi = (theta_bar == Coeff{}) ? 0.0 : std::arg(theta_bar);
    const double phi = std::acos(std::clamp(mod, 0.0, 1.0));
    const double two_pi = 2.0 * std::numbers::pi;
    const auto wrap = [&](double t) {
        t = std::fmod(t, two_pi);
        return t < 0.0 ? t + two_pi : t;
    };
    return {wrap(psi + phi), wrap(psi - phi)};
}

RayMeasure lambda2new_construct(const std::vector<std::pair<double, double>>& nu, Coeff c_kl, int k,
                                int l) {
    if (l <= k) throw std::invalid_argument("need l > k");
    double scale = 0.0;
    for (const auto& [rho, w] : nu) {
        if (rho < 0.0 || w <= 0.0) throw std::invalid_argument("radial atoms need rho >= 0, weight > 0");
        scale += w * std::pow(rho, k + l);
    }
    if (std::abs(c_kl) > scale + 1e-12) {
        std::ostringstream os;
        os << "|c_kl| = " << std::abs(c_kl) << " exceeds the radial bound " << scale;
        throw InequalityViolated(os.str());
    }
    // scale == 0 forces c_kl == 0; any admissible phase works, take 0
    const Coeff theta = scale > 0.0 ? c_kl / scale : Coeff{};
    const auto [t1, t2] = theta_split(std::conj(theta));
    const int j = l - k;

    RayMeasure out;
    for (const double t : {t1, t2}) {
        RayMeasure::Ray ray;
        ray.angle = t / j;
        for (const auto& [rho, w] : nu) ray.radial.push_back({rho, w / 2.0});
        out.rays.push_back(std::move(ray));
    }
    return out;
}

Lambda2Verdict lambda2_condition_b(const MomentData& data, int k, int l, int section_size, double tol) {
    if (l <= k || (l - k) % 2 != 0) throw std::invalid_argument("need l > k with l - k even");
    const int kappa = (l - k) / 2;
    Lambda2Verdict out;

    const Coeff ckl = data.at(MonomialIndex{k, l});
    const Coeff clk = data.at(MonomialIndex{l, k});
    if (std::abs(clk - std::conj(ckl)) > tol) {
        out.failed_condition = 1;
        out.detail = "c_{l,k} is not the conjugate of c_{k,l}";
        return out;
    }
    const Coeff mid = data.at(MonomialIndex{k + kappa, k + kappa});
    if (std::abs(ckl) > mid.real() + tol) {
        out.failed_condition = 2;
        std::ostringstream os;
        os << "|c_{k,l}| = " << std::abs(ckl) << " exceeds c_{k+j,k+j} = " << mid.real();
        out.detail = os.str();
        return out;
    }
    const StieltjesReport st = stieltjes_diagonal(data, section_size);
    if (!st.hankel0_psd || !st.hankel1_psd) {
        out.failed_condition = 3;
        out.detail = "diagonal Hankel section fails positivity";
        return out;
    }
    out.pass = true;
    return out;
}

StieltjesReport stieltjes_diagonal(const MomentData& data, int section_size) {
    StieltjesReport out;
    for (int m = 0; m <= 2 * section_size + 1; ++m)
        out.diagonal.push_back(real_value(data.at(MonomialIndex{m, m}), "diagonal moment"));
    const double tol = default_kernel_tol();
    const int n = section_size + 1;
    const Matrix h0 = hankel_section(out.diagonal, 0, n);
    const Matrix h1 = hankel_section(out.diagonal, 1, n);
    const PsdVerdict v0 = psd_of(h0, tol);
    const PsdVerdict v1 = psd_of(h1, tol);
    out.hankel0_psd = v0.psd;
    out.hankel1_psd = v1.psd;
    out.hankel0_min_eig = v0.min_eigenvalue;
    out.hankel1_min_eig = v1.min_eigenvalue;
    return out;
}

MomentData gen_dziury(const std::vector<MonomialIndex>& truncation) {
    MomentData out;
    out.semigroup = IndexClass::n();
    const RadialDensityMeasure mu{-2, 1.0};
    for (const auto& s : truncation) {
        if (s.m == 0 && s.n == 0) throw ZeroIndexPresent("(0,0) must not be in the truncation");
        if (s.m < 0 || s.n < 0) throw std::invalid_argument("truncation must lie in the quarter lattice");
        out.values[s] = measure_moment(Measure{mu}, s);
    }
    return out;
}

std::pair<MomentData, std::string> gen_kael(int k, int l, const std::vector<MonomialIndex>& truncation) {
    if (k < 1 || l <= k) throw BoundsViolated("need 1 <= k < l");
    bool has_kk = false, has_ll = false;
    for (const auto& s : truncation) {
        if (s.m < k || s.n < k)
            throw BoundsViolated("index " + index_str(s) + " escapes {(m,n): m,n >= k}");
        has_kk = has_kk || (s.m == k && s.n == k);
        has_ll = has_ll || (s.m == l && s.n == l);
    }
    if (!has_kk || !has_ll) throw BoundsViolated("truncation must contain (k,k) and (l,l)");

    MomentData out;
    out.semigroup = IndexClass::n();
    for (const auto& s : truncation) out.values[s] = (s.m + s.n == 2 * k) ? 1.0 : 0.0;
    std::string note =
        "Riesz-positive on squares via the shifted point evaluation (mass at the origin after "
        "dividing by |z|^(2k)), yet no representing measure exists: c_{k,k} = 1 forces unit mass "
        "of |z|^(2k), while c_{l,l} = 0 forces the measure to sit at the origin.";
    return {std::move(out), std::move(note)};
}

AnnulusData gen_annulus(Coeff lambda, double eps, int j, int k, const AtomicMeasure& atoms) {
    if (lambda == Coeff{}) throw std::invalid_argument("lambda must be nonzero");
    if (!(eps > 0.0) || j < 1 || k < 0) throw std::invalid_argument("need eps > 0, j >= 1, k >= 0");
    const int l = k + j;

    for (const auto& atom : atoms.atoms) {
        if (atom.point.size() != 1) throw std::invalid_argument("plane measure needs 1-d atoms");
        const Coeff z = atom.point[0];
        if (z == Coeff{} || std::abs(ipow(z, j) - lambda) >= eps) {
            std::ostringstream os;
            os << "atom at (" << z.real() << "," << z.imag() << ") outside {0 < |z^j - lambda| range}";
            throw AtomOutsideRegion(os.str());
        }
    }

    std::vector<MonomialIndex> truncation;
    for (int m = 0; m <= 2 * l; ++m) truncation.push_back({m, m});
    truncation.push_back({k, l});
    truncation.push_back({l, k});

    AnnulusData out;
    out.data = measure_moments(Measure{atoms}, truncation);

    out.witness.set({l, l}, 1.0);
    out.witness.set({l, k}, -std::conj(lambda));
    out.witness.set({k, l}, -lambda);
    out.witness.set({k, k}, std::norm(lambda) - eps * eps);
    return out;
}

MomentData gen_symmetry_break(const MomentData& data, MonomialIndex kl) {
    if (data.is_trig()) throw std::invalid_argument("plane data expected");
    if (kl.m == kl.n) throw std::invalid_argument("the broken pair must be off-diagonal");
    const double ckk = real_value(data.at(MonomialIndex{kl.m, kl.m}), "c_{k,k}");
    const double cll = real_value(data.at(MonomialIndex{kl.n, kl.n}), "c_{l,l}");
    if (ckk < 0.0 || cll < 0.0) throw std::invalid_argument("diagonal values must be nonnegative");
    MomentData out = data;
    out.values[kl] = std::sqrt(ckk * cll + 1.0);
    out.values.erase(involute(kl));  // the reflected index is left free
    return out;
}

namespace {

bool contains(const std::set<std::vector<int>>& t, const std::vector<int>& v) { return t.count(v) != 0; }

std::vector<int> diff(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

bool search_lambda(const std::vector<std::vector<int>>& pool, size_t next,
                   std::vector<std::vector<int>>& chosen, const std::set<std::vector<int>>& target,
                   size_t max_size) {
    // all pairwise differences of `chosen` lie in `target` by construction
    std::set<std::vector<int>> produced;
    for (const auto& a : chosen)
        for (const auto& b : chosen) produced.insert(diff(a, b));
    if (produced.size() == target.size()) return true;
    if (chosen.size() >= max_size || next >= pool.size()) return false;

    for (size_t i = next; i < pool.size(); ++i) {
        bool ok = true;
        for (const auto& b : chosen)
            if (!contains(target, diff(pool[i], b)) || !contains(target, diff(b, pool[i]))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(pool[i]);
        if (search_lambda(pool, i + 1, chosen, target, max_size)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> is_difference_set(const std::vector<std::vector<int>>& t,
                                                               int bound) {
    if (t.empty()) return std::nullopt;
    const size_t kappa = t.front().size();
    std::set<std::vector<int>> target;
    for (const auto& v : t) {
        if (v.size() != kappa) throw std::invalid_argument("mixed index lengths");
        target.insert(v);
    }
    const std::vector<int> zero(kappa, 0);
    if (!target.count(zero)) return std::nullopt;
    for (const auto& v : target) {
        std::vector<int> neg(kappa);
        for (size_t i = 0; i < kappa; ++i) neg[i] = -v[i];
        if (!target.count(neg)) return std::nullopt;  // difference sets satisfy T = -T
    }

    // any witness translates (by one of its own elements) into a subset of T
    // containing 0, so this enumeration is exhaustive within the bound
    std::vector<std::vector<int>> pool;
    for (const auto& v : target) {
        if (v == zero) continue;
        bool in_box = true;
        for (int x : v) in_box = in_box && std::abs(x) <= bound;
        if (in_box) pool.push_back(v);
    }
    if (pool.size() > 26) throw std::invalid_argument("difference-set search space too large");

    std::vector<std::vector<int>> chosen{zero};
    if (search_lambda(pool, 0, chosen, target, target.size())) {
        // shift to nonnegative coordinates for presentation
        std::vector<int> low(kappa, 0);
        for (const auto& v : chosen)
            for (size_t i = 0; i < kappa; ++i) low[i] = std::min(low[i], v[i]);
        for (auto& v : chosen)
            for (size_t i = 0; i < kappa; ++i) v[i] -= low[i];
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }
    return std::nullopt;
}

std::vector<std::array<int, 2>> quadrant_lambda(int depth) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    std::vector<std::array<int, 2>> out{{0, 0}};
    int corner = 0;
    for (int stage = 1; stage <= depth; ++stage) {
        const int next = corner + stage;
        for (int x = corner + 1; x <= next; ++x) out.push_back({x, corner});
        for (int y = corner + 1; y <= next; ++y) out.push_back({next, y});
        corner = next;
    }
    return out;
}

}  // namespace tmom
