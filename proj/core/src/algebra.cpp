#include "tmom/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tmom/linalg.hpp"

namespace tmom {

namespace {

constexpr double kPruneRel = 1e-14;
constexpr double kPointTol = 1e-12;
constexpr double kSymTol = 1e-12;

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

std::string index_str(MonomialIndex s) {
    std::ostringstream os;
    os << "(" << s.m << "," << s.n << ")";
    return os.str();
}

template <typename Map>
void prune_map(Map& coeffs) {
    double top = 0.0;
    for (const auto& [s, c] : coeffs) top = std::max(top, std::abs(c));
    const double cut = kPruneRel * top;
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (std::abs(it->second) <= cut)
            it = coeffs.erase(it);
        else
            ++it;
    }
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

// i^e as a Gaussian unit
DyadicGaussian unit_i_pow(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1, 0, 0};
        case 1: return {0, 1, 0};
        case 2: return {-1, 0, 0};
        default: return {0, -1, 0};
    }
}

}  // namespace

IndexClass IndexClass::zk(int kappa) {
    if (kappa < 1) throw std::invalid_argument("Zk needs kappa >= 1");
    return IndexClass(Tag::Zk, kappa);
}

bool IndexClass::contains(MonomialIndex s) const {
    switch (tag_) {
        case Tag::N: return s.m >= 0 && s.n >= 0;
        case Tag::NPlus: return s.m + s.n >= 0;
        case Tag::ZZ: return true;
        case Tag::Diagonal: return s.m == s.n;
        case Tag::Zk: return false;
    }
    return false;
}

bool IndexClass::contains(const std::vector<int>& alpha) const {
    if (tag_ != Tag::Zk) return false;
    return static_cast<int>(alpha.size()) == kappa_;
}

LaurentPoly LaurentPoly::monomial(int m, int n, Coeff c) {
    LaurentPoly p;
    p.set({m, n}, c);
    return p;
}

LaurentPoly LaurentPoly::constant(Coeff c) { return monomial(0, 0, c); }

Coeff LaurentPoly::coeff(MonomialIndex s) const {
    auto it = coeffs_.find(s);
    return it == coeffs_.end() ? Coeff{} : it->second;
}

void LaurentPoly::set(MonomialIndex s, Coeff c) {
    if (c == Coeff{})
        coeffs_.erase(s);
    else
        coeffs_[s] = c;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    for (const auto& [s, c] : rhs.coeffs_) {
        auto [it, inserted] = out.coeffs_.try_emplace(s, c);
        if (!inserted) it->second += c;
    }
    prune_map(out.coeffs_);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const { return *this + rhs * Coeff{-1.0}; }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
    LaurentPoly out;
    for (const auto& [s, c] : coeffs_)
        for (const auto& [t, d] : rhs.coeffs_) out.coeffs_[s + t] += c * d;
    prune_map(out.coeffs_);
    return out;
}

LaurentPoly LaurentPoly::operator*(Coeff scalar) const {
    LaurentPoly out;
    if (scalar == Coeff{}) return out;
    for (const auto& [s, c] : coeffs_) out.coeffs_[s] = c * scalar;
    return out;
}

double conorm(const LaurentPoly& p) {
    double top = 0.0;
    for (const auto& [s, c] : p.terms()) top = std::max(top, std::abs(c));
    return top;
}

LaurentPoly poly_involution(const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [s, c] : p.terms()) out.set(involute(s), std::conj(c));
    return out;
}

LaurentPoly mod_squared(const LaurentPoly& q) { return q * poly_involution(q); }

bool support_in(const LaurentPoly& p, const IndexClass& cls) {
    for (const auto& [s, c] : p.terms())
        if (!cls.contains(s)) return false;
    return true;
}

Coeff eval(const LaurentPoly& p, Coeff z) {
    if (z == Coeff{}) {
        Coeff acc = 0.0;
        for (const auto& [s, c] : p.terms()) {
            if (s.m < 0 || s.n < 0)
                throw EvalAtZeroWithNegativePower("eval at z=0 with exponent " + index_str(s));
            if (s.m == 0 && s.n == 0) acc += c;
        }
        return acc;
    }
    const Coeff zbar = std::conj(z);
    Coeff acc = 0.0;
    for (const auto& [s, c] : p.terms()) acc += c * ipow(z, s.m) * ipow(zbar, s.n);
    return acc;
}

Coeff char_eval_nplus(MonomialIndex s, Coeff z, Coeff w) {
    if (s.m + s.n < 0) throw std::invalid_argument("character index needs m+n >= 0");
    if (std::abs(std::abs(w) - 1.0) > kPointTol)
        throw InvalidCharacterPoint("second coordinate must be unimodular");
    if (z != Coeff{}) {
        if (std::abs(w - z / std::conj(z)) > kPointTol)
            throw InvalidCharacterPoint("point has w != z/zbar");
        return ipow(z, s.m) * ipow(std::conj(z), s.n);
    }
    if (s.m + s.n > 0) return 0.0;
    return ipow(w, s.m);
}

TrigPoly::TrigPoly(int kappa) : kappa_(kappa) {
    if (kappa < 1) throw std::invalid_argument("TrigPoly needs kappa >= 1");
}

Coeff TrigPoly::coeff(const std::vector<int>& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Coeff{} : it->second;
}

void TrigPoly::set(std::vector<int> alpha, Coeff c) {
    if (static_cast<int>(alpha.size()) != kappa_)
        throw std::invalid_argument("exponent vector length mismatch");
    if (c == Coeff{})
        coeffs_.erase(alpha);
    else
        coeffs_[std::move(alpha)] = c;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
    if (kappa_ != rhs.kappa_) throw std::invalid_argument("TrigPoly dimension mismatch");
    TrigPoly out = *this;
    for (const auto& [a, c] : rhs.coeffs_) {
        auto [it, inserted] = out.coeffs_.try_emplace(a, c);
        if (!inserted) it->second += c;
    }
    prune_map(out.coeffs_);
    return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const { return *this + rhs * Coeff{-1.0}; }

TrigPoly TrigPoly::operator*(const TrigPoly& rhs) const {
    if (kappa_ != rhs.kappa_) throw std::invalid_argument("TrigPoly dimension mismatch");
    TrigPoly out(kappa_);
    for (const auto& [a, c] : coeffs_)
        for (const auto& [b, d] : rhs.coeffs_) {
            std::vector<int> sum(kappa_);
            for (int i = 0; i < kappa_; ++i) sum[i] = a[i] + b[i];
            out.coeffs_[std::move(sum)] += c * d;
        }
    prune_map(out.coeffs_);
    return out;
}

TrigPoly TrigPoly::operator*(Coeff scalar) const {
    TrigPoly out(kappa_);
    if (scalar == Coeff{}) return out;
    for (const auto& [a, c] : coeffs_) out.coeffs_[a] = c * scalar;
    return out;
}

double conorm(const TrigPoly& p) {
    double top = 0.0;
    for (const auto& [a, c] : p.terms()) top = std::max(top, std::abs(c));
    return top;
}

TrigPoly poly_involution(const TrigPoly& p) {
    TrigPoly out(p.kappa());
    for (const auto& [a, c] : p.terms()) {
        std::vector<int> neg(a.size());
        for (size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
        out.set(std::move(neg), std::conj(c));
    }
    return out;
}

TrigPoly mod_squared(const TrigPoly& q) { return q * poly_involution(q); }

bool is_analytic(const TrigPoly& p) {
    for (const auto& [a, c] : p.terms())
        for (int e : a)
            if (e < 0) return false;
    return true;
}

Coeff eval(const TrigPoly& p, const std::vector<Coeff>& z) {
    if (static_cast<int>(z.size()) != p.kappa()) throw std::invalid_argument("evaluation point length mismatch");
    Coeff acc = 0.0;
    for (const auto& [a, c] : p.terms()) {
        Coeff term = c;
        for (size_t i = 0; i < a.size(); ++i) term *= ipow(z[i], a[i]);
        acc += term;
    }
    return acc;
}

ExactPoint ExactPoint::rational(double modulus, long long p, long long q) {
    if (modulus < 0.0) throw std::invalid_argument("modulus must be nonnegative");
    if (q <= 0) throw std::invalid_argument("rational rotation needs q >= 1");
    p = ((p % q) + q) % q;
    const long long g = std::gcd(p, q);
    ExactPoint out;
    out.modulus = modulus;
    out.rotation.rational = true;
    out.rotation.p = g ? p / g : 0;
    out.rotation.q = g ? q / g : 1;
    return out;
}

ExactPoint ExactPoint::irrational(double modulus, double angle) {
    if (modulus < 0.0) throw std::invalid_argument("modulus must be nonnegative");
    ExactPoint out;
    out.modulus = modulus;
    out.rotation.rational = false;
    out.rotation.angle = angle;
    return out;
}

bool separates_points_N(const std::vector<ExactPoint>& y) {
    if (y.empty()) throw std::invalid_argument("point set must be nonempty");
    bool modulus_off_circle = false;
    bool nonzero_irrational = false;
    for (const auto& pt : y) {
        if (pt.modulus != 0.0 && pt.modulus != 1.0) modulus_off_circle = true;
        // every rational rotation is a root of unity, so only irrational
        // rotations can defeat the common-kappa condition
        if (pt.modulus != 0.0 && !pt.rotation.rational) nonzero_irrational = true;
    }
    return modulus_off_circle && nonzero_irrational;
}

bool is_determining_sample(const std::vector<MonomialIndex>& t, const std::vector<Coeff>& z, double tol) {
    if (t.empty()) return true;
    if (z.size() < t.size()) {
        std::ostringstream os;
        os << "need at least " << t.size() << " sample points, got " << z.size();
        throw InsufficientSamplePoints(os.str());
    }
    bool quarter = true;
    for (const auto& s : t)
        if (s.m < 0 || s.n < 0) quarter = false;
    if (!quarter)
        for (const auto& p : z)
            if (p == Coeff{}) throw EvalAtZeroWithNegativePower("sample point 0 with negative exponent present");

    Matrix a(static_cast<int>(z.size()), static_cast<int>(t.size()));
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < t.size(); ++j) {
            if (z[i] == Coeff{})
                a(static_cast<int>(i), static_cast<int>(j)) = (t[j].m == 0 && t[j].n == 0) ? 1.0 : 0.0;
            else
                a(static_cast<int>(i), static_cast<int>(j)) = ipow(z[i], t[j].m) * ipow(std::conj(z[i]), t[j].n);
        }
    const auto sv = singular_values(std::move(a));
    if (sv.front() == 0.0) return false;
    return sv.back() > tol * sv.front();
}

Coeff CoefficientSystem::at(MonomialIndex s) const {
    auto it = values_.find(s);
    if (it == values_.end()) throw MissingComplexMoment("no value at " + index_str(s));
    return it->second;
}

CoefficientSystem symmetrize(const CoefficientSystem& sys) {
    for (const auto& [s, c] : sys.values()) {
        const MonomialIndex star = involute(s);
        if (!sys.contains(star)) continue;
        if (std::abs(c - std::conj(sys.values().at(star))) > kSymTol)
            throw NotSymmetrizable("values at " + index_str(s) + " and " + index_str(star) +
                                   " are not conjugate");
    }
    CoefficientSystem out = sys;
    for (const auto& [s, c] : sys.values()) {
        const MonomialIndex star = involute(s);
        if (!sys.contains(star)) out.set(star, std::conj(c));
    }
    return out;
}

DyadicGaussian::DyadicGaussian(long long re, long long im, int e) : re_num(re), im_num(im), exp2(e) {
    if (e < 0) throw std::invalid_argument("dyadic exponent must be nonnegative");
    if (re_num == 0 && im_num == 0) {
        exp2 = 0;
        return;
    }
    while (exp2 > 0 && re_num % 2 == 0 && im_num % 2 == 0) {
        re_num /= 2;
        im_num /= 2;
        --exp2;
    }
}

Coeff DyadicGaussian::to_complex() const { return {std::ldexp(double(re_num), -exp2), std::ldexp(double(im_num), -exp2)}; }

DyadicGaussian DyadicGaussian::operator+(const DyadicGaussian& rhs) const {
    const int e = std::max(exp2, rhs.exp2);
    const long long sa = 1LL << (e - exp2);
    const long long sb = 1LL << (e - rhs.exp2);
    return {re_num * sa + rhs.re_num * sb, im_num * sa + rhs.im_num * sb, e};
}

DyadicGaussian DyadicGaussian::operator*(const DyadicGaussian& rhs) const {
    return {re_num * rhs.re_num - im_num * rhs.im_num, re_num * rhs.im_num + im_num * rhs.re_num,
            exp2 + rhs.exp2};
}

BasisTables basis_tables(int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("basis_tables needs m,n >= 0");
    BasisTables out;
    // (x+iy)^m (x-iy)^n over x^k y^l
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= n; ++b) {
            const MonomialIndex kl{(m - a) + (n - b), a + b};
            const DyadicGaussian term =
                DyadicGaussian{binomial(m, a) * binomial(n, b), 0, 0} * unit_i_pow(a) * unit_i_pow(-b);
            auto [it, inserted] = out.alpha.try_emplace(kl, term);
            if (!inserted) it->second = it->second + term;
        }
    // ((z+zbar)/2)^m ((z-zbar)/2i)^n over z^k zbar^l
    for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= n; ++b) {
            const MonomialIndex kl{(m - a) + (n - b), a + b};
            const long long sign = (b % 2 == 0) ? 1 : -1;
            const DyadicGaussian term =
                DyadicGaussian{sign * binomial(m, a) * binomial(n, b), 0, m + n} * unit_i_pow(-n);
            auto [it, inserted] = out.beta.try_emplace(kl, term);
            if (!inserted) it->second = it->second + term;
        }
    for (auto* table : {&out.alpha, &out.beta})
        for (auto it = table->begin(); it != table->end();)
            it = it->second.is_zero() ? table->erase(it) : std::next(it);
    return out;
}

CoefficientSystem real_to_complex_moments(const CoefficientSystem& a, int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    CoefficientSystem c;
    for (int m = 0; m <= degree; ++m)
        for (int n = 0; m + n <= degree; ++n) {
            const BasisTables tables = basis_tables(m, n);
            Coeff acc = 0.0;
            for (const auto& [kl, alpha] : tables.alpha) {
                if (!a.contains(kl))
                    throw MissingRealMoment("real moment absent at " + index_str(kl));
                acc += alpha.to_complex() * a.values().at(kl);
            }
            c.set({m, n}, acc);
        }
    return c;
}

CoefficientSystem complex_to_real_moments(const CoefficientSystem& c, int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    CoefficientSystem a;
    for (int m = 0; m <= degree; ++m)
        for (int n = 0; m + n <= degree; ++n) {
            const BasisTables tables = basis_tables(m, n);
            Coeff acc = 0.0;
            for (const auto& [kl, beta] : tables.beta) {
                if (!c.contains(kl))
                    throw MissingComplexMoment("complex moment absent at " + index_str(kl));
                acc += beta.to_complex() * c.values().at(kl);
            }
            a.set({m, n}, acc);
        }
    return a;
}

}  // namespace tmom
