#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "tmom/errors.hpp"

namespace tmom {

using Coeff = std::complex<double>;

// Exponent pair of the monomial z^m zbar^n.
struct MonomialIndex {
    int m = 0;
    int n = 0;

    friend bool operator==(const MonomialIndex&, const MonomialIndex&) = default;
    friend auto operator<=>(const MonomialIndex&, const MonomialIndex&) = default;
};

inline MonomialIndex involute(MonomialIndex s) { return {s.n, s.m}; }
inline MonomialIndex operator+(MonomialIndex a, MonomialIndex b) { return {a.m + b.m, a.n + b.n}; }

// Families of admissible exponents. N is the quarter lattice, NPlus the
// half plane m+n >= 0, ZZ the full lattice, Diagonal the pairs (n,n).
// Zk(kappa) classifies multi-indices of length kappa instead.
class IndexClass {
  public:
    enum class Tag { N, NPlus, ZZ, Zk, Diagonal };

    static IndexClass n() { return IndexClass(Tag::N, 0); }
    static IndexClass nplus() { return IndexClass(Tag::NPlus, 0); }
    static IndexClass zz() { return IndexClass(Tag::ZZ, 0); }
    static IndexClass diagonal() { return IndexClass(Tag::Diagonal, 0); }
    static IndexClass zk(int kappa);

    Tag tag() const { return tag_; }
    int kappa() const { return kappa_; }

    bool contains(MonomialIndex s) const;
    bool contains(const std::vector<int>& alpha) const;

    friend bool operator==(const IndexClass&, const IndexClass&) = default;

  private:
    IndexClass(Tag tag, int kappa) : tag_(tag), kappa_(kappa) {}
    Tag tag_;
    int kappa_;
};

// Sparse element of C_T(z, zbar): finite coefficient map over Z x Z exponents.
// Exact zeros are never stored; the zero polynomial is the empty map.
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly monomial(int m, int n, Coeff c = 1.0);
    static LaurentPoly constant(Coeff c);

    const std::map<MonomialIndex, Coeff>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    Coeff coeff(MonomialIndex s) const;
    void set(MonomialIndex s, Coeff c);

    LaurentPoly operator+(const LaurentPoly& rhs) const;
    LaurentPoly operator-(const LaurentPoly& rhs) const;
    LaurentPoly operator*(const LaurentPoly& rhs) const;
    LaurentPoly operator*(Coeff scalar) const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  private:
    std::map<MonomialIndex, Coeff> coeffs_;
};

double conorm(const LaurentPoly& p);
LaurentPoly poly_involution(const LaurentPoly& p);
LaurentPoly mod_squared(const LaurentPoly& q);
bool support_in(const LaurentPoly& p, const IndexClass& cls);
Coeff eval(const LaurentPoly& p, Coeff z);

// Character of NPlus at a point of Omega union ({0} x T), encoded as a pair
// (z, w) with w unimodular and w = z / zbar whenever z != 0.
Coeff char_eval_nplus(MonomialIndex s, Coeff z, Coeff w);

// Trigonometric polynomial on T^kappa: finite coefficient map over Z^kappa.
class TrigPoly {
  public:
    explicit TrigPoly(int kappa);

    int kappa() const { return kappa_; }
    const std::map<std::vector<int>, Coeff>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    Coeff coeff(const std::vector<int>& alpha) const;
    void set(std::vector<int> alpha, Coeff c);

    TrigPoly operator+(const TrigPoly& rhs) const;
    TrigPoly operator-(const TrigPoly& rhs) const;
    TrigPoly operator*(const TrigPoly& rhs) const;
    TrigPoly operator*(Coeff scalar) const;

  private:
    int kappa_ = 1;
    std::map<std::vector<int>, Coeff> coeffs_;
};

double conorm(const TrigPoly& p);
TrigPoly poly_involution(const TrigPoly& p);
TrigPoly mod_squared(const TrigPoly& q);
// true iff every exponent vector is componentwise nonnegative
bool is_analytic(const TrigPoly& p);
Coeff eval(const TrigPoly& p, const std::vector<Coeff>& z);

// Point of the plane with the rotation tracked symbolically, so that
// root-of-unity membership is decidable: Rational(p, q) means angle 2*pi*p/q
// in lowest terms, Irrational angles are never roots of unity.
struct ExactPoint {
    struct Rotation {
        bool rational = true;
        long long p = 0;  // 0 <= p < q when rational
        long long q = 1;
        double angle = 0.0;  // radians, used when !rational
    };

    double modulus = 0.0;
    Rotation rotation;

    static ExactPoint rational(double modulus, long long p, long long q);
    static ExactPoint irrational(double modulus, double angle);
};

// Whether evaluation at Y separates the exponent pairs of the quarter
// lattice: some modulus off {0,1} and some nonzero point whose rotation is
// not a root of unity.
bool separates_points_N(const std::vector<ExactPoint>& y);

// Numerical-rank test of the |Z| x |T| evaluation matrix [z^m zbar^n].
// Points must avoid 0 unless every index is in the quarter lattice.
bool is_determining_sample(const std::vector<MonomialIndex>& t, const std::vector<Coeff>& z, double tol);

// Truncation set plus values, the given data of a truncated problem.
// The truncation is exactly the key set of the value map.
class CoefficientSystem {
  public:
    CoefficientSystem() = default;
    explicit CoefficientSystem(std::map<MonomialIndex, Coeff> values) : values_(std::move(values)) {}

    const std::map<MonomialIndex, Coeff>& values() const { return values_; }
    bool contains(MonomialIndex s) const { return values_.count(s) != 0; }
    Coeff at(MonomialIndex s) const;
    void set(MonomialIndex s, Coeff c) { values_[s] = c; }

    friend bool operator==(const CoefficientSystem&, const CoefficientSystem&) = default;

  private:
    std::map<MonomialIndex, Coeff> values_;
};

// Conjugate reflection of the data from T to T union T*. Requires
// c_{m,n} = conj(c_{n,m}) on T intersect T* within 1e-12.
CoefficientSystem symmetrize(const CoefficientSystem& sys);

// Exact Gaussian dyadic rational (re + i*im) / 2^exp2, kept in lowest form.
struct DyadicGaussian {
    long long re_num = 0;
    long long im_num = 0;
    int exp2 = 0;

    DyadicGaussian() = default;
    DyadicGaussian(long long re, long long im, int e);

    bool is_zero() const { return re_num == 0 && im_num == 0; }
    Coeff to_complex() const;

    DyadicGaussian operator+(const DyadicGaussian& rhs) const;
    DyadicGaussian operator*(const DyadicGaussian& rhs) const;

    friend bool operator==(const DyadicGaussian&, const DyadicGaussian&) = default;
};

struct BasisTables {
    // alpha: (x+iy)^m (x-iy)^n expanded over x^k y^l
    // beta:  ((z+zbar)/2)^m ((z-zbar)/2i)^n expanded over z^k zbar^l
    std::map<MonomialIndex, DyadicGaussian> alpha;
    std::map<MonomialIndex, DyadicGaussian> beta;
};

BasisTables basis_tables(int m, int n);

// Linear change between real power moments a_{k,l} and complex moments
// c_{m,n}, both on the degree triangle {(m,n): m+n <= degree}. The
// coefficient tables are exact, so the two maps invert each other exactly on
// dyadic inputs.
CoefficientSystem real_to_complex_moments(const CoefficientSystem& a, int degree);
CoefficientSystem complex_to_real_moments(const CoefficientSystem& c, int degree);

}  // namespace tmom
