#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tmom/algebra.hpp"
#include "tmom/linalg.hpp"

namespace tmom {

// Truncated moment data over one of the concrete semigroups. Complex-plane
// semigroups (N, NPlus, ZZ) index values by exponent pairs; Zk uses exponent
// vectors of length kappa. Per-operation hypotheses (symmetry of the
// truncation, diagonal inclusion) are validated by the operations, not here:
// the counterexample generators deliberately violate them.
struct MomentData {
    IndexClass semigroup = IndexClass::n();
    std::map<MonomialIndex, Coeff> values;
    std::map<std::vector<int>, Coeff> trig_values;

    bool is_trig() const { return semigroup.tag() == IndexClass::Tag::Zk; }
    Coeff at(MonomialIndex s) const;
    Coeff at(const std::vector<int>& alpha) const;
};

MomentData symmetrize(const MomentData& data);

struct AtomicMeasure {
    struct Atom {
        std::vector<Coeff> point;  // length 1 for measures on the plane
        double weight = 0.0;
    };
    std::vector<Atom> atoms;
};

// Finitely many rays from the origin, each carrying a finite radial measure.
struct RayMeasure {
    struct Ray {
        double angle = 0.0;  // in [0, 2*pi)
        std::vector<std::pair<double, double>> radial;  // (rho >= 0, weight > 0)
    };
    std::vector<Ray> rays;
};

// d(mu) = |z|^power 1_{|z| <= radius} dV(z)
struct RadialDensityMeasure {
    int power = 0;
    double radius = 1.0;
};

using Measure = std::variant<AtomicMeasure, RayMeasure, RadialDensityMeasure>;

Coeff measure_moment(const Measure& mu, MonomialIndex s);
MomentData measure_moments(const Measure& mu, const std::vector<MonomialIndex>& truncation);

Coeff riesz_apply(const MomentData& data, const LaurentPoly& p);
Coeff riesz_apply(const MomentData& data, const TrigPoly& p);

enum class KernelMode { NPlus, ZZ, Trig };

// Finite section of the moment kernel K(s,t) = c_{s + t*}; Toeplitz
// K(alpha, beta) = c_{alpha - beta} in trig mode.
Matrix kernel_matrix(const MomentData& data, const std::vector<MonomialIndex>& f, KernelMode mode);
Matrix kernel_matrix(const MomentData& data, const std::vector<std::vector<int>>& f);

struct PsdVerdict {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

PsdVerdict kernel_psd_check(const MomentData& data, const std::vector<MonomialIndex>& f, KernelMode mode,
                            double tol);
PsdVerdict kernel_psd_check(const MomentData& data, const std::vector<std::vector<int>>& f, double tol);

double default_kernel_tol();

struct CertVerdict {
    bool pass = false;
    Coeff lambda_value;  // Riesz functional applied to the certificate sum
};

// Riesz positivity against an explicit sum of squared moduli with support
// inside the truncation.
CertVerdict certificate_positivity_check(const MomentData& data, const std::vector<LaurentPoly>& squares,
                                         double tol);
CertVerdict certificate_positivity_check(const MomentData& data, const std::vector<TrigPoly>& squares,
                                         double tol);

// Measure-plus-point-mass pair representing data on shifted truncations:
// Lambda(p) = int p dmu + a * p_{k,k}.
struct HaviPair {
    Measure mu;
    double a = 0.0;
    int k = 0;
};

HaviPair havi_construct(const AtomicMeasure& nu, int k);
Coeff havi_riesz(const HaviPair& pair, const LaurentPoly& p);

// Splits a complex number of modulus <= 1 as the mean of two unimodular
// exponentials: theta_bar = (exp(i t1) + exp(i t2)) / 2.
std::pair<double, double> theta_split(Coeff theta_bar);

// Two-ray measure reproducing radial moments plus one prescribed
// off-diagonal moment c_{k,l}.
RayMeasure lambda2new_construct(const std::vector<std::pair<double, double>>& nu, Coeff c_kl, int k, int l);

struct Lambda2Verdict {
    bool pass = false;
    int failed_condition = 0;  // 1: conjugacy, 2: modulus bound, 3: Hankel sections
    std::string detail;
};

// Finite-section necessary conditions for the prescribed-pair problem with
// l - k even: conjugate symmetry, |c_{k,l}| <= c_{k+(l-k)/2, k+(l-k)/2},
// and both diagonal Hankel sections PSD.
Lambda2Verdict lambda2_condition_b(const MomentData& data, int k, int l, int section_size, double tol);

struct StieltjesReport {
    std::vector<double> diagonal;
    bool hankel0_psd = false;
    bool hankel1_psd = false;
    double hankel0_min_eig = 0.0;
    double hankel1_min_eig = 0.0;
};

// Diagonal extraction with both Hankel-section verdicts, the finite-section
// surrogate for a representing measure on the half line.
StieltjesReport stieltjes_diagonal(const MomentData& data, int section_size);

// Moments of |z|^{-2} 1_{|z|<=1} dV on a truncation avoiding (0,0): genuine
// moment data on T that admits no finite extension.
MomentData gen_dziury(const std::vector<MonomialIndex>& truncation);

// The delta system c_{m,n} = [m+n == 2k] on a truncation inside
// {(m,n): m,n >= k}: passes certificate checks, has no representing measure.
std::pair<MomentData, std::string> gen_kael(int k, int l, const std::vector<MonomialIndex>& truncation);

struct AnnulusData {
    MomentData data;
    LaurentPoly witness;
};

// Moments of atoms concentrated where |z^j - lambda| < eps, together with
// the polynomial |z|^{2k} (|z^j - lambda|^2 - eps^2) that is nonnegative on
// any set avoiding that region yet has negative Riesz value on the data.
AnnulusData gen_annulus(Coeff lambda, double eps, int j, int k, const AtomicMeasure& atoms);

// Overwrites c_{k,l} with sqrt(c_{k,k} c_{l,l} + 1) and drops (l,k) from the
// truncation; the symmetrized result violates the Cauchy-Schwarz bound and
// fails every kernel PSD section containing the pair.
MomentData gen_symmetry_break(const MomentData& data, MonomialIndex kl);

// Exhaustive difference-set search: a witness set with Lambda - Lambda = T,
// translated to contain 0, or nothing when no witness exists within the
// bound. Candidates are drawn from T itself (any witness translates into T).
std::optional<std::vector<std::vector<int>>> is_difference_set(const std::vector<std::vector<int>>& t,
                                                               int bound);

// Staircase subset of the quarter lattice whose difference set is exactly
// the union of the two closed quadrants, through stage `depth`.
std::vector<std::array<int, 2>> quadrant_lambda(int depth);

}  // namespace tmom
